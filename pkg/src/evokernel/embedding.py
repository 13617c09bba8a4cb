"""Deterministic graph embeddings and the snapshot metric used for alignment.

Graphs are embedded as L2-normalized histograms of Weisfeiler-Lehman subtree
features hashed into a fixed number of buckets with BLAKE2b, which is stable
across processes and platforms (unlike Python's salted str hash). The metric
between two graphs is the Euclidean distance of their embeddings.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError
from .graphs import Graph

METRIC_WL_EUCLIDEAN = "wl-euclidean"

# Refined labels are compressed to a 16-byte digest each round so signatures
# stay short; 2^-128 collision odds are negligible against float tolerances.
_LABEL_DIGEST_SIZE = 16
_BUCKET_DIGEST_SIZE = 8


@dataclass(frozen=True)
class MetricConfig:
    kind: str = METRIC_WL_EUCLIDEAN
    wl_iterations: int = 3
    dim: int = 1024

    def validate(self) -> None:
        if self.kind != METRIC_WL_EUCLIDEAN:
            raise ConfigError(f"unknown metric kind {self.kind!r}")
        if self.dim < 1:
            raise ConfigError(f"embedding dimension must be >= 1, got {self.dim}")
        if self.wl_iterations < 0:
            raise ConfigError(f"refinement depth must be >= 0, got {self.wl_iterations}")


@dataclass(frozen=True)
class WlEmbedding:
    """Unit-norm feature vector; the empty graph embeds to the zero vector."""

    vector: np.ndarray
    iterations: int
    dim: int


def _initial_labels(g: Graph) -> list[str]:
    if g.node_labels is not None:
        return [str(lab) for lab in g.node_labels]
    return [str(int(d)) for d in g.degrees()]


def _refine(labels: list[str], neighbors: list[list[int]]) -> list[str]:
    refined = []
    for i, own in enumerate(labels):
        signature = own + "|" + ",".join(sorted(labels[j] for j in neighbors[i]))
        refined.append(
            hashlib.blake2b(signature.encode("utf-8"), digest_size=_LABEL_DIGEST_SIZE).hexdigest()
        )
    return refined


def _bucket(feature: str, dim: int) -> int:
    digest = hashlib.blake2b(feature.encode("utf-8"), digest_size=_BUCKET_DIGEST_SIZE).digest()
    return int.from_bytes(digest, "big") % dim


def wl_iteration_labels(g: Graph, iterations: int) -> list[list[str]]:
    """Per-round node labels: round 0 is the raw label (or degree), then
    ``iterations`` rounds of neighborhood refinement."""
    labels = _initial_labels(g)
    rounds = [labels]
    neighbors = g.neighbors()
    for _ in range(iterations):
        labels = _refine(labels, neighbors)
        rounds.append(labels)
    return rounds


def wl_embed(g: Graph, cfg: MetricConfig = MetricConfig()) -> WlEmbedding:
    """Hash every (round, label) occurrence into a count vector, then L2-normalize."""
    cfg.validate()
    vector = np.zeros(cfg.dim)
    for round_index, labels in enumerate(wl_iteration_labels(g, cfg.wl_iterations)):
        for label in labels:
            vector[_bucket(f"{round_index}:{label}", cfg.dim)] += 1.0
    norm = np.linalg.norm(vector)
    if norm > 0:
        vector /= norm
    return WlEmbedding(vector=vector, iterations=cfg.wl_iterations, dim=cfg.dim)


def delta(g1: Graph, g2: Graph, cfg: MetricConfig = MetricConfig()) -> float:
    """Euclidean distance between the two embeddings; 0 for isomorphic inputs."""
    v1 = wl_embed(g1, cfg).vector
    v2 = wl_embed(g2, cfg).vector
    return float(np.linalg.norm(v1 - v2))
