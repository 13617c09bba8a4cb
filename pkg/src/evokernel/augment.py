"""Heat-driven node-drop augmentation: from heat states to temporal episodes.

Per-node heat is turned into a Boltzmann retention probability, rescaled so
the hottest node keeps probability exactly 1, and each node survives an
independent Bernoulli draw. Repeating this over a time grid yields a temporal
episode of snapshots of the source graph.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import ConfigError
from .graphs import Graph, normalized_laplacian, subgraph
from .heat import (
    METHOD_EXACT,
    HeatState,
    compute_heat_kernel,
    propagate_heat,
    spectral_decompose,
)


@dataclass(frozen=True)
class BoltzmannConfig:
    """Energy function E(x) = a*x + b applied to per-node heat.

    a = 0 degenerates to the uniform distribution; the bias b cancels in the
    normalization and never changes the probabilities.
    """

    a: float = -2.0
    b: float = -2.0


@dataclass(frozen=True)
class HeatDistribution:
    """Boltzmann probabilities over nodes and their divide-by-max rescaling."""

    t: float
    probs: np.ndarray
    normed: np.ndarray


@dataclass
class TemporalEpisode:
    """Snapshots of one source graph over an ascending time grid.

    ``kept_masks[k]`` flags, over source node ids, which nodes survived in
    snapshot k; snapshots re-pack survivors to 0-based local ids.
    """

    source: Graph
    times: np.ndarray
    snapshots: list[Graph]
    seed: int
    kept_masks: list[np.ndarray] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.snapshots)


def heat_distribution(state: HeatState, cfg: BoltzmannConfig) -> HeatDistribution:
    """Boltzmann distribution of the heat vector under energy a*x + b.

    The bias cancels algebraically in the ratio, so it never enters the
    arithmetic and the probabilities are bit-identical for any b.
    Exponentiation happens after subtracting the maximum logit (log-sum-exp),
    which guards overflow and makes the hottest node's rescaled probability
    exactly 1.
    """
    heat = np.asarray(state.heat, dtype=float)
    if heat.size and not np.all(np.isfinite(heat)):
        raise ValueError("heat vector contains non-finite entries")
    if heat.size == 0:
        empty = np.zeros(0)
        return HeatDistribution(t=state.t, probs=empty, normed=empty.copy())
    logits = -cfg.a * heat
    weights = np.exp(logits - logits.max())
    probs = weights / weights.sum()
    return HeatDistribution(t=state.t, probs=probs, normed=weights)


def drop_node(g: Graph, dist: HeatDistribution, rng: np.random.Generator):
    """One Bernoulli draw per node: keep node i with probability normed[i].

    Returns the surviving induced subgraph and the boolean keep mask over the
    source nodes. A node with normed probability 1 is always kept.
    """
    if len(dist.normed) != g.node_count:
        raise ValueError(
            f"distribution over {len(dist.normed)} nodes for a graph with {g.node_count}"
        )
    draws = rng.random(g.node_count)
    keep = draws < dist.normed
    return subgraph(g, keep), keep


def snapshot_rng(seed: int, graph_index: int, time_index: int) -> np.random.Generator:
    """Independent counter-keyed substream for one snapshot of one graph."""
    return np.random.default_rng(
        np.random.SeedSequence(entropy=int(seed), spawn_key=(int(graph_index), int(time_index)))
    )


def generate_episode(
    g: Graph,
    times,
    cfg: BoltzmannConfig | None = None,
    u0: float = 1.0,
    seed: int = 0,
    *,
    graph_index: int = 0,
    method: str = METHOD_EXACT,
    cumulative: bool = False,
) -> TemporalEpisode:
    """Generate the temporal episode of ``g`` over the given time grid.

    Each snapshot is drawn with its own RNG substream keyed by
    (seed, graph_index, time index), so identical arguments reproduce the
    episode bit-exactly and episodes of different graphs are independent.

    By default every snapshot is drawn from the original graph with the heat
    kernel at absolute time t_k. With ``cumulative`` each step drops from the
    previous snapshot using the time increment t_k - t_{k-1} on that
    snapshot's own Laplacian.
    """
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or times.size == 0:
        raise ConfigError("time grid must be a non-empty 1-d sequence")
    if times[0] != 0.0:
        raise ConfigError(f"time grid must start at 0, got {times[0]}")
    if np.any(np.diff(times) <= 0):
        raise ConfigError("time grid must be strictly ascending")
    if cfg is None:
        cfg = BoltzmannConfig()

    snapshots: list[Graph] = []
    masks: list[np.ndarray] = []

    if not cumulative:
        lap = normalized_laplacian(g)
        spec = spectral_decompose(lap)
        for k, t in enumerate(times):
            hk = compute_heat_kernel(lap, spec, float(t), method)
            dist = heat_distribution(propagate_heat(hk, u0), cfg)
            snap, keep = drop_node(g, dist, snapshot_rng(seed, graph_index, k))
            snapshots.append(snap)
            masks.append(keep)
    else:
        current = g
        src_ids = np.arange(g.node_count)
        for k, t in enumerate(times):
            dt = float(t if k == 0 else t - times[k - 1])
            if current.node_count == 0:
                snapshots.append(current)
                masks.append(np.zeros(g.node_count, dtype=bool))
                continue
            lap = normalized_laplacian(current)
            spec = spectral_decompose(lap)
            hk = compute_heat_kernel(lap, spec, dt, method)
            dist = heat_distribution(propagate_heat(hk, u0), cfg)
            snap, keep_local = drop_node(current, dist, snapshot_rng(seed, graph_index, k))
            src_ids = src_ids[keep_local]
            mask = np.zeros(g.node_count, dtype=bool)
            mask[src_ids] = True
            snapshots.append(snap)
            masks.append(mask)
            current = snap

    return TemporalEpisode(source=g, times=times, snapshots=snapshots, seed=int(seed), kept_masks=masks)


def write_episode_jsonl(episode: TemporalEpisode, path) -> None:
    """One JSON record per snapshot: time, kept source-node ids, edge list.

    Edges are written in source-node ids for inspectability.
    """
    lines = []
    for t, snap, mask in zip(episode.times, episode.snapshots, episode.kept_masks):
        kept = np.flatnonzero(mask)
        edges = [[int(kept[i]), int(kept[j])] for i, j in snap.edges]
        lines.append(
            json.dumps({"t": float(t), "kept": [int(i) for i in kept], "edges": edges})
        )
    Path(path).write_text("\n".join(lines) + ("\n" if lines else ""))


def read_episode_jsonl(path, source: Graph, seed: int = 0) -> TemporalEpisode:
    """Rebuild an episode from its JSONL form and the source graph.

    The seed is not stored in the file; pass it when it matters for fixture
    bookkeeping. Node labels are restored from the source graph.
    """
    times = []
    snapshots = []
    masks = []
    for line in Path(path).read_text().splitlines():
        if not line.strip():
            continue
        record = json.loads(line)
        mask = np.zeros(source.node_count, dtype=bool)
        mask[np.asarray(record["kept"], dtype=int)] = True
        snap = subgraph(source, mask)
        expected = {(min(i, j), max(i, j)) for i, j in record["edges"]}
        kept = np.flatnonzero(mask)
        actual = {(int(kept[i]), int(kept[j])) for i, j in snap.edges}
        if expected != actual:
            raise ConfigError(f"episode record at t={record['t']} has edges outside the source graph")
        times.append(float(record["t"]))
        snapshots.append(snap)
        masks.append(mask)
    return TemporalEpisode(
        source=source,
        times=np.asarray(times),
        snapshots=snapshots,
        seed=int(seed),
        kept_masks=masks,
    )
