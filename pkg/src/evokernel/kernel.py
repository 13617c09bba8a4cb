"""Pairwise episode distances and the similarity kernel fed to the SVM.

The kernel is K = exp(-d / sigma) with a median-distance bandwidth. Alignment
distances violate the triangle inequality, so K can be indefinite; eigenvalue
clipping is available (and on by default downstream) to repair it.
"""

from __future__ import annotations

import csv
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .augment import TemporalEpisode
from .embedding import MetricConfig, wl_embed
from .errors import ContractError
from .gdtw import cross_distances, gdtw_distance_only

THREADS_ENV_VAR = "EVOKERNEL_THREADS"

# Shared state for fork-based workers; set before the pool spawns.
_POOL_DISTANCES: np.ndarray | None = None
_POOL_GRID: int = 0


@dataclass(frozen=True)
class EvolutionKernelMatrix:
    k: np.ndarray
    sigma: float
    psd_repair: str


def worker_count() -> int:
    """Thread/process count from the environment, default 1 (serial)."""
    raw = os.environ.get(THREADS_ENV_VAR, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def distance_matrix(
    episodes: list[TemporalEpisode], cfg: MetricConfig = MetricConfig(), workers: int = 1
) -> np.ndarray:
    """Symmetric matrix of pairwise alignment distances, zero diagonal.

    Every snapshot is embedded exactly once; each unordered pair is aligned
    once and mirrored, so symmetry is exact by construction. Results are
    independent of the worker count.
    """
    n = len(episodes)
    if n == 0:
        return np.zeros((0, 0))
    grid = episodes[0].times
    for e in episodes[1:]:
        if len(e.times) != len(grid) or not np.array_equal(e.times, grid):
            raise ContractError("episodes are not on a common time grid")
    steps = len(grid)

    embeddings = np.stack(
        [wl_embed(s, cfg).vector for e in episodes for s in e.snapshots]
    )
    all_dist = cross_distances(embeddings, embeddings)

    d = np.zeros((n, n))
    if workers <= 1 or n < 4:
        for i in range(n):
            for j in range(i + 1, n):
                block = all_dist[i * steps:(i + 1) * steps, j * steps:(j + 1) * steps]
                d[i, j] = d[j, i] = gdtw_distance_only(block)
        return d

    global _POOL_DISTANCES, _POOL_GRID
    _POOL_DISTANCES, _POOL_GRID = all_dist, steps
    try:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for i, row in zip(range(n), pool.map(_pair_row, range(n))):
                d[i, i + 1:] = row
    finally:
        _POOL_DISTANCES, _POOL_GRID = None, 0
    d = d + d.T
    return d


def _pair_row(i: int) -> np.ndarray:
    dist, steps = _POOL_DISTANCES, _POOL_GRID
    n = dist.shape[0] // steps
    out = np.zeros(n - i - 1)
    for pos, j in enumerate(range(i + 1, n)):
        block = dist[i * steps:(i + 1) * steps, j * steps:(j + 1) * steps]
        out[pos] = gdtw_distance_only(block)
    return out


def evolution_kernel(
    d: np.ndarray, gamma_scale: float = 1.0, repair: str = "clip"
) -> EvolutionKernelMatrix:
    """K(i, j) = exp(-d(i, j) / sigma), sigma = gamma_scale * median off-diagonal distance.

    An empty or all-zero off-diagonal falls back to sigma = 1 (the kernel of a
    zero matrix is all ones either way). With repair="clip" the matrix is
    eigendecomposed, negative eigenvalues zeroed, reconstructed and
    re-symmetrized; that trades the exact unit diagonal for positive
    semidefiniteness.
    """
    if gamma_scale <= 0:
        raise ValueError(f"gamma_scale must be positive, got {gamma_scale}")
    if repair not in ("none", "clip"):
        raise ValueError(f"repair must be 'none' or 'clip', got {repair!r}")
    d = np.asarray(d, dtype=float)
    n = d.shape[0]
    off = d[~np.eye(n, dtype=bool)]
    if off.size == 0:
        sigma = 1.0
    else:
        median = float(np.median(off))
        sigma = gamma_scale * median if median > 0 else 1.0
    k = np.exp(-d / sigma)
    if repair == "clip":
        k = clip_psd(k)
    return EvolutionKernelMatrix(k=k, sigma=sigma, psd_repair=repair)


def clip_psd(k: np.ndarray) -> np.ndarray:
    """Project onto the PSD cone by zeroing negative eigenvalues."""
    w, v = np.linalg.eigh(k)
    w = np.clip(w, 0.0, None)
    repaired = (v * w) @ v.T
    return (repaired + repaired.T) / 2.0


def export_matrix_csv(m: np.ndarray, path, ids=None) -> None:
    """Row-major CSV with a header of graph ids, for external analysis."""
    m = np.asarray(m)
    if ids is None:
        ids = list(range(m.shape[0]))
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["id"] + [str(i) for i in ids])
        for gid, row in zip(ids, m):
            writer.writerow([str(gid)] + [repr(float(x)) for x in row])
