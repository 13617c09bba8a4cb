"""Time-warped alignment of temporal episodes.

The warping matrix holds pairwise snapshot distances; the alignment distance
is the minimum cumulative cost over all warping paths satisfying the boundary,
monotonicity and continuity constraints, computed by dynamic programming with
an infinity border and recovered by backtracking.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .augment import TemporalEpisode
from .embedding import MetricConfig, wl_embed
from .errors import ContractError


@dataclass(frozen=True)
class WarpingResult:
    """Alignment distance, the recovered optimal path (0-based cells, first
    cell (0, 0), last (N-1, N-1)), and the cumulative-cost table including its
    infinity border."""

    distance: float
    path: tuple[tuple[int, int], ...]
    cumulative: np.ndarray


def episode_embeddings(episode: TemporalEpisode, cfg: MetricConfig) -> np.ndarray:
    """Embed each snapshot once; rows align with the episode's time grid."""
    return np.stack([wl_embed(s, cfg).vector for s in episode.snapshots])


def build_warping_matrix(
    e1: TemporalEpisode, e2: TemporalEpisode, cfg: MetricConfig = MetricConfig()
) -> np.ndarray:
    """M[i, j] = metric distance between snapshot i of e1 and snapshot j of e2."""
    if len(e1) != len(e2):
        raise ContractError(f"episode lengths differ: {len(e1)} vs {len(e2)}")
    emb1 = episode_embeddings(e1, cfg)
    emb2 = episode_embeddings(e2, cfg)
    return cross_distances(emb1, emb2)


def cross_distances(emb1: np.ndarray, emb2: np.ndarray) -> np.ndarray:
    """Euclidean distances between two stacks of embedding rows."""
    sq1 = (emb1 ** 2).sum(axis=1)
    sq2 = (emb2 ** 2).sum(axis=1)
    d2 = sq1[:, None] + sq2[None, :] - 2.0 * (emb1 @ emb2.T)
    return np.sqrt(np.clip(d2, 0.0, None))


def gdtw_distance(m: np.ndarray) -> WarpingResult:
    """Minimal cumulative cost over admissible warping paths of the matrix.

    gamma(i, j) = M(i, j) + min(gamma(i, j-1), gamma(i-1, j), gamma(i-1, j-1))
    with gamma(0, 0) = 0 and an infinite border. Backtracking breaks ties
    diagonal first, then up, then left, so the path is deterministic and the
    shortest among equal-cost alternatives.
    """
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
        raise ContractError(f"warping matrix must be square and non-empty, got shape {m.shape}")
    if not np.all(np.isfinite(m)) or np.any(m < 0):
        raise ContractError("warping matrix entries must be finite and non-negative")

    n = m.shape[0]
    gamma = np.full((n + 1, n + 1), np.inf)
    gamma[0, 0] = 0.0
    for i in range(1, n + 1):
        row = gamma[i]
        prev = gamma[i - 1]
        costs = m[i - 1]
        for j in range(1, n + 1):
            best = prev[j - 1]
            if prev[j] < best:
                best = prev[j]
            if row[j - 1] < best:
                best = row[j - 1]
            row[j] = costs[j - 1] + best

    cells = [(n - 1, n - 1)]
    i = j = n
    while (i, j) != (1, 1):
        diag, up, left = gamma[i - 1, j - 1], gamma[i - 1, j], gamma[i, j - 1]
        if diag <= up and diag <= left:
            i, j = i - 1, j - 1
        elif up <= left:
            i = i - 1
        else:
            j = j - 1
        cells.append((i - 1, j - 1))
    cells.reverse()

    return WarpingResult(
        distance=float(gamma[n, n]), path=tuple(cells), cumulative=gamma
    )


def gdtw_distance_only(m: np.ndarray) -> float:
    """DP cost without path recovery, for bulk pairwise assembly."""
    n = m.shape[0]
    prev = np.full(n + 1, np.inf)
    prev[0] = 0.0
    for i in range(n):
        row = np.full(n + 1, np.inf)
        costs = m[i]
        for j in range(1, n + 1):
            best = prev[j - 1]
            if prev[j] < best:
                best = prev[j]
            if row[j - 1] < best:
                best = row[j - 1]
            row[j] = costs[j - 1] + best
        prev = row
    return float(prev[n])


def euclidean_episode_distance(
    e1: TemporalEpisode, e2: TemporalEpisode, cfg: MetricConfig = MetricConfig()
) -> float:
    """Root of the summed squared snapshot distances on the common grid."""
    if len(e1) != len(e2):
        raise ContractError(f"episode lengths differ: {len(e1)} vs {len(e2)}")
    emb1 = episode_embeddings(e1, cfg)
    emb2 = episode_embeddings(e2, cfg)
    diffs = np.linalg.norm(emb1 - emb2, axis=1)
    return float(np.sqrt((diffs ** 2).sum()))


def warping_to_json(m: np.ndarray, result: WarpingResult) -> str:
    """Diagnostic dump of one aligned pair: cost matrix, path, distance."""
    return json.dumps(
        {
            "matrix": np.asarray(m, dtype=float).tolist(),
            "path": [list(cell) for cell in result.path],
            "distance": result.distance,
        }
    )
