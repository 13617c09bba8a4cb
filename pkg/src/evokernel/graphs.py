"""Undirected simple graphs and their spectral matrices."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import GraphConstructionError


class Graph:
    """Immutable undirected simple graph with optional discrete node labels.

    Edges are stored as a sorted tuple of (i, j) pairs with i < j so iteration
    order never depends on hashing. Adjacency, degrees and neighbor lists are
    derived views computed on demand and cached; instances must not be mutated
    after construction.
    """

    def __init__(self, node_count: int, edges, node_labels=None):
        self.node_count = int(node_count)
        self.edges = tuple(
            sorted((int(i), int(j)) if i <= j else (int(j), int(i)) for i, j in edges)
        )
        if node_labels is None:
            self.node_labels = None
        else:
            self.node_labels = tuple(int(x) for x in node_labels)
            if len(self.node_labels) != self.node_count:
                raise GraphConstructionError(
                    f"{len(self.node_labels)} node labels for {self.node_count} nodes"
                )
        self._adjacency = None
        self._neighbors = None

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def adjacency(self) -> np.ndarray:
        """Dense symmetric 0/1 adjacency matrix."""
        if self._adjacency is None:
            a = np.zeros((self.node_count, self.node_count))
            for i, j in self.edges:
                a[i, j] = 1.0
                a[j, i] = 1.0
            self._adjacency = a
        return self._adjacency

    def degrees(self) -> np.ndarray:
        deg = np.zeros(self.node_count, dtype=np.int64)
        for i, j in self.edges:
            deg[i] += 1
            deg[j] += 1
        return deg

    def volume(self) -> int:
        """Sum of all node degrees, i.e. twice the edge count."""
        return 2 * self.edge_count

    def neighbors(self) -> list[list[int]]:
        """Sorted adjacency lists."""
        if self._neighbors is None:
            nbrs: list[list[int]] = [[] for _ in range(self.node_count)]
            for i, j in self.edges:
                nbrs[i].append(j)
                nbrs[j].append(i)
            self._neighbors = [sorted(ns) for ns in nbrs]
        return self._neighbors

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.node_count == other.node_count
            and self.edges == other.edges
            and self.node_labels == other.node_labels
        )

    def __hash__(self) -> int:
        return hash((self.node_count, self.edges, self.node_labels))

    def __repr__(self) -> str:
        return f"Graph(n={self.node_count}, m={self.edge_count})"


@dataclass(frozen=True)
class DegreeProfile:
    """Per-node degrees plus their sum (the graph volume)."""

    degrees: np.ndarray
    volume: int


def build_graph(node_count: int, edge_list, node_labels=None, strict: bool = True) -> Graph:
    """Validate an edge list and build a :class:`Graph`.

    Endpoints outside ``[0, node_count)`` always raise. With ``strict`` a
    self-loop or duplicate edge raises too; otherwise self-loops are dropped
    and duplicates collapsed.
    """
    if node_count < 0:
        raise GraphConstructionError(f"negative node count {node_count}")
    seen: set[tuple[int, int]] = set()
    edges = []
    for raw in edge_list:
        i, j = int(raw[0]), int(raw[1])
        if not (0 <= i < node_count) or not (0 <= j < node_count):
            raise GraphConstructionError(
                f"edge ({i}, {j}) has an endpoint outside [0, {node_count})"
            )
        if i == j:
            if strict:
                raise GraphConstructionError(f"self-loop ({i}, {j})")
            continue
        key = (min(i, j), max(i, j))
        if key in seen:
            if strict:
                raise GraphConstructionError(f"duplicate edge ({i}, {j})")
            continue
        seen.add(key)
        edges.append(key)
    return Graph(node_count, edges, node_labels)


def degree_profile(g: Graph) -> DegreeProfile:
    deg = g.degrees()
    return DegreeProfile(degrees=deg, volume=int(deg.sum()))


def normalized_laplacian(g: Graph) -> np.ndarray:
    """Symmetric normalized Laplacian I - D^{-1/2} A D^{-1/2}.

    Isolated nodes get all-zero rows and columns (the D^{-1/2}(i,i) = 0
    convention), so every eigenvalue lies in [0, 2].
    """
    n = g.node_count
    deg = g.degrees().astype(float)
    lap = np.zeros((n, n))
    for i in range(n):
        if deg[i] > 0:
            lap[i, i] = 1.0
    for i, j in g.edges:
        w = -1.0 / np.sqrt(deg[i] * deg[j])
        lap[i, j] = w
        lap[j, i] = w
    return lap


def subgraph(g: Graph, kept: np.ndarray) -> Graph:
    """Induced subgraph on the nodes flagged by the boolean mask ``kept``.

    Surviving nodes are re-packed to contiguous 0-based ids in ascending
    source order; labels follow their nodes.
    """
    kept = np.asarray(kept, dtype=bool)
    if kept.shape != (g.node_count,):
        raise GraphConstructionError(
            f"mask of length {kept.size} for graph with {g.node_count} nodes"
        )
    old_ids = np.flatnonzero(kept)
    remap = {int(old): new for new, old in enumerate(old_ids)}
    edges = [
        (remap[i], remap[j]) for i, j in g.edges if kept[i] and kept[j]
    ]
    labels = None
    if g.node_labels is not None:
        labels = tuple(g.node_labels[int(i)] for i in old_ids)
    return Graph(len(old_ids), edges, labels)
