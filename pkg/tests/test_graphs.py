from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from evokernel.errors import GraphConstructionError
from evokernel.graphs import build_graph, degree_profile, normalized_laplacian, subgraph

from .oracles import permute_graph, random_graph


def test_single_edge_graph(k2):
    assert k2.node_count == 2
    assert list(k2.degrees()) == [1, 1]
    assert k2.volume() == 2


def test_edgeless_graph():
    g = build_graph(3, [])
    assert g.edge_count == 0
    assert g.volume() == 0


def test_four_cycle_degrees(c4):
    profile = degree_profile(c4)
    assert list(profile.degrees) == [2, 2, 2, 2]
    assert profile.volume == 8


def test_out_of_range_edge_names_offender():
    with pytest.raises(GraphConstructionError, match=r"\(0, 5\)"):
        build_graph(3, [(0, 5)])


def test_strict_rejects_self_loop_and_duplicate():
    with pytest.raises(GraphConstructionError, match="self-loop"):
        build_graph(3, [(1, 1)])
    with pytest.raises(GraphConstructionError, match="duplicate"):
        build_graph(3, [(0, 1), (1, 0)])


def test_lenient_mode_dedupes():
    g = build_graph(3, [(0, 1), (1, 0), (2, 2), (1, 2)], strict=False)
    assert g.edges == ((0, 1), (1, 2))


def test_label_length_must_match():
    with pytest.raises(GraphConstructionError):
        build_graph(3, [], node_labels=[1, 2])


def test_laplacian_single_edge(k2):
    expected = np.array([[1.0, -1.0], [-1.0, 1.0]])
    assert np.array_equal(normalized_laplacian(k2), expected)


def test_laplacian_edgeless_is_zero():
    lap = normalized_laplacian(build_graph(3, []))
    assert np.array_equal(lap, np.zeros((3, 3)))


def test_laplacian_path_graph(p3):
    lap = normalized_laplacian(p3)
    assert np.allclose(np.diag(lap), [1.0, 1.0, 1.0])
    assert lap[0, 1] == pytest.approx(-1.0 / np.sqrt(2.0))
    assert lap[1, 2] == pytest.approx(-1.0 / np.sqrt(2.0))
    assert lap[0, 2] == 0.0


def test_isolated_node_gives_zero_row(k2):
    g = build_graph(3, [(0, 1)])
    lap = normalized_laplacian(g)
    assert np.array_equal(lap[2], np.zeros(3))
    assert np.array_equal(lap[:, 2], np.zeros(3))


@pytest.mark.parametrize("seed", range(8))
def test_adjacency_and_volume_invariants(seed):
    rng = np.random.default_rng(seed)
    g = random_graph(rng, int(rng.integers(1, 25)), 0.3)
    a = g.adjacency()
    assert np.array_equal(a, a.T)
    assert set(np.unique(a)) <= {0.0, 1.0}
    assert g.volume() == 2 * g.edge_count
    assert np.array_equal(g.degrees(), a.sum(axis=1).astype(int))


@pytest.mark.parametrize("seed", range(8))
def test_laplacian_spectrum_in_range(seed):
    rng = np.random.default_rng(100 + seed)
    g = random_graph(rng, int(rng.integers(2, 30)), 0.25)
    lap = normalized_laplacian(g)
    assert np.max(np.abs(lap - lap.T)) <= 1e-12
    eigs = np.linalg.eigvalsh(lap)
    assert eigs[0] >= -1e-9
    assert eigs[-1] <= 2.0 + 1e-9


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_laplacian_permutation_equivariance(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 21))
    g = random_graph(rng, n, 0.3)
    perm = rng.permutation(n)
    relabeled = permute_graph(g, perm)
    p = np.zeros((n, n))
    p[perm, np.arange(n)] = 1.0  # p @ x permutes old coordinates to new
    expected = p @ normalized_laplacian(g) @ p.T
    assert np.allclose(normalized_laplacian(relabeled), expected, atol=1e-12)


def test_subgraph_repacks_and_keeps_labels():
    g = build_graph(4, [(0, 1), (1, 2), (2, 3)], node_labels=[5, 6, 7, 8])
    sub = subgraph(g, np.array([True, False, True, True]))
    assert sub.node_count == 3
    assert sub.edges == ((1, 2),)
    assert sub.node_labels == (5, 7, 8)


def test_graph_value_equality(k2):
    assert k2 == build_graph(2, [(0, 1)])
    assert k2 != build_graph(2, [])
