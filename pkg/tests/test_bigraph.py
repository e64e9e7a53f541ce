import numpy as np
import pytest
from hypothesis import given

from spectral_hamilton_clt.utils.bigraph import (BipartiteGraph, Part,
                                                 complete_bipartite,
                                                 delete_vertices,
                                                 edges_between, extremal_gnn,
                                                 gnn_specials, u, v,
                                                 vertex_sequence)
from spectral_hamilton_clt.utils.errors import DomainError, UsageError
from tests.oracles import balanced_graphs, bipartite_graphs


def test_vertex_labels():
    assert str(u(1)) == "u1"
    assert str(v(3)) == "v3"
    assert u(2).part is Part.X and u(2).index == 1
    assert vertex_sequence(["u1", "v3", "u12"]) == [u(1), v(3), u(12)]


@pytest.mark.parametrize("label", ["w2", "u0", "v", "ux"])
def test_vertex_sequence_rejects(label):
    with pytest.raises(UsageError):
        vertex_sequence([label])


def test_complete_bipartite_counts():
    K = complete_bipartite(16, 13)
    assert K.edge_count() == 208
    assert K.is_complete()
    assert not K.balanced()
    assert complete_bipartite(0, 3).edge_count() == 0
    assert not complete_bipartite(0, 3).is_complete()


def test_extremal_graph_shape(gnn16):
    assert gnn16.edge_count() == 16 * 13 + 6 == 214
    assert gnn16.y_degrees()[:3] == [2, 2, 2]
    assert gnn16.y_degrees()[3:] == [16] * 13
    assert gnn16.x_degrees()[:4] == [16, 14, 14, 14]
    assert gnn16.x_degrees()[4:] == [13] * 12
    for k, special in enumerate(gnn_specials(), start=1):
        assert gnn16.neighbors(special) == [u(1), u(k + 1)]


@pytest.mark.parametrize("n", [5, 6, 9])
def test_extremal_edge_count(n):
    assert extremal_gnn(n).edge_count() == n * (n - 3) + 6


def test_extremal_needs_five():
    with pytest.raises(DomainError):
        extremal_gnn(4)


def test_constructor_validation():
    with pytest.raises(UsageError):
        BipartiteGraph(2, 2, (0b100, 0))
    with pytest.raises(UsageError):
        BipartiteGraph(2, 2, (0,))
    with pytest.raises(UsageError):
        BipartiteGraph.from_edges(2, 2, [(2, 0)])


def test_unbalanced_has_no_n():
    with pytest.raises(DomainError):
        complete_bipartite(2, 3).n


def test_biadjacency_constructors_agree(c6):
    assert BipartiteGraph.from_biadjacency(c6.biadjacency()) == c6
    A = c6.adjacency()
    assert A.shape == (6, 6)
    assert np.array_equal(A, A.T)
    assert A.sum() == 2 * c6.edge_count()


def test_delete_vertices(gnn16):
    H = delete_vertices(gnn16, [u(1)])
    assert (H.nx, H.ny) == (15, 16)
    assert H.y_degrees()[:3] == [1, 1, 1]
    assert gnn16.edge_count() == 214
    with pytest.raises(UsageError):
        delete_vertices(gnn16, [u(17)])


def test_edges_between(k33, c6):
    assert edges_between(k33, [u(1), u(2)], [v(1)]) == 2
    assert edges_between(c6, [u(1)], [v(1), v(2), v(3)]) == 2
    with pytest.raises(UsageError):
        edges_between(c6, [v(1)], [v(2)])


def test_digest_is_stable_and_separates(c6, k33):
    assert c6.digest() == BipartiteGraph(3, 3, c6.rows).digest()
    assert c6.digest() != k33.digest()
    assert len(c6.digest()) == 16


@given(bipartite_graphs())
def test_transpose_is_an_involution(G):
    T = G.transpose()
    assert (T.nx, T.ny) == (G.ny, G.nx)
    assert T.edge_count() == G.edge_count()
    assert T.transpose() == G


@given(balanced_graphs())
def test_degree_sums_match_edges(G):
    assert sum(G.x_degrees()) == sum(G.y_degrees()) == G.edge_count()
    assert G.without_edges(G.edges()).edge_count() == 0
    assert BipartiteGraph(G.nx, G.ny, (0,) * G.nx).with_edges(G.edges()) == G
