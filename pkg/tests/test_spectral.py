import math

import numpy as np
import pytest
from hypothesis import assume, given, settings

from spectral_hamilton_clt.spectral import (BoundClass, Partition,
                                            check_equitable,
                                            edge_bound_classify,
                                            gnn_partition, quotient_matrix,
                                            rho_gnn_exact, spectral_radius)
from spectral_hamilton_clt.utils.bigraph import (BipartiteGraph,
                                                 complete_bipartite,
                                                 extremal_gnn, u, v)
from spectral_hamilton_clt.utils.errors import (ConvergenceError, DomainError,
                                                UsageError)
from spectral_hamilton_clt.verify.populations import enumerate_balanced
from tests.oracles import bipartite_graphs, dense_rho, jacobi_eigenvalues


def test_known_radii(c6, k33):
    assert spectral_radius(k33).rho == pytest.approx(3.0, abs=1e-9)
    assert spectral_radius(c6).rho == pytest.approx(2.0, abs=1e-9)
    assert spectral_radius(complete_bipartite(2, 8)).rho == pytest.approx(4.0)


def test_edgeless_graph():
    result = spectral_radius(BipartiteGraph(3, 3, (0, 0, 0)))
    assert result.rho == 0.0
    assert result.iterations == 0


def test_bad_tolerance(c6):
    with pytest.raises(UsageError):
        spectral_radius(c6, tol=0)


def test_iteration_cap(p4):
    with pytest.raises(ConvergenceError):
        spectral_radius(p4, max_iter=1)


@settings(max_examples=150, deadline=None)
@given(bipartite_graphs(max_part=8))
def test_power_iteration_matches_dense_solver(G):
    assert spectral_radius(G).rho == pytest.approx(dense_rho(G), abs=1e-8)


def test_every_three_by_three_graph_matches_dense_solver():
    for G in enumerate_balanced(3):
        assert spectral_radius(G).rho == pytest.approx(dense_rho(G), abs=1e-8)


@settings(max_examples=50, deadline=None)
@given(bipartite_graphs(max_part=6))
def test_rotation_oracle_agrees_with_lapack(G):
    assume(G.order() > 0)
    A = G.adjacency()
    assert jacobi_eigenvalues(A) == pytest.approx(np.linalg.eigvalsh(A),
                                                  abs=1e-9)


def test_extremal_radius_bracket(gnn16):
    rho = spectral_radius(gnn16).rho
    assert math.sqrt(208) < rho < math.sqrt(214)


@pytest.mark.parametrize("n", [5, 6, 8, 12, 16, 20])
def test_threshold_matches_power_iteration(n):
    exact = rho_gnn_exact(n)
    assert exact == pytest.approx(spectral_radius(extremal_gnn(n)).rho,
                                  abs=1e-8)
    assert exact == pytest.approx(dense_rho(extremal_gnn(n)), abs=1e-8)


def test_threshold_domain():
    with pytest.raises(DomainError):
        rho_gnn_exact(4)


@pytest.mark.parametrize("n", [5, 16, 40])
def test_threshold_below_float_spacing(n):
    # no float bracket around rho is 1e-16 wide
    assert rho_gnn_exact(n, tol=1e-16) == pytest.approx(rho_gnn_exact(n),
                                                        abs=1e-9)


def test_extremal_quotient(gnn16):
    P = gnn_partition(16)
    assert check_equitable(gnn16, P)
    Q = quotient_matrix(gnn16, P)
    expected = np.array([[0, 0, 0, 3, 13],
                         [0, 0, 0, 1, 13],
                         [0, 0, 0, 0, 13],
                         [1, 1, 0, 0, 0],
                         [1, 3, 12, 0, 0]], dtype=float)
    assert np.array_equal(Q, expected)
    assert max(np.linalg.eigvals(Q).real) == pytest.approx(rho_gnn_exact(16),
                                                           abs=1e-8)


def test_non_equitable_partition(gnn16):
    P = Partition((tuple(u(i) for i in range(1, 17)),
                   tuple(v(j) for j in range(1, 17))))
    assert not check_equitable(gnn16, P)
    with pytest.raises(DomainError):
        quotient_matrix(gnn16, P)


def test_partition_must_cover(c6):
    with pytest.raises(UsageError):
        check_equitable(c6, Partition(((u(1), u(2), u(3)), (v(1),))))
    with pytest.raises(UsageError):
        check_equitable(c6, Partition(((u(1), u(1)), (u(2), u(3)),
                                       (v(1), v(2), v(3)))))


def test_edge_bound_classes(c6, k33):
    assert edge_bound_classify(k33) is BoundClass.EQUALITY
    assert edge_bound_classify(c6) is BoundClass.STRICT
    # K_{2,3} inside a 4 x 4 frame, the rest isolated
    padded = BipartiteGraph(4, 4, (0b0111, 0b0111, 0, 0))
    assert edge_bound_classify(padded) is BoundClass.EQUALITY
    assert spectral_radius(padded).rho == pytest.approx(math.sqrt(6))
    assert edge_bound_classify(BipartiteGraph(2, 2, (0, 0))) \
        is BoundClass.EQUALITY


@settings(deadline=None)
@given(bipartite_graphs(max_part=5))
def test_edge_bound_holds(G):
    rho = spectral_radius(G).rho
    bound = math.sqrt(G.edge_count())
    assert rho <= bound + 1e-9
    if edge_bound_classify(G) is BoundClass.EQUALITY:
        assert rho == pytest.approx(bound, abs=1e-9)
    else:
        assert rho < bound
