""" Brute-force oracles and graph strategies for the test suite

The oracles are deliberately naive: dense eigensolvers, full subset and
permutation enumeration, and networkx isomorphism. They are only usable on
small graphs and live here so the library never depends on them.
"""

from fractions import Fraction
from itertools import combinations, permutations
from typing import Optional, Tuple

import networkx as nx
import numpy as np
from hypothesis import strategies as st

from spectral_hamilton_clt.utils.bigraph import (BipartiteGraph, Part, Vertex,
                                                 extremal_gnn)
from spectral_hamilton_clt.utils.graph_io import to_networkx


### --------------------------- Strategies --------------------------- ###

@st.composite
def balanced_graphs(draw, min_n: int = 1, max_n: int = 4) -> BipartiteGraph:
    n = draw(st.integers(min_n, max_n))
    rows = draw(st.lists(st.integers(0, (1 << n) - 1), min_size=n,
                         max_size=n))
    return(BipartiteGraph(n, n, tuple(rows)))


@st.composite
def bipartite_graphs(draw, max_part: int = 4) -> BipartiteGraph:
    n_x = draw(st.integers(0, max_part))
    n_y = draw(st.integers(0, max_part))
    rows = draw(st.lists(st.integers(0, (1 << n_y) - 1), min_size=n_x,
                         max_size=n_x))
    return(BipartiteGraph(n_x, n_y, tuple(rows)))


@st.composite
def connected_bipartite_graphs(draw, max_part: int = 6) -> BipartiteGraph:
    """ Connected graphs with both parts non-empty, balanced or not."""
    n_x = draw(st.integers(1, max_part))
    n_y = draw(st.integers(1, max_part))
    rows = draw(st.lists(st.integers(0, (1 << n_y) - 1), min_size=n_x,
                         max_size=n_x))
    # every X-vertex meets v1 and every Y-vertex meets some X-vertex
    rows = [row | 1 for row in rows]
    for j in range(1, n_y):
        i = draw(st.integers(0, n_x - 1))
        rows[i] |= 1 << j
    return(BipartiteGraph(n_x, n_y, tuple(rows)))


### ----------------------------- Oracles ---------------------------- ###

def jacobi_eigenvalues(A: np.ndarray, tol: float = 1e-13,
                       max_sweeps: int = 100) -> np.ndarray:
    """ Ascending eigenvalues of a symmetric matrix by Jacobi rotations."""
    A = np.array(A, dtype=float)
    m = A.shape[0]
    for _ in range(max_sweeps):
        if np.sqrt(np.sum(np.tril(A, -1) ** 2)) < tol:
            break
        for p in range(m - 1):
            for q in range(p + 1, m):
                if A[p, q] == 0.0:
                    continue
                theta = (A[q, q] - A[p, p]) / (2 * A[p, q])
                t = (1.0 if theta >= 0 else -1.0) / (
                    abs(theta) + np.sqrt(theta * theta + 1))
                c = 1 / np.sqrt(t * t + 1)
                J = np.eye(m)
                J[p, p] = J[q, q] = c
                J[p, q] = t * c
                J[q, p] = -t * c
                A = J.T @ A @ J
    return(np.sort(np.diag(A)))


def dense_rho(G: BipartiteGraph) -> float:
    """ Largest eigenvalue of the full adjacency matrix."""
    if G.order() == 0:
        return(0.0)
    return(float(jacobi_eigenvalues(G.adjacency())[-1]))


def brute_toughness(G: BipartiteGraph
                    ) -> Optional[Tuple[Fraction, Tuple[Vertex, ...]]]:
    """ Minimum |S| / c(G - S) over proper one-sided S with c(G - S) > 1

    Subsets are visited by size, X before Y, lexicographically, and only a
    strictly smaller ratio replaces the incumbent.
    """
    graph = to_networkx(G)
    best = None
    for k in range(max(G.nx, G.ny)):
        for part, size, offset in ((Part.X, G.nx, 0), (Part.Y, G.ny, G.nx)):
            if k >= size or (part is Part.Y and k == 0):
                continue
            for S in combinations(range(size), k):
                rest = graph.copy()
                rest.remove_nodes_from(offset + i for i in S)
                components = nx.number_connected_components(rest)
                if components <= 1:
                    continue
                ratio = Fraction(k, components)
                if best is None or ratio < best[0]:
                    best = (ratio, tuple(Vertex(part, i) for i in S))
    return(best)


def brute_hamiltonian(G: BipartiteGraph) -> bool:
    """ Try every alternating vertex order starting at u1."""
    n = G.n
    if n < 2:
        return(False)
    for rest_x in permutations(range(1, n)):
        xs = (0,) + rest_x
        for ys in permutations(range(n)):
            if all(G.has_edge(xs[k], ys[k]) and G.has_edge(xs[(k + 1) % n],
                                                           ys[k])
                   for k in range(n)):
                return(True)
    return(False)


def brute_two_factor(G: BipartiteGraph) -> bool:
    """ Try every edge subset of size 2n."""
    n = G.n
    if n < 2:
        return(False)
    for chosen in combinations(list(G.edges()), 2 * n):
        x_deg = [0] * n
        y_deg = [0] * n
        for i, j in chosen:
            x_deg[i] += 1
            y_deg[j] += 1
        if all(d == 2 for d in x_deg + y_deg):
            return(True)
    return(False)


def isomorphic_to_gnn(G: BipartiteGraph) -> bool:
    return(nx.is_isomorphic(to_networkx(G), to_networkx(extremal_gnn(G.n))))
