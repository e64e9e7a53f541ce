""" Spectral radius computations

Power iteration for the spectral radius of a bipartite graph, the exact
threshold rho(G_{n,n}) through an equitable quotient, and the edge bound
rho(G) <= sqrt(e(G)) with its equality classifier.

The adjacency spectrum of a bipartite graph is symmetric about zero, so power
iteration on the adjacency matrix oscillates. Instead we iterate the X-side
Gram operator B B^T, which is positive semidefinite with dominant eigenvalue
rho(G)^2.
"""

import enum
import logging
import math
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from spectral_hamilton_clt.utils import defaults
from spectral_hamilton_clt.utils.bigraph import (BipartiteGraph, Part, Vertex,
                                                 extremal_gnn, popcount, u, v)
from spectral_hamilton_clt.utils.errors import (ConvergenceError, DomainError,
                                                UsageError)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SpectralResult:
    """ Spectral radius estimate with convergence metadata

    Attributes:
        rho: Estimated largest adjacency eigenvalue.
        iterations: Power iteration steps taken.
        residual: Final change of the Rayleigh quotient of B B^T.
    """
    rho: float
    iterations: int
    residual: float


@dataclass(frozen=True)
class Partition:
    """ Ordered vertex partition; cells must be disjoint and cover V(G)."""
    cells: Tuple[Tuple[Vertex, ...], ...]

    def validate(self, G: BipartiteGraph):
        seen = set()
        for cell in self.cells:
            for vertex in cell:
                G.check_vertex(vertex)
                if vertex in seen:
                    raise UsageError(f"Vertex {vertex} lies in two cells.")
                seen.add(vertex)
        if len(seen) != G.order():
            raise UsageError(f"Partition covers {len(seen)} of "
                             f"{G.order()} vertices.")


class BoundClass(enum.Enum):
    STRICT = "strict"
    EQUALITY = "equality"


### ------------------------ Power iteration ------------------------- ###

def spectral_radius(G: BipartiteGraph, tol: float = defaults.DEFAULT_TOL,
                    max_iter: int = defaults.MAX_ITERATIONS) -> SpectralResult:
    """ Largest adjacency eigenvalue of a bipartite graph

    Runs power iteration on B B^T from the all-ones vector and returns the
    square root of the converged Rayleigh quotient. The all-ones start has a
    positive component along the Perron vector of every component, so no
    connectivity assumption is needed.

    Args:
        G: Graph to analyse.
        tol: Bound on the change of successive Rayleigh quotients.
        max_iter: Iteration cap.

    Returns:
        SpectralResult with rho, iterations and the final quotient change.

    Raises:
        ConvergenceError: The cap was hit before the tolerance was met.
    """
    if tol <= 0:
        raise UsageError(f"Tolerance must be positive, got {tol}.")
    if G.edge_count() == 0:
        return(SpectralResult(0.0, 0, 0.0))

    B = G.biadjacency()
    gram = B @ B.T
    x = np.ones(G.nx) / math.sqrt(G.nx)
    lam = float(x @ gram @ x)
    change = math.inf

    for iteration in range(1, max_iter + 1):
        y = gram @ x
        x = y / np.linalg.norm(y)
        gx = gram @ x
        lam_new = float(x @ gx)
        change = abs(lam_new - lam)
        lam = lam_new
        # Quotient change alone stalls early on small spectral gaps
        if change <= tol and np.linalg.norm(gx - lam * x) <= math.sqrt(tol):
            return(SpectralResult(math.sqrt(max(lam, 0.0)), iteration, change))

    raise ConvergenceError(f"Power iteration did not reach tol={tol} within "
                           f"{max_iter} iterations (last change {change:.3e}).")


### --------------------- Equitable quotients ------------------------ ###

def _cell_masks(P: Partition) -> List[Tuple[int, int]]:
    masks = []
    for cell in P.cells:
        x_mask = y_mask = 0
        for vertex in cell:
            if vertex.part is Part.X:
                x_mask |= 1 << vertex.index
            else:
                y_mask |= 1 << vertex.index
        masks.append((x_mask, y_mask))
    return(masks)


def _neighbor_counts(G: BipartiteGraph, vertex: Vertex,
                     masks: Sequence[Tuple[int, int]]) -> List[int]:
    own = G.neighbor_mask(vertex)
    if vertex.part is Part.X:
        return([popcount(own & y_mask) for _, y_mask in masks])
    return([popcount(own & x_mask) for x_mask, _ in masks])


def check_equitable(G: BipartiteGraph, P: Partition) -> bool:
    """ True iff every vertex of a cell sees the same count in each cell."""
    P.validate(G)
    masks = _cell_masks(P)
    for cell in P.cells:
        counts = [_neighbor_counts(G, vertex, masks) for vertex in cell]
        if any(row != counts[0] for row in counts[1:]):
            return(False)
    return(True)


def quotient_matrix(G: BipartiteGraph, P: Partition) -> np.ndarray:
    """ Quotient matrix of an equitable partition

    Entry (i, j) is the number of neighbours a vertex of cell i has in cell j.

    Raises:
        DomainError: The partition is not equitable.
    """
    if not check_equitable(G, P):
        raise DomainError("Partition is not equitable.")
    masks = _cell_masks(P)
    rows = [_neighbor_counts(G, cell[0], masks) for cell in P.cells]
    return(np.array(rows, dtype=float))


def gnn_partition(n: int) -> Partition:
    """ Five-cell equitable partition of G_{n,n}

    Cells: {u_1}, {u_2, u_3, u_4}, {u_5..u_n}, {v_1, v_2, v_3}, {v_4..v_n}.
    """
    if n < defaults.EXTREMAL_MIN_N:
        raise DomainError(f"n must be at least {defaults.EXTREMAL_MIN_N}.")
    return(Partition((
        (u(1),),
        (u(2), u(3), u(4)),
        tuple(u(i) for i in range(5, n + 1)),
        (v(1), v(2), v(3)),
        tuple(v(j) for j in range(4, n + 1)),
    )))


def rho_gnn_exact(n: int, tol: float = defaults.DEFAULT_TOL) -> float:
    """ Spectral radius of G_{n,n} from its 5x5 quotient matrix

    The largest quotient eigenvalue is located by bisection on
    det(lambda I - Q) over [sqrt(n(n-3)), sqrt(n(n-3) + 6)], where the
    polynomial is negative at the left end and positive at the right end.

    Args:
        n: Part size, at least 5.
        tol: Width of the final bracket. Tolerances below the float
            spacing near rho stop at the narrowest representable bracket.

    Returns:
        rho(G_{n,n}) to within tol, or to machine precision.
    """
    if n < defaults.EXTREMAL_MIN_N:
        raise DomainError(f"rho(G_{{n,n}}) needs n >= "
                          f"{defaults.EXTREMAL_MIN_N}, got {n}.")
    if tol <= 0:
        raise UsageError(f"Tolerance must be positive, got {tol}.")

    Q = quotient_matrix(extremal_gnn(n), gnn_partition(n))
    identity = np.eye(Q.shape[0])

    def char_poly(lam: float) -> float:
        return(float(np.linalg.det(lam * identity - Q)))

    lo = math.sqrt(n * (n - 3))
    hi = math.sqrt(n * (n - 3) + 6)
    if not (char_poly(lo) < 0 < char_poly(hi)):
        raise ConvergenceError("Characteristic polynomial does not change "
                               "sign over the threshold bracket.")

    while hi - lo > tol:
        mid = (lo + hi) / 2
        # bracket narrower than the float spacing
        if not lo < mid < hi:
            break
        if char_poly(mid) < 0:
            lo = mid
        else:
            hi = mid
    return((lo + hi) / 2)


### --------------------------- Edge bound --------------------------- ###

def edge_bound_classify(G: BipartiteGraph) -> BoundClass:
    """ Decide whether rho(G) = sqrt(e(G)) holds with equality

    Equality holds exactly when G, after dropping isolated vertices, is a
    complete bipartite graph. An edgeless graph counts as equality (0 = 0).
    """
    covered_y = 0
    for row in G.rows:
        covered_y |= row
    for row in G.rows:
        if row and row != covered_y:
            return(BoundClass.STRICT)
    return(BoundClass.EQUALITY)
