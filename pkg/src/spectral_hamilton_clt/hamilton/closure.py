""" Bipartite closure and the closure lift

The bipartite closure of a balanced graph repeatedly joins a non-adjacent
pair u in X, v in Y with d(u) + d(v) >= n + 1 until no such pair remains. A
balanced graph is Hamiltonian exactly when its closure is, and the result does
not depend on the order in which pairs are processed.
"""

import logging
from typing import List, Optional, Tuple

import numpy as np

from spectral_hamilton_clt.hamilton.certificates import HamiltonCycle
from spectral_hamilton_clt.utils.bigraph import (BipartiteGraph, Part, Vertex,
                                                 iter_bits, popcount)
from spectral_hamilton_clt.utils.errors import PreconditionError

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]


def closure_history(G: BipartiteGraph,
                    rng: Optional[np.random.Generator] = None
                    ) -> Tuple[BipartiteGraph, List[Edge]]:
    """ Compute the closure and the order in which edges were added

    Eligible pairs sit in a worklist; adding an edge only re-examines pairs
    at its two endpoints, since no other degree changed.

    Args:
        G: Balanced bipartite graph.
        rng: When given, the next eligible pair is drawn at random instead of
            taking the smallest one.

    Returns:
        (closure H, list of added (x_index, y_index) pairs in order)
    """
    n = G.n
    threshold = n + 1
    full = (1 << n) - 1
    rows = list(G.rows)
    cols = list(G.y_rows)
    dx = [popcount(row) for row in rows]
    dy = [popcount(col) for col in cols]

    pending = set()
    for i in range(n):
        for j in iter_bits(~rows[i] & full):
            if dx[i] + dy[j] >= threshold:
                pending.add((i, j))

    history: List[Edge] = []
    while pending:
        if rng is None:
            pair = min(pending)
        else:
            ordered = sorted(pending)
            pair = ordered[int(rng.integers(len(ordered)))]
        pending.discard(pair)
        i, j = pair
        rows[i] |= 1 << j
        cols[j] |= 1 << i
        dx[i] += 1
        dy[j] += 1
        history.append(pair)

        for jj in iter_bits(~rows[i] & full):
            if dx[i] + dy[jj] >= threshold:
                pending.add((i, jj))
        for ii in iter_bits(~cols[j] & full):
            if dx[ii] + dy[j] >= threshold:
                pending.add((ii, j))

    logger.debug("Closure added %d edges", len(history))
    return(BipartiteGraph(n, n, tuple(rows)), history)


def bipartite_closure(G: BipartiteGraph,
                      rng: Optional[np.random.Generator] = None
                      ) -> BipartiteGraph:
    """ Bipartite closure of a balanced graph (see closure_history)."""
    return(closure_history(G, rng)[0])


def _uses_edge(order: List[Vertex], x: Vertex, y: Vertex) -> bool:
    pos = order.index(x)
    size = len(order)
    return(y in (order[pos - 1], order[(pos + 1) % size]))


def _reroute(order: List[Vertex], rows: List[int], x: Vertex,
             y: Vertex) -> List[Vertex]:
    """ Replace the cycle edge xy using the crossing-pair argument

    Opens the cycle into a Hamilton path a_0 b_0 a_1 ... a_{n-1} b_{n-1} from
    x to y and looks for k with x ~ b_k and a_k ~ y in the current graph.
    """
    size = len(order)
    pos = order.index(x)
    step = 1 if order[(pos - 1) % size] == y else -1
    path = [order[(pos + step * k) % size] for k in range(size)]
    a = path[0::2]
    b = path[1::2]
    n = len(a)

    for k in range(1, n - 1):
        if rows[x.index] >> b[k].index & 1 and rows[a[k].index] >> y.index & 1:
            rerouted = [a[0]]
            for t in range(k, n):
                rerouted.append(b[t])
                if t + 1 < n:
                    rerouted.append(a[t + 1])
            for t in range(k, 0, -1):
                rerouted.append(a[t])
                rerouted.append(b[t - 1])
            return(rerouted)

    raise PreconditionError(f"No crossing pair for closure edge {x}{y}; the "
                            "edge history does not come from a closure.")


def lift_cycle(H: BipartiteGraph, history: List[Edge],
               cycle: HamiltonCycle) -> HamiltonCycle:
    """ Turn a Hamilton cycle of the closure into one of the original graph

    Closure edges are removed in reverse order of addition; whenever the
    current cycle uses the removed edge it is rerouted through edges of the
    graph as it was just before that edge was added.

    Args:
        H: The closure.
        history: Added edges in order, as returned by closure_history.
        cycle: A Hamilton cycle of H.

    Returns:
        A Hamilton cycle of H minus all history edges.
    """
    rows = list(H.rows)
    order = list(cycle.order)
    for i, j in reversed(history):
        rows[i] &= ~(1 << j)
        x, y = Vertex(Part.X, i), Vertex(Part.Y, j)
        if _uses_edge(order, x, y):
            order = _reroute(order, rows, x, y)
    return(HamiltonCycle(tuple(order)).normalized())
