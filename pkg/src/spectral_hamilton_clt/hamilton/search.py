""" Exact Hamilton cycle search

Backtracking from u_1 that always extends the current path by the smallest
unvisited neighbour. Each node checks three necessary conditions on what is
left of the cycle before expanding:

    * every unvisited vertex keeps at least two usable neighbours,
    * no vertex is forced onto more cycle edges than it has room for,
    * the unvisited vertices still hang together with the two path ends.

Every extension is counted and folded into a running digest, so two runs on
the same graph can be compared step by step.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from spectral_hamilton_clt.hamilton.certificates import HamiltonCycle
from spectral_hamilton_clt.hamilton.closure import closure_history, lift_cycle
from spectral_hamilton_clt.utils.bigraph import (FNV_OFFSET, BipartiteGraph,
                                                 Part, Vertex, fnv1a_update,
                                                 iter_bits, popcount)
from spectral_hamilton_clt.utils.errors import SearchBudgetExceeded

logger = logging.getLogger(__name__)


@dataclass
class SearchStats:
    """ Step counter and transcript digest of a search

    Attributes:
        steps: Number of path extensions tried.
        transcript: Running FNV-1a digest over the extensions in order.
        budget: Step cap; None means unbounded.
    """
    steps: int = 0
    transcript: int = field(default=FNV_OFFSET)
    budget: Optional[int] = None

    def record(self, vertex: Vertex):
        self.steps += 1
        code = vertex.index * 2 + (vertex.part is Part.Y)
        self.transcript = fnv1a_update(self.transcript,
                                       code.to_bytes(2, "little"))
        if self.budget is not None and self.steps > self.budget:
            raise SearchBudgetExceeded(f"Search gave up after {self.budget} "
                                       "steps.")

    def hexdigest(self) -> str:
        return(f"{self.transcript:016x}")


class _Search:
    """ State of one backtracking run over a balanced graph."""

    def __init__(self, G: BipartiteGraph, stats: SearchStats):
        self.n = G.n
        self.rows = G.rows
        self.cols = G.y_rows
        self.stats = stats
        self.full = (1 << self.n) - 1
        self.left_x = self.full & ~1
        self.left_y = self.full
        self.path: List[Vertex] = [Vertex(Part.X, 0)]

    def _feasible(self, cur: Vertex) -> bool:
        at_root = len(self.path) == 1
        ends_x = 1 | (1 << cur.index if cur.part is Part.X else 0)
        ends_y = 1 << cur.index if cur.part is Part.Y else 0
        avail_x = self.left_x | ends_x
        avail_y = self.left_y | ends_y

        # forced[v] counts unvisited vertices that must use an edge to v
        forced: Dict[Vertex, int] = {}
        for j in iter_bits(self.left_y):
            usable = self.cols[j] & avail_x
            count = popcount(usable)
            if count < 2:
                return(False)
            if count == 2:
                for i in iter_bits(usable):
                    key = Vertex(Part.X, i)
                    forced[key] = forced.get(key, 0) + 1
        for i in iter_bits(self.left_x):
            usable = self.rows[i] & avail_y
            count = popcount(usable)
            if count < 2:
                return(False)
            if count == 2:
                for j in iter_bits(usable):
                    key = Vertex(Part.Y, j)
                    forced[key] = forced.get(key, 0) + 1

        start = Vertex(Part.X, 0)
        for vertex, count in forced.items():
            if vertex == start and at_root:
                room = 2
            elif vertex == start or vertex == cur:
                room = 1
            else:
                room = 2
            if count > room:
                return(False)

        return(self._connected(cur, avail_x, avail_y))

    def _connected(self, cur: Vertex, alive_x: int, alive_y: int) -> bool:
        if cur.part is Part.X:
            front_x, front_y = 1 << cur.index, 0
        else:
            front_x, front_y = 0, 1 << cur.index
        seen_x, seen_y = front_x, front_y
        while front_x or front_y:
            reach_y = 0
            for i in iter_bits(front_x):
                reach_y |= self.rows[i]
            reach_x = 0
            for j in iter_bits(front_y):
                reach_x |= self.cols[j]
            front_y = reach_y & alive_y & ~seen_y
            front_x = reach_x & alive_x & ~seen_x
            seen_x |= front_x
            seen_y |= front_y
        return(seen_x & alive_x == alive_x and seen_y & alive_y == alive_y)

    def run(self) -> bool:
        cur = self.path[-1]
        if not (self.left_x or self.left_y):
            return(cur.part is Part.Y and bool(self.cols[cur.index] & 1))
        if not self._feasible(cur):
            return(False)

        if cur.part is Part.X:
            candidates = self.rows[cur.index] & self.left_y
        else:
            candidates = self.cols[cur.index] & self.left_x
        nxt_part = cur.part.other()

        for k in iter_bits(candidates):
            nxt = Vertex(nxt_part, k)
            self.stats.record(nxt)
            bit = 1 << k
            if nxt_part is Part.X:
                self.left_x &= ~bit
            else:
                self.left_y &= ~bit
            self.path.append(nxt)
            if self.run():
                return(True)
            self.path.pop()
            if nxt_part is Part.X:
                self.left_x |= bit
            else:
                self.left_y |= bit
        return(False)


def _search(G: BipartiteGraph, stats: SearchStats) -> Optional[HamiltonCycle]:
    if G.n < 2 or G.min_degree() < 2:
        return(None)
    state = _Search(G, stats)
    if state.run():
        return(HamiltonCycle(tuple(state.path)).normalized())
    return(None)


def find_hamilton_cycle(G: BipartiteGraph, closure_first: bool = False,
                        budget: Optional[int] = None,
                        stats: Optional[SearchStats] = None
                        ) -> Optional[HamiltonCycle]:
    """ Search for a Hamilton cycle of a balanced bipartite graph

    Args:
        G: Balanced graph; for n < 2 there is never a cycle.
        closure_first: Search the bipartite closure instead and lift the cycle
            found there back to G through the closure's edge history.
        budget: Step cap; exceeding it raises SearchBudgetExceeded.
        stats: Optional SearchStats to fill in; a fresh one is used otherwise.

    Returns:
        A normalized HamiltonCycle of G, or None when G has none.
    """
    if stats is None:
        stats = SearchStats()
    stats.budget = budget

    if not closure_first:
        cycle = _search(G, stats)
    else:
        H, history = closure_history(G)
        logger.debug("Searching the closure (%d added edges)", len(history))
        cycle = _search(H, stats)
        if cycle is not None:
            cycle = lift_cycle(H, history, cycle)

    logger.debug("Hamilton search: %s after %d steps",
                 "found" if cycle else "none", stats.steps)
    return(cycle)
