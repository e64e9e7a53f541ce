""" Component counting and bipartite toughness

Bipartite toughness only removes vertices from one side: the minimum of
|S| / c(G - S) over proper subsets S of X (or of Y) with c(G - S) > 1. Both
searches below enumerate S by increasing size, X before Y, and inside a size
in lexicographic order, so witnesses are reproducible.

Pruning: while building S from increasing indices, every unchosen vertex below
the current index is permanent. Components of any completion are bounded by
the components of the graph without S and without every still-removable
vertex, plus the removable vertices of degree zero. Without degree-zero
vertices that bound never grows with the next chosen index, so a failing
branch ends its whole loop.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator, NamedTuple, Optional, Tuple

from spectral_hamilton_clt.utils import defaults
from spectral_hamilton_clt.utils.bigraph import (BipartiteGraph, Part, Vertex,
                                                 iter_bits, popcount)
from spectral_hamilton_clt.utils.errors import (DomainError,
                                                ResourceLimitError)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ToughnessWitness:
    """ A one-sided cut set with its component count

    Attributes:
        S: Removed vertices, all from one part, sorted by index.
        components: c(G - S).
        ratio: |S| / c(G - S) as an exact rational.
    """
    S: Tuple[Vertex, ...]
    components: int
    ratio: Fraction

    def verify(self, G: BipartiteGraph) -> bool:
        """ Re-derive the component count and the one-sidedness on G."""
        parts = {vertex.part for vertex in self.S}
        if len(parts) > 1:
            return(False)
        part = parts.pop() if parts else Part.X
        size = G.nx if part is Part.X else G.ny
        if len(set(self.S)) >= size and size > 0:
            return(False)
        count = count_components(G, self.S)
        return(count == self.components
               and self.ratio == Fraction(len(self.S), count))


class OneToughResult(NamedTuple):
    one_tough: bool
    witness: Optional[ToughnessWitness]


### ------------------------ Component counts ------------------------ ###

def _count(rows: Tuple[int, ...], cols: Tuple[int, ...],
           x_alive: int, y_alive: int) -> int:
    """ Components of the subgraph induced by the alive bit sets."""
    count = 0
    rest_x, rest_y = x_alive, y_alive
    while rest_x or rest_y:
        count += 1
        if rest_x:
            front_x, front_y = rest_x & -rest_x, 0
        else:
            front_x, front_y = 0, rest_y & -rest_y
        comp_x, comp_y = front_x, front_y
        while front_x or front_y:
            reach_y = 0
            for i in iter_bits(front_x):
                reach_y |= rows[i]
            reach_x = 0
            for j in iter_bits(front_y):
                reach_x |= cols[j]
            front_y = reach_y & y_alive & ~comp_y
            front_x = reach_x & x_alive & ~comp_x
            comp_x |= front_x
            comp_y |= front_y
        rest_x &= ~comp_x
        rest_y &= ~comp_y
    return(count)


def count_components(G: BipartiteGraph, S: Iterable[Vertex]) -> int:
    """ Number of components of G - S; isolated vertices count."""
    drop_x = drop_y = 0
    for vertex in S:
        G.check_vertex(vertex)
        if vertex.part is Part.X:
            drop_x |= 1 << vertex.index
        else:
            drop_y |= 1 << vertex.index
    x_alive = ((1 << G.nx) - 1) & ~drop_x
    y_alive = ((1 << G.ny) - 1) & ~drop_y
    return(_count(G.rows, G.y_rows, x_alive, y_alive))


### ------------------------ Subset search --------------------------- ###

def _side_sets(G: BipartiteGraph, k: int,
               keep: Callable[[int], bool]) -> Iterator[Tuple[int, int]]:
    """ Yield (S mask, c(G - S)) over k-subsets S of X in lexicographic order.

    Args:
        G: Graph whose X side is searched.
        k: Size of S.
        keep: Given an upper bound on c(G - S) for every completion of the
            current branch, decides whether the branch is worth expanding.
    """
    rows, cols = G.rows, G.y_rows
    full_x = (1 << G.nx) - 1
    full_y = (1 << G.ny) - 1
    isolated = sum(1 << i for i, row in enumerate(rows) if row == 0)

    def expand(start: int, chosen: int, size: int):
        if size == k:
            yield chosen, _count(rows, cols, full_x & ~chosen, full_y)
            return
        for i in range(start, G.nx - (k - size) + 1):
            picked = chosen | 1 << i
            below = (1 << (i + 1)) - 1
            permanent = full_x & below & ~picked
            removable = full_x & ~below
            bound = (_count(rows, cols, permanent, full_y)
                     + popcount(isolated & removable))
            if not keep(bound):
                if isolated:
                    continue
                break
            yield from expand(i + 1, picked, size + 1)

    yield from expand(0, 0, 0)


def _sides(G: BipartiteGraph, k: int):
    """ (part, graph seen from that part) pairs admitting a proper k-subset."""
    if k < G.nx:
        yield Part.X, G
    if 0 < k < G.ny:
        yield Part.Y, G.transpose()


def _witness(part: Part, mask: int, components: int) -> ToughnessWitness:
    S = tuple(Vertex(part, i) for i in iter_bits(mask))
    return(ToughnessWitness(S, components, Fraction(len(S), components)))


def _check_limit(G: BipartiteGraph, limit: int):
    if max(G.nx, G.ny) > limit:
        raise ResourceLimitError(f"Subset enumeration is limited to parts of "
                                 f"size {limit}; got {G.nx} and {G.ny}.")


def is_one_tough(G: BipartiteGraph,
                 limit: int = defaults.TOUGHNESS_PART_LIMIT) -> OneToughResult:
    """ Decide t^B(G) >= 1

    Complete bipartite graphs have no admissible S and are reported as
    1-tough. Otherwise a violation is a proper one-sided S with
    c(G - S) > max(|S|, 1); the first one in search order is returned.

    Args:
        G: Graph to test.
        limit: Largest part size the exponential search accepts.

    Returns:
        OneToughResult(one_tough, witness), with a witness only on failure.
    """
    if G.is_complete():
        return(OneToughResult(True, None))
    _check_limit(G, limit)

    for k in range(max(G.nx, G.ny)):
        need = max(k, 1)
        for part, side in _sides(G, k):
            for mask, components in _side_sets(side, k,
                                               lambda bound: bound > need):
                if components > need:
                    witness = _witness(part, mask, components)
                    logger.debug("1-toughness violated by %s",
                                 [str(x) for x in witness.S])
                    return(OneToughResult(False, witness))
    return(OneToughResult(True, None))


def bipartite_toughness(G: BipartiteGraph,
                        limit: int = defaults.TOUGHNESS_PART_LIMIT
                        ) -> ToughnessWitness:
    """ Compute t^B(G) with a witness achieving the minimum

    Ties are broken by smaller |S| first, then by the lexicographically
    smallest S with X-sets ordered before Y-sets.

    Args:
        G: A non-complete bipartite graph.
        limit: Largest part size the exponential search accepts.

    Returns:
        The minimising ToughnessWitness.

    Raises:
        DomainError: G is complete bipartite or has no admissible S.
    """
    if G.is_complete():
        raise DomainError("Bipartite toughness is undefined for complete "
                          "bipartite graphs.")
    _check_limit(G, limit)

    best: Optional[ToughnessWitness] = None

    def keep_for(k: int) -> Callable[[int], bool]:
        def keep(bound: int) -> bool:
            if bound <= 1:
                return(False)
            return(best is None or Fraction(k, bound) < best.ratio)
        return(keep)

    for k in range(max(G.nx, G.ny)):
        for part, side in _sides(G, k):
            for mask, components in _side_sets(side, k, keep_for(k)):
                if components <= 1:
                    continue
                ratio = Fraction(k, components)
                if best is None or ratio < best.ratio:
                    best = _witness(part, mask, components)

    if best is None:
        raise DomainError("No proper one-sided subset disconnects the graph; "
                          "bipartite toughness is undefined.")
    return(best)
