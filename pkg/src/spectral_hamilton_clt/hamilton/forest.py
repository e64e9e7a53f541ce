""" Good linear forests and the path-threading constructions

Inside the shape where H[X + Y0] is complete and only a few low-degree
Y-vertices are left over, a Hamilton cycle exists as soon as those special
vertices can be covered by disjoint paths that start and end in X. The search
below finds such a path system; thread_paths turns any path system into a
Hamilton cycle of the host.

    Typical usage example:
        forest = find_good_linear_forest(H, [v(1), v(2), v(3)])
        if forest is not None:
            cycle = forest_to_hamilton(H, forest)
"""

import logging
from typing import Dict, List, Optional, Sequence, Tuple

from spectral_hamilton_clt.hamilton.certificates import (GoodLinearForest,
                                                         HamiltonCycle)
from spectral_hamilton_clt.hamilton.search import SearchStats
from spectral_hamilton_clt.utils.bigraph import (BipartiteGraph, Part, Vertex,
                                                 iter_bits, part_mask)
from spectral_hamilton_clt.utils.errors import PreconditionError, UsageError

logger = logging.getLogger(__name__)

Pair = Tuple[int, int]


### ------------------------- Forest search -------------------------- ###

def _pairs(mask: int) -> List[Pair]:
    bits = list(iter_bits(mask))
    return([(a, b) for k, a in enumerate(bits) for b in bits[k + 1:]])


def _has_cycle(chosen: Sequence[Pair]) -> bool:
    """ Union-find over X-indices; every special vertex is one edge a-b."""
    parent: Dict[int, int] = {}

    def find(a: int) -> int:
        while parent.get(a, a) != a:
            a = parent[a]
        return(a)

    for a, b in chosen:
        ra, rb = find(a), find(b)
        if ra == rb:
            return(True)
        parent[ra] = rb
    return(False)


def _assemble(special: Sequence[int],
              chosen: Sequence[Pair]) -> Tuple[Tuple[Vertex, ...], ...]:
    """ Turn the chosen neighbour pairs into oriented, ordered paths."""
    links: Dict[int, List[Tuple[int, int]]] = {}
    for y, (a, b) in zip(special, chosen):
        links.setdefault(a, []).append((y, b))
        links.setdefault(b, []).append((y, a))

    paths = []
    done = set()
    for start in sorted(x for x, nbrs in links.items() if len(nbrs) == 1):
        if start in done:
            continue
        path = [Vertex(Part.X, start)]
        prev_y, cur = None, start
        while True:
            step = [(y, x) for y, x in links[cur] if y != prev_y]
            if not step:
                break
            prev_y, cur = step[0]
            path.extend([Vertex(Part.Y, prev_y), Vertex(Part.X, cur)])
        done.add(start)
        done.add(cur)
        paths.append(tuple(path))
    return(tuple(paths))


def find_good_linear_forest(H: BipartiteGraph, special: Sequence[Vertex],
                            stats: Optional[SearchStats] = None
                            ) -> Optional[GoodLinearForest]:
    """ Exhaustive search for a good linear forest through three Y-vertices

    Each special vertex picks an unordered pair of X-neighbours as its two
    path-neighbours; choices are tried special by special in index order, and
    pairs in lexicographic order. A choice is kept while no X-vertex is used
    more than twice and no cycle closes. Paths are oriented from their smaller
    end-vertex and listed by that vertex.

    Args:
        H: Balanced host graph.
        special: Exactly three Y-vertices.
        stats: Optional step counter; its budget is honoured.

    Returns:
        The first forest in search order, or None.
    """
    n = H.n
    if len(special) != 3 or len(set(special)) != 3:
        raise UsageError("A good linear forest needs exactly three distinct "
                         "special vertices.")
    part_mask(special, Part.Y)
    for vertex in special:
        H.check_vertex(vertex)
    if stats is None:
        stats = SearchStats()

    ordered = sorted(s.index for s in special)
    options = [_pairs(H.y_rows[j]) for j in ordered]
    uses = [0] * n
    chosen: List[Pair] = []

    def extend(k: int) -> bool:
        if k == len(ordered):
            return(True)
        for a, b in options[k]:
            if uses[a] == 2 or uses[b] == 2:
                continue
            stats.record(Vertex(Part.Y, ordered[k]))
            chosen.append((a, b))
            if not _has_cycle(chosen):
                uses[a] += 1
                uses[b] += 1
                if extend(k + 1):
                    return(True)
                uses[a] -= 1
                uses[b] -= 1
            chosen.pop()
        return(False)

    if not extend(0):
        logger.debug("No good linear forest through %s",
                     [str(s) for s in special])
        return(None)

    special_sorted = tuple(Vertex(Part.Y, j) for j in ordered)
    forest = GoodLinearForest(_assemble(ordered, chosen), special_sorted)
    logger.debug("Good linear forest %s", forest)
    return(forest)


### ------------------------- Path threading ------------------------- ###

def thread_paths(H: BipartiteGraph, paths: Sequence[Sequence[Vertex]],
                 special: Sequence[Vertex]) -> HamiltonCycle:
    """ Close a system of X-ended paths into a Hamilton cycle of H

    The paths are laid out in the given order with the lowest unused
    non-special Y-vertex between consecutive paths. The remaining X-vertices
    are then swept in index order, alternating with the remaining non-special
    Y-vertices, and the walk returns to the first vertex.

    Args:
        H: Balanced host in which every X-vertex sees every non-special
            Y-vertex.
        paths: Disjoint alternating paths with both ends in X, covering the
            special vertices and no other Y-vertex.
        special: The Y-vertices carried by the paths.

    Returns:
        A Hamilton cycle of H that traverses each path as given.

    Raises:
        PreconditionError: The host is not complete outside the special set,
            the paths are malformed, or the counts do not close up.
    """
    n = H.n
    special_mask = part_mask(special, Part.Y)
    rest_mask = ((1 << n) - 1) & ~special_mask
    if any(row & rest_mask != rest_mask for row in H.rows):
        raise PreconditionError("The host is not complete between X and the "
                                "non-special Y-vertices.")

    used_x = set()
    used_y = set()
    for path in paths:
        if not path or path[0].part is not Part.X or path[-1].part is not Part.X:
            raise PreconditionError("Every path must start and end in X.")
        for vertex in path:
            H.check_vertex(vertex)
            if vertex.part is Part.X:
                used_x.add(vertex.index)
            else:
                used_y.add(vertex.index)
    if used_y != {s.index for s in special}:
        raise PreconditionError("The paths must carry exactly the special "
                                "vertices.")

    free_y = [j for j in iter_bits(rest_mask)]
    free_x = [i for i in range(n) if i not in used_x]
    order: List[Vertex] = []
    for k, path in enumerate(paths):
        if k:
            if not free_y:
                raise PreconditionError("Not enough connector vertices.")
            order.append(Vertex(Part.Y, free_y.pop(0)))
        order.extend(path)

    if len(free_y) != len(free_x) + 1:
        raise PreconditionError("The paths leave an unbalanced remainder.")
    for i in free_x:
        order.append(Vertex(Part.Y, free_y.pop(0)))
        order.append(Vertex(Part.X, i))
    order.append(Vertex(Part.Y, free_y.pop(0)))

    cycle = HamiltonCycle(tuple(order))
    if not cycle.verify(H):
        raise PreconditionError("The threaded walk is not a Hamilton cycle; "
                                "a path uses a missing edge.")
    return(cycle)


def forest_to_hamilton(H: BipartiteGraph,
                       F: GoodLinearForest) -> HamiltonCycle:
    """ Hamilton cycle of H built from a good linear forest

    Raises:
        PreconditionError: F is not a valid forest of H, or H is not complete
            outside the special set.
    """
    if not F.verify(H):
        raise PreconditionError("The forest is not a good linear forest of "
                                "the host.")
    return(thread_paths(H, F.paths, F.special))
