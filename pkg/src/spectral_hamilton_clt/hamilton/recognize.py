""" Structural recognition of the extremal graph G_{n,n}"""

from spectral_hamilton_clt.utils import defaults
from spectral_hamilton_clt.utils.bigraph import BipartiteGraph, popcount
from spectral_hamilton_clt.utils.errors import DomainError


def _matches_with_low_side_y(G: BipartiteGraph) -> bool:
    n = G.n
    cols = G.y_rows
    low = [j for j in range(n) if popcount(cols[j]) == 2]
    if len(low) != 3:
        return(False)

    masks = [cols[j] for j in low]
    common = masks[0] & masks[1] & masks[2]
    if popcount(common) != 1:
        return(False)
    seconds = [mask & ~common for mask in masks]
    if popcount(seconds[0] | seconds[1] | seconds[2]) != 3:
        return(False)

    rest = ((1 << n) - 1) & ~sum(1 << j for j in low)
    return(all(row & rest == rest for row in G.rows))


def recognize_gnn(G: BipartiteGraph) -> bool:
    """ Decide whether G is isomorphic to G_{n,n}, parts possibly swapped

    G_{n,n} is characterised by three degree-2 vertices in one part that
    share one neighbour, have pairwise distinct second neighbours, and whose
    removal leaves a complete bipartite graph.

    Raises:
        DomainError: G is unbalanced or n < 5.
    """
    n = G.n
    if n < defaults.EXTREMAL_MIN_N:
        raise DomainError(f"G_{{n,n}} is only defined for n >= "
                          f"{defaults.EXTREMAL_MIN_N}, got {n}.")
    return(_matches_with_low_side_y(G)
           or _matches_with_low_side_y(G.transpose()))
