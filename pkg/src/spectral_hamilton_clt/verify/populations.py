""" Graph populations for the verification harness

Exhaustive enumeration of small labeled balanced graphs and two seeded random
generators. Randomness always comes from a Philox counter-based generator so a
seed fixes the output on every platform.
"""

import logging
from typing import Iterator, Optional

import numpy as np

from spectral_hamilton_clt.spectral import rho_gnn_exact, spectral_radius
from spectral_hamilton_clt.utils import defaults
from spectral_hamilton_clt.utils.bigraph import (BipartiteGraph,
                                                 complete_bipartite)
from spectral_hamilton_clt.utils.errors import (DomainError,
                                                ResourceLimitError, UsageError)

logger = logging.getLogger(__name__)


def make_rng(seed: int) -> np.random.Generator:
    """ Philox-backed generator for a 64-bit seed."""
    return(np.random.Generator(np.random.Philox(seed & (2**64 - 1))))


def sub_seed(seed: int, *keys: int) -> int:
    """ Independent 64-bit seed derived from a parent seed and task keys."""
    state = np.random.SeedSequence([seed & (2**64 - 1), *keys])
    return(int(state.generate_state(1, dtype=np.uint64)[0]))


def enumerate_balanced(n: int) -> Iterator[BipartiteGraph]:
    """ Yield every labeled balanced bipartite graph with parts of size n

    Graphs come in increasing order of their biadjacency bitmask, where bit
    i * n + j stands for the edge u_{i+1} v_{j+1}.

    Raises:
        ResourceLimitError: n is above the enumeration limit.
    """
    if n < 0:
        raise UsageError(f"Part size must be non-negative, got {n}.")
    if n > defaults.ENUMERATION_LIMIT:
        raise ResourceLimitError(f"Exhaustive enumeration stops at n = "
                                 f"{defaults.ENUMERATION_LIMIT} "
                                 f"(2^{n * n} graphs requested).")
    for mask in range(1 << (n * n)):
        yield balanced_from_mask(n, mask)


def balanced_from_mask(n: int, mask: int) -> BipartiteGraph:
    """ Inverse of BipartiteGraph.mask for balanced graphs."""
    full = (1 << n) - 1
    return(BipartiteGraph(n, n, tuple((mask >> (i * n)) & full
                                      for i in range(n))))


def sample_bipartite(n: int, p: float, seed: int) -> BipartiteGraph:
    """ Random balanced graph with independent edges of probability p."""
    if not 0 <= p <= 1:
        raise UsageError(f"Edge probability must lie in [0, 1], got {p}.")
    rng = make_rng(seed)
    draws = rng.random((n, n)) < p
    return(BipartiteGraph.from_biadjacency(draws))


def sample_near_extremal(n: int, seed: int,
                         removals: Optional[int] = None,
                         tol: float = defaults.DEFAULT_TOL) -> BipartiteGraph:
    """ Random graph inside the spectral hypothesis region

    Starts from K_{n,n} and deletes uniformly chosen edges one at a time. A
    deletion is kept only while the spectral radius stays at or above
    rho(G_{n,n}) and the minimum degree stays at least 2; an edge whose
    deletion was refused is never offered again, since both quantities only
    drop as edges go.

    Args:
        n: Part size, at least 5.
        seed: 64-bit seed.
        removals: Number of successful deletions to aim for; drawn from
            0..3n when omitted.
        tol: Power iteration tolerance.

    Returns:
        A balanced graph with rho >= rho(G_{n,n}).
    """
    if n < defaults.EXTREMAL_MIN_N:
        raise DomainError(f"Near-extremal sampling needs n >= "
                          f"{defaults.EXTREMAL_MIN_N}, got {n}.")
    rng = make_rng(seed)
    if removals is None:
        removals = int(rng.integers(0, 3 * n + 1))
    threshold = rho_gnn_exact(n)

    G = complete_bipartite(n, n)
    candidates = list(G.edges())
    done = 0
    while done < removals and candidates:
        edge = candidates.pop(int(rng.integers(len(candidates))))
        trial = G.without_edges([edge])
        if trial.min_degree() < 2:
            continue
        if spectral_radius(trial, tol).rho < threshold:
            continue
        G = trial
        done += 1

    logger.debug("Near-extremal sample n=%d: %d of %d removals", n, done,
                 removals)
    return(G)
