""" Shared fixtures"""

import logging

import pytest

from spectral_hamilton_clt.utils.bigraph import (BipartiteGraph,
                                                 complete_bipartite,
                                                 extremal_gnn)


@pytest.fixture(autouse=True)
def reset_package_logger():
    """ The CLI detaches the package logger from the root; undo it."""
    yield
    package = logging.getLogger("spectral_hamilton_clt")
    package.handlers[:] = []
    package.propagate = True
    package.setLevel(logging.NOTSET)


@pytest.fixture
def c6() -> BipartiteGraph:
    """ The 6-cycle u1 v1 u2 v2 u3 v3."""
    return(BipartiteGraph.from_edges(3, 3, [(0, 0), (1, 0), (1, 1), (2, 1),
                                            (2, 2), (0, 2)]))


@pytest.fixture
def p4() -> BipartiteGraph:
    """ The path u1 v1 u2 v2."""
    return(BipartiteGraph.from_edges(2, 2, [(0, 0), (1, 0), (1, 1)]))


@pytest.fixture
def k33() -> BipartiteGraph:
    return(complete_bipartite(3, 3))


@pytest.fixture
def gnn16() -> BipartiteGraph:
    return(extremal_gnn(16))
