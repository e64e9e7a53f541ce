""" 2-factor detection as an integral flow problem

A balanced bipartite graph has a 2-factor exactly when the network
source -> x (capacity 2), x -> y (capacity 1 per edge), y -> sink (capacity 2)
carries a flow of 2n.
"""

import logging
from typing import Optional

import networkx as nx

from spectral_hamilton_clt.hamilton.certificates import TwoFactor
from spectral_hamilton_clt.utils.bigraph import BipartiteGraph

logger = logging.getLogger(__name__)

SOURCE = "source"
SINK = "sink"


def _flow_network(G: BipartiteGraph) -> nx.DiGraph:
    network = nx.DiGraph()
    network.add_node(SOURCE)
    network.add_node(SINK)
    for i in range(G.nx):
        network.add_edge(SOURCE, ("x", i), capacity=2)
    for j in range(G.ny):
        network.add_edge(("y", j), SINK, capacity=2)
    for i, j in G.edges():
        network.add_edge(("x", i), ("y", j), capacity=1)
    return(network)


def find_two_factor(G: BipartiteGraph) -> Optional[TwoFactor]:
    """ Find a 2-factor of a balanced graph via maximum flow

    The factor need not be connected.

    Returns:
        A TwoFactor with edges sorted as (x_index, y_index), or None.
    """
    n = G.n
    if n < 2:
        return(None)
    value, flow = nx.maximum_flow(_flow_network(G), SOURCE, SINK)
    logger.debug("2-factor flow %s of %d", value, 2 * n)
    if value < 2 * n:
        return(None)
    edges = tuple(sorted((i, j) for i, j in G.edges()
                         if flow[("x", i)][("y", j)] > 0))
    return(TwoFactor(edges))
