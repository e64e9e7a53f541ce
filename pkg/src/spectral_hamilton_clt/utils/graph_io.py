""" Reading and writing graph documents

Provides the graph6 and edge-json codecs. graph6 goes through networkx: a
bipartite graph is flattened into a general graph on nx + ny vertices with X
first, and decoding recovers the bipartition by 2-colouring. edge-json is a
small JSON object {"nx", "ny", "edges"} that always carries its parts, and it
doubles as the sidecar format for certificates.
"""

import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple

import networkx as nx
from networkx.readwrite.graph6 import data_to_n

from spectral_hamilton_clt.utils import defaults
from spectral_hamilton_clt.utils.bigraph import (BipartiteGraph,
                                                 complete_bipartite,
                                                 extremal_gnn)
from spectral_hamilton_clt.utils.errors import (AmbiguousBipartitionError,
                                                GraphFormatError,
                                                NonBipartiteError,
                                                ResourceLimitError,
                                                UsageError)

logger = logging.getLogger(__name__)

FORMATS = ("graph6", "edge-json")
GRAPH6_HEADER = b">>graph6<<"
GRAPH6_SUFFIXES = {".g6", ".graph6"}
JSON_SUFFIXES = {".json"}

# (X node ids, Y node ids) over the graph6 vertex numbering
DeclaredParts = Tuple[Sequence[int], Sequence[int]]


@dataclass(frozen=True)
class GraphDocument:
    """ A serialized graph

    Attributes:
        format: Either "graph6" or "edge-json".
        payload: Raw document bytes.
        declared_parts: Optional explicit bipartition for graph6 payloads.
    """
    format: str
    payload: bytes
    declared_parts: Optional[DeclaredParts] = None

    def __post_init__(self):
        if self.format not in FORMATS:
            raise UsageError(f"Unknown graph format {self.format!r}; choose "
                             f"from {', '.join(FORMATS)}.")


### ---------------------------- Decoding ---------------------------- ###

def load_graph(doc: GraphDocument,
               limit: int = defaults.PART_SIZE_LIMIT) -> BipartiteGraph:
    """ Decode a graph document into a bipartite graph

    For edge-json the parts are taken verbatim. For graph6 the bipartition is
    the declared one when supplied; otherwise it is recovered by 2-colouring,
    which is only accepted for connected graphs on at least two vertices so
    the answer is unique. X is then the colour class of vertex 0, which is
    how dump_graph lays the parts out.

    Args:
        doc: Document to decode.
        limit: Largest accepted part size.

    Returns:
        The decoded graph.

    Raises:
        GraphFormatError: Malformed payload or invalid declared parts.
        NonBipartiteError: The graph6 graph has an odd cycle.
        AmbiguousBipartitionError: Disconnected or single-vertex graph6
            without declared parts.
        ResourceLimitError: A part is larger than limit.
    """
    if doc.format == "edge-json":
        graph = _decode_edge_json(doc.payload, limit)
    else:
        graph = _decode_graph6(doc.payload, doc.declared_parts, limit)

    _check_parts(graph.nx, graph.ny, limit)
    return(graph)


def _check_parts(n_x: int, n_y: int, limit: int):
    if n_x > limit or n_y > limit:
        raise ResourceLimitError(f"Parts of size {n_x} and {n_y} exceed the "
                                 f"part-size limit of {limit}.")


def _decode_edge_json(payload: bytes, limit: int) -> BipartiteGraph:
    try:
        obj = json.loads(payload.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as err:
        raise GraphFormatError(f"Cannot parse edge-json: {err}") from err

    if not isinstance(obj, dict) or not {"nx", "ny", "edges"} <= obj.keys():
        raise GraphFormatError("edge-json needs the fields nx, ny and edges.")

    n_x, n_y, edges = obj["nx"], obj["ny"], obj["edges"]
    if not (_is_count(n_x) and _is_count(n_y)) or not isinstance(edges, list):
        raise GraphFormatError("edge-json fields have the wrong types.")
    _check_parts(n_x, n_y, limit)

    pairs = []
    for edge in edges:
        if (not isinstance(edge, list) or len(edge) != 2
                or not all(_is_count(k) for k in edge)):
            raise GraphFormatError(f"Malformed edge entry {edge!r}.")
        if edge[0] >= n_x or edge[1] >= n_y:
            raise GraphFormatError(f"Edge {edge!r} is out of range for "
                                   f"parts {n_x} and {n_y}.")
        pairs.append((edge[0], edge[1]))
    return(BipartiteGraph.from_edges(n_x, n_y, pairs))


def _is_count(value: Any) -> bool:
    return(isinstance(value, int) and not isinstance(value, bool)
           and value >= 0)


def _graph6_order(text: bytes) -> int:
    """ Vertex count from the graph6 size header, without decoding edges."""
    if text.startswith(GRAPH6_HEADER):
        text = text[len(GRAPH6_HEADER):]
    try:
        order, _ = data_to_n([byte - 63 for byte in text])
    except (IndexError, ValueError) as err:
        raise GraphFormatError(f"Cannot parse graph6 header: {err}") from err
    return(order)


def _decode_graph6(payload: bytes, declared_parts: Optional[DeclaredParts],
                   limit: int) -> BipartiteGraph:
    text = payload.strip()
    order = _graph6_order(text)
    if order > 2 * limit:
        raise ResourceLimitError(f"graph6 graph on {order} vertices exceeds "
                                 f"the part-size limit of {limit}.")
    try:
        graph = nx.from_graph6_bytes(text)
    except (nx.NetworkXError, ValueError, IndexError) as err:
        raise GraphFormatError(f"Cannot parse graph6: {err}") from err

    if not nx.is_bipartite(graph):
        raise NonBipartiteError("The graph6 graph contains an odd cycle.")

    total = graph.number_of_nodes()
    if declared_parts is not None:
        x_nodes, y_nodes = list(declared_parts[0]), list(declared_parts[1])
        if sorted(x_nodes + y_nodes) != list(range(total)):
            raise GraphFormatError("Declared parts do not cover the "
                                   f"{total} graph6 vertices exactly once.")
        side = {node: 0 for node in x_nodes}
        side.update({node: 1 for node in y_nodes})
        if any(side[a] == side[b] for a, b in graph.edges()):
            raise GraphFormatError("An edge joins two vertices of the same "
                                   "declared part.")
    elif total == 0:
        return(BipartiteGraph(0, 0, ()))
    else:
        # a lone vertex fits either part
        if total == 1 or not nx.is_connected(graph):
            raise AmbiguousBipartitionError(
                "The graph6 graph is disconnected or a single vertex; supply "
                "the parts explicitly to fix the bipartition.")
        coloring = nx.bipartite.color(graph)
        # encoding writes X first, so X is the class of vertex 0
        x_color = coloring[0]
        x_nodes = sorted(k for k in graph if coloring[k] == x_color)
        y_nodes = sorted(k for k in graph if coloring[k] != x_color)

    x_pos = {node: i for i, node in enumerate(x_nodes)}
    y_pos = {node: j for j, node in enumerate(y_nodes)}
    pairs = []
    for a, b in graph.edges():
        if a in y_pos:
            a, b = b, a
        pairs.append((x_pos[a], y_pos[b]))
    return(BipartiteGraph.from_edges(len(x_nodes), len(y_nodes), pairs))


### ---------------------------- Encoding ---------------------------- ###

def to_networkx(G: BipartiteGraph) -> nx.Graph:
    """ Flatten G into a networkx graph on 0..nx+ny-1 with X first.

    Nodes carry a "bipartite" attribute (0 for X, 1 for Y).
    """
    graph = nx.Graph()
    graph.add_nodes_from(range(G.nx), bipartite=0)
    graph.add_nodes_from(range(G.nx, G.nx + G.ny), bipartite=1)
    graph.add_edges_from((i, G.nx + j) for i, j in G.edges())
    return(graph)


def edge_json_object(G: BipartiteGraph) -> Dict[str, Any]:
    return({"nx": G.nx, "ny": G.ny, "edges": [[i, j] for i, j in G.edges()]})


def dump_graph(G: BipartiteGraph, fmt: str) -> GraphDocument:
    """ Encode G as a graph document in the requested format."""
    if fmt == "graph6":
        payload = nx.to_graph6_bytes(to_networkx(G), header=False)
        return(GraphDocument("graph6", payload))
    if fmt == "edge-json":
        payload = (json.dumps(edge_json_object(G)) + "\n").encode("utf-8")
        return(GraphDocument("edge-json", payload))
    raise UsageError(f"Unknown graph format {fmt!r}.")


def certificate_document(G: BipartiteGraph, kind: str,
                         witness: List[Any]) -> GraphDocument:
    """ edge-json sidecar carrying a certificate next to its host graph

    Args:
        G: Host graph.
        kind: "cycle", "two_factor" or "forest".
        witness: JSON-ready witness (vertex pairs, edge pairs or paths).
    """
    obj = edge_json_object(G)
    obj["certificate"] = kind
    obj["witness"] = witness
    return(GraphDocument("edge-json",
                         (json.dumps(obj) + "\n").encode("utf-8")))


### ---------------------------- Files ------------------------------- ###

def detect_format(payload: bytes, path: Optional[str] = None) -> str:
    """ Guess the format from a file suffix, falling back to the content."""
    if path is not None:
        suffix = Path(path).suffix.lower()
        if suffix in GRAPH6_SUFFIXES:
            return("graph6")
        if suffix in JSON_SUFFIXES:
            return("edge-json")
    return("edge-json" if payload.lstrip().startswith(b"{") else "graph6")


def read_graph_file(path: str, fmt: Optional[str] = None,
                    limit: int = defaults.PART_SIZE_LIMIT) -> BipartiteGraph:
    """ Read a single graph from a file path."""
    try:
        payload = Path(path).read_bytes()
    except OSError as err:
        raise UsageError(f"Cannot read {path}: {err}") from err
    fmt = fmt or detect_format(payload, path)
    logger.debug("Reading %s as %s", path, fmt)
    return(load_graph(GraphDocument(fmt, payload), limit=limit))


def iter_graph6_lines(payload: bytes) -> Iterator[Tuple[int, bytes]]:
    """ Yield (line number, graph6 line) for every non-blank line."""
    for number, line in enumerate(payload.splitlines(), start=1):
        line = line.strip()
        if line:
            yield number, line


### ------------------------- Input sources -------------------------- ###

CONSTRUCTIONS = ("gnn", "complete")


def construct(spec: str) -> BipartiteGraph:
    """ Build a graph from an inline spec: gnn:<n> or complete:<m>,<n>."""
    family, sep, params = spec.partition(":")
    try:
        if family == "gnn" and sep:
            return(extremal_gnn(int(params)))
        if family == "complete" and sep:
            m, n = params.split(",")
            return(complete_bipartite(int(m), int(n)))
    except ValueError as err:
        raise UsageError(f"Cannot parse construction {spec!r}: {err}") from err
    raise UsageError(f"Unknown construction {spec!r}; use gnn:<n> or "
                     "complete:<m>,<n>.")


def read_source_bytes(source: str) -> bytes:
    """ Raw bytes of a file path, or of standard input for "-"."""
    if source == "-":
        stream = getattr(sys.stdin, "buffer", sys.stdin)
        data = stream.read()
        return(data.encode("utf-8") if isinstance(data, str) else data)
    try:
        return(Path(source).read_bytes())
    except OSError as err:
        raise UsageError(f"Cannot read {source}: {err}") from err


def read_graph_source(source: str, fmt: Optional[str] = None,
                      limit: int = defaults.PART_SIZE_LIMIT) -> BipartiteGraph:
    """ Resolve an --input value: inline construction, "-" or a file path."""
    if source.partition(":")[0] in CONSTRUCTIONS and ":" in source:
        graph = construct(source)
        if max(graph.nx, graph.ny) > limit:
            raise ResourceLimitError(f"{source} exceeds the part-size limit "
                                     f"of {limit}.")
        return(graph)
    payload = read_source_bytes(source)
    fmt = fmt or detect_format(payload, None if source == "-" else source)
    logger.debug("Reading %s as %s", source, fmt)
    return(load_graph(GraphDocument(fmt, payload), limit=limit))
