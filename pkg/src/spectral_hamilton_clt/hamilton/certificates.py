""" Self-checking Hamiltonicity certificates

Each certificate can re-verify itself against a host graph and render itself
as the JSON witness stored in the edge-json sidecar.
"""

from dataclasses import dataclass
from typing import Any, List, Tuple

from spectral_hamilton_clt.utils.bigraph import BipartiteGraph, Part, Vertex

Edge = Tuple[int, int]


def _adjacent(G: BipartiteGraph, a: Vertex, b: Vertex) -> bool:
    if a.part is b.part:
        return(False)
    x, y = (a, b) if a.part is Part.X else (b, a)
    return(G.has_edge(x.index, y.index))


def _in_range(G: BipartiteGraph, vertex: Vertex) -> bool:
    size = G.nx if vertex.part is Part.X else G.ny
    return(0 <= vertex.index < size)


def vertex_json(vertex: Vertex) -> List[Any]:
    return([vertex.part.value, vertex.index])


@dataclass(frozen=True)
class HamiltonCycle:
    """ Alternating vertex sequence u, v, u, v, ... closing back to its start."""
    order: Tuple[Vertex, ...]

    kind = "cycle"

    def verify(self, G: BipartiteGraph) -> bool:
        if not G.balanced() or G.n < 2 or len(self.order) != 2 * G.n:
            return(False)
        if not all(_in_range(G, vertex) for vertex in self.order):
            return(False)
        if len(set(self.order)) != len(self.order):
            return(False)
        size = len(self.order)
        return(all(_adjacent(G, self.order[k], self.order[(k + 1) % size])
                   for k in range(size)))

    def edges(self) -> List[Edge]:
        size = len(self.order)
        pairs = []
        for k in range(size):
            a, b = self.order[k], self.order[(k + 1) % size]
            x, y = (a, b) if a.part is Part.X else (b, a)
            pairs.append((x.index, y.index))
        return(sorted(pairs))

    def normalized(self) -> "HamiltonCycle":
        """ Rotate to start at u_1 and run towards its smaller Y-neighbour."""
        start = self.order.index(Vertex(Part.X, 0))
        forward = self.order[start:] + self.order[:start]
        backward = (forward[0],) + tuple(reversed(forward[1:]))
        return(HamiltonCycle(min(forward, backward,
                                 key=lambda seq: seq[1].index)))

    def witness(self) -> List[Any]:
        return([vertex_json(vertex) for vertex in self.order])

    def __str__(self) -> str:
        return("".join(str(vertex) for vertex in self.order)
               + str(self.order[0]))


@dataclass(frozen=True)
class TwoFactor:
    """ Spanning edge subset in which every vertex has degree exactly 2."""
    edges: Tuple[Edge, ...]

    kind = "two_factor"

    def verify(self, G: BipartiteGraph) -> bool:
        if len(set(self.edges)) != len(self.edges):
            return(False)
        x_deg = [0] * G.nx
        y_deg = [0] * G.ny
        for i, j in self.edges:
            if not (0 <= i < G.nx and 0 <= j < G.ny) or not G.has_edge(i, j):
                return(False)
            x_deg[i] += 1
            y_deg[j] += 1
        return(all(d == 2 for d in x_deg + y_deg))

    def witness(self) -> List[Any]:
        return([[i, j] for i, j in self.edges])


@dataclass(frozen=True)
class GoodLinearForest:
    """ Vertex-disjoint paths with X end-vertices through the special Y-set

    Attributes:
        paths: The paths, each an alternating vertex sequence X, Y, ..., X.
        special: The three designated low-degree Y-vertices; together the
            paths pass through all of them and through no other Y-vertex.
    """
    paths: Tuple[Tuple[Vertex, ...], ...]
    special: Tuple[Vertex, ...]

    kind = "forest"

    def verify(self, G: BipartiteGraph) -> bool:
        if len(self.special) != 3 or not 1 <= len(self.paths) <= 3:
            return(False)
        if any(s.part is not Part.Y for s in self.special):
            return(False)
        seen = set()
        used_y = set()
        for path in self.paths:
            if len(path) < 3 or len(path) % 2 == 0:
                return(False)
            if path[0].part is not Part.X or path[-1].part is not Part.X:
                return(False)
            for k, vertex in enumerate(path):
                if not _in_range(G, vertex) or vertex in seen:
                    return(False)
                seen.add(vertex)
                if vertex.part is Part.Y:
                    used_y.add(vertex)
                if k and not _adjacent(G, path[k - 1], vertex):
                    return(False)
        return(used_y == set(self.special))

    def witness(self) -> List[Any]:
        return([[vertex_json(vertex) for vertex in path]
                for path in self.paths])

    def __str__(self) -> str:
        return(" + ".join("".join(str(x) for x in path)
                          for path in self.paths))
