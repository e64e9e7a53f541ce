""" Bipartite graph data model and graph-family constructors

This module provides the bipartite graph representation every other module
works on, together with constructors for the complete bipartite graphs and the
extremal family G_{n,n}. Adjacency is stored as one bit set per X-vertex over
the Y-indices; the Y-side view is derived on demand and cached.

    Typical usage example:
        G = extremal_gnn(16)
        H = delete_vertices(G, [u(1), u(2)])
"""

import enum
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, List, NamedTuple, Sequence, Tuple

import numpy as np

from spectral_hamilton_clt.utils import defaults
from spectral_hamilton_clt.utils.errors import DomainError, UsageError

# FNV-1a parameters (64-bit)
FNV_OFFSET = 0xcbf29ce484222325
FNV_PRIME = 0x100000001b3
MASK64 = (1 << 64) - 1


class Part(enum.Enum):
    """ Side of the bipartition a vertex belongs to."""
    X = "X"
    Y = "Y"

    def other(self) -> "Part":
        return(Part.Y if self is Part.X else Part.X)


class Vertex(NamedTuple):
    """ Positional vertex identifier: a part and a 0-based index within it."""
    part: Part
    index: int

    def __str__(self) -> str:
        prefix = "u" if self.part is Part.X else "v"
        return(f"{prefix}{self.index + 1}")


def u(i: int) -> Vertex:
    """ X-vertex with the 1-based label u_i."""
    return(Vertex(Part.X, i - 1))


def v(j: int) -> Vertex:
    """ Y-vertex with the 1-based label v_j."""
    return(Vertex(Part.Y, j - 1))


### ------------------------- Bit helpers ---------------------------- ###

def popcount(mask: int) -> int:
    return(bin(mask).count("1"))


def iter_bits(mask: int) -> Iterator[int]:
    """ Yield the indices of the set bits of mask in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def fnv1a_update(digest: int, data: bytes) -> int:
    """ Fold bytes into a running 64-bit FNV-1a digest."""
    for byte in data:
        digest ^= byte
        digest = (digest * FNV_PRIME) & MASK64
    return(digest)


### ------------------------- Graph model ---------------------------- ###

@dataclass(frozen=True)
class BipartiteGraph:
    """ Immutable bipartite graph with explicit parts X and Y

    Attributes:
        nx: Size of part X.
        ny: Size of part Y.
        rows: For each X-vertex, the bit set of adjacent Y-indices.
    """
    nx: int
    ny: int
    rows: Tuple[int, ...]

    def __post_init__(self):
        if self.nx < 0 or self.ny < 0:
            raise UsageError("Part sizes must be non-negative.")
        if len(self.rows) != self.nx:
            raise UsageError(f"Expected {self.nx} adjacency rows, "
                             f"got {len(self.rows)}.")
        full = (1 << self.ny) - 1
        for row in self.rows:
            if row < 0 or row & ~full:
                raise UsageError("Adjacency row refers to a Y-index outside "
                                 f"0..{self.ny - 1}.")

    @classmethod
    def from_edges(cls, nx: int, ny: int,
                   edges: Iterable[Tuple[int, int]]) -> "BipartiteGraph":
        """ Build a graph from (x_index, y_index) pairs.

        Args:
            nx: Size of part X.
            ny: Size of part Y.
            edges: Pairs of 0-based X- and Y-indices.

        Returns:
            The bipartite graph with exactly those edges.
        """
        rows = [0] * nx
        for i, j in edges:
            if not (0 <= i < nx and 0 <= j < ny):
                raise UsageError(f"Edge ({i}, {j}) is outside a "
                                 f"{nx} x {ny} bipartite graph.")
            rows[i] |= 1 << j
        return(cls(nx, ny, tuple(rows)))

    @classmethod
    def from_biadjacency(cls, matrix) -> "BipartiteGraph":
        """ Build a graph from a 0/1 biadjacency matrix (rows index X)."""
        matrix = np.asarray(matrix)
        nx, ny = matrix.shape
        rows = tuple(sum(1 << int(j) for j in np.flatnonzero(matrix[i]))
                     for i in range(nx))
        return(cls(int(nx), int(ny), rows))

    ### ------------------------ Queries ----------------------------- ###

    @cached_property
    def y_rows(self) -> Tuple[int, ...]:
        """ For each Y-vertex, the bit set of adjacent X-indices."""
        cols = [0] * self.ny
        for i, row in enumerate(self.rows):
            for j in iter_bits(row):
                cols[j] |= 1 << i
        return(tuple(cols))

    def balanced(self) -> bool:
        return(self.nx == self.ny)

    @property
    def n(self) -> int:
        """ Common part size of a balanced graph (order is 2n)."""
        if not self.balanced():
            raise DomainError(f"Graph with parts {self.nx} and {self.ny} "
                              "is not balanced.")
        return(self.nx)

    def order(self) -> int:
        return(self.nx + self.ny)

    def edge_count(self) -> int:
        return(sum(popcount(row) for row in self.rows))

    def has_edge(self, i: int, j: int) -> bool:
        return(bool(self.rows[i] >> j & 1))

    def edges(self) -> Iterator[Tuple[int, int]]:
        """ Yield (x_index, y_index) pairs in row-major order."""
        for i, row in enumerate(self.rows):
            for j in iter_bits(row):
                yield (i, j)

    def vertices(self) -> Iterator[Vertex]:
        for i in range(self.nx):
            yield Vertex(Part.X, i)
        for j in range(self.ny):
            yield Vertex(Part.Y, j)

    def check_vertex(self, vertex: Vertex):
        """ Raise UsageError unless vertex names a vertex of this graph."""
        size = self.nx if vertex.part is Part.X else self.ny
        if not 0 <= vertex.index < size:
            raise UsageError(f"Vertex {vertex} is out of range for part "
                             f"{vertex.part.value} of size {size}.")

    def neighbor_mask(self, vertex: Vertex) -> int:
        """ Bit set of the neighbours of vertex, over the opposite part."""
        self.check_vertex(vertex)
        if vertex.part is Part.X:
            return(self.rows[vertex.index])
        return(self.y_rows[vertex.index])

    def neighbors(self, vertex: Vertex) -> List[Vertex]:
        other = vertex.part.other()
        return([Vertex(other, k) for k in iter_bits(self.neighbor_mask(vertex))])

    def degree(self, vertex: Vertex) -> int:
        return(popcount(self.neighbor_mask(vertex)))

    def x_degrees(self) -> List[int]:
        return([popcount(row) for row in self.rows])

    def y_degrees(self) -> List[int]:
        return([popcount(col) for col in self.y_rows])

    def min_degree(self) -> int:
        """ Minimum degree over both parts, 0 for the empty graph."""
        degrees = self.x_degrees() + self.y_degrees()
        return(min(degrees) if degrees else 0)

    def is_complete(self) -> bool:
        """ True for K_{m,n} with both parts non-empty."""
        if self.nx == 0 or self.ny == 0:
            return(False)
        full = (1 << self.ny) - 1
        return(all(row == full for row in self.rows))

    ### --------------------- Derived graphs ------------------------- ###

    def transpose(self) -> "BipartiteGraph":
        """ The same graph with the roles of X and Y swapped."""
        return(BipartiteGraph(self.ny, self.nx, self.y_rows))

    def with_edges(self, added: Iterable[Tuple[int, int]]) -> "BipartiteGraph":
        rows = list(self.rows)
        for i, j in added:
            if not (0 <= i < self.nx and 0 <= j < self.ny):
                raise UsageError(f"Edge ({i}, {j}) is out of range.")
            rows[i] |= 1 << j
        return(BipartiteGraph(self.nx, self.ny, tuple(rows)))

    def without_edges(self, removed: Iterable[Tuple[int, int]]) -> "BipartiteGraph":
        rows = list(self.rows)
        for i, j in removed:
            if not (0 <= i < self.nx and 0 <= j < self.ny):
                raise UsageError(f"Edge ({i}, {j}) is out of range.")
            rows[i] &= ~(1 << j)
        return(BipartiteGraph(self.nx, self.ny, tuple(rows)))

    ### ---------------------- Matrix views -------------------------- ###

    def biadjacency(self) -> np.ndarray:
        """ nx-by-ny 0/1 matrix B with B[i, j] = 1 iff u_i ~ v_j."""
        matrix = np.zeros((self.nx, self.ny), dtype=float)
        for i, j in self.edges():
            matrix[i, j] = 1.0
        return(matrix)

    def adjacency(self) -> np.ndarray:
        """ Full symmetric adjacency matrix with X listed first."""
        size = self.nx + self.ny
        matrix = np.zeros((size, size), dtype=float)
        block = self.biadjacency()
        matrix[:self.nx, self.nx:] = block
        matrix[self.nx:, :self.nx] = block.T
        return(matrix)

    def mask(self) -> int:
        """ Biadjacency bitmask with bit i*ny + j set iff u_i ~ v_j."""
        total = 0
        for i, row in enumerate(self.rows):
            total |= row << (i * self.ny)
        return(total)

    def digest(self) -> str:
        """ 64-bit FNV-1a digest of (nx, ny, biadjacency bitmask) as hex."""
        n_bytes = (self.nx * self.ny + 7) // 8
        data = (self.nx.to_bytes(8, "little") + self.ny.to_bytes(8, "little")
                + self.mask().to_bytes(n_bytes, "little"))
        return(f"{fnv1a_update(FNV_OFFSET, data):016x}")


### ----------------------- Constructors ----------------------------- ###

def complete_bipartite(m: int, n: int) -> BipartiteGraph:
    """ Construct K_{m,n}.

    Args:
        m: Size of part X.
        n: Size of part Y.

    Returns:
        The complete bipartite graph; for m = 0 or n = 0 it is edgeless.
    """
    if m < 0 or n < 0:
        raise UsageError("Part sizes must be non-negative.")
    full = (1 << n) - 1
    return(BipartiteGraph(m, n, (full,) * m))


def extremal_gnn(n: int) -> BipartiteGraph:
    """ Construct the extremal graph G_{n,n}

    Starts from K_{n,n-3} on u_1..u_n and v_4..v_n and adds v_1, v_2, v_3,
    each joined to u_1, with v_i also joined to u_{i+1}. The result is a
    1-tough balanced graph of order 2n without a 2-factor.

    Args:
        n: Part size, at least 5.

    Returns:
        G_{n,n} with e = n(n-3) + 6.
    """
    if n < defaults.EXTREMAL_MIN_N:
        raise DomainError(f"G_{{n,n}} needs n >= {defaults.EXTREMAL_MIN_N}, "
                          f"got {n}.")
    core = ((1 << n) - 1) & ~0b111
    rows = [core] * n
    rows[0] |= 0b111
    for i in range(3):
        rows[i + 1] |= 1 << i
    return(BipartiteGraph(n, n, tuple(rows)))


def gnn_specials() -> Tuple[Vertex, Vertex, Vertex]:
    """ The three degree-2 vertices v_1, v_2, v_3 of G_{n,n}."""
    return((v(1), v(2), v(3)))


def delete_vertices(G: BipartiteGraph, S: Iterable[Vertex]) -> BipartiteGraph:
    """ Induced subgraph G - S

    Removes the vertices in S and re-indexes each part compactly, keeping the
    original relative order. G itself is untouched.

    Args:
        G: Host graph.
        S: Vertices to delete.

    Returns:
        The induced graph on V(G) - S.
    """
    drop_x = set()
    drop_y = set()
    for vertex in S:
        G.check_vertex(vertex)
        (drop_x if vertex.part is Part.X else drop_y).add(vertex.index)

    keep_x = [i for i in range(G.nx) if i not in drop_x]
    keep_y = [j for j in range(G.ny) if j not in drop_y]
    rows = []
    for i in keep_x:
        row = 0
        for new_j, j in enumerate(keep_y):
            if G.rows[i] >> j & 1:
                row |= 1 << new_j
        rows.append(row)
    return(BipartiteGraph(len(keep_x), len(keep_y), tuple(rows)))


def part_mask(vertices: Iterable[Vertex], part: Part) -> int:
    """ Bit set of the indices of vertices, all of which must lie in part."""
    mask = 0
    for vertex in vertices:
        if vertex.part is not part:
            raise UsageError(f"Vertex {vertex} is not in part {part.value}.")
        mask |= 1 << vertex.index
    return(mask)


def edges_between(G: BipartiteGraph, U: Iterable[Vertex],
                  W: Iterable[Vertex]) -> int:
    """ Count the edges with one end in U (inside X) and the other in W."""
    w_mask = part_mask(W, Part.Y)
    total = 0
    for vertex in U:
        if vertex.part is not Part.X:
            raise UsageError(f"Vertex {vertex} is not in part X.")
        G.check_vertex(vertex)
        total += popcount(G.rows[vertex.index] & w_mask)
    return(total)


def vertex_sequence(labels: Sequence[str]) -> List[Vertex]:
    """ Parse labels such as "u1", "v3" into vertices."""
    vertices = []
    for label in labels:
        prefix, index = label[0], label[1:]
        if prefix not in "uv" or not index.isdigit() or int(index) < 1:
            raise UsageError(f"Cannot parse vertex label {label!r}.")
        vertices.append(u(int(index)) if prefix == "u" else v(int(index)))
    return(vertices)
