""" Replay of the Hamiltonicity argument on a concrete graph

proof_trace closes the graph, then walks the case analysis of the argument
on the closure H: the edge threshold, the high-degree classes X0 and Y0 with
sizes s and t, the degree and size bounds they satisfy, and the split on
(t, s). Each branch either builds a Hamilton cycle explicitly, evaluates an
edge bound that rules the branch out, or identifies G_{n,n}. Every recorded
inequality is computed from H, so a trace can be checked line by line.

When a step's hypothesis fails on the concrete graph (small n, or a graph
outside the theorem's hypotheses) the trace records where and falls back to
a direct search, so its verdict still agrees with verify_main_theorem.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from spectral_hamilton_clt.hamilton.certificates import HamiltonCycle
from spectral_hamilton_clt.hamilton.closure import closure_history, lift_cycle
from spectral_hamilton_clt.hamilton.forest import (find_good_linear_forest,
                                                   forest_to_hamilton)
from spectral_hamilton_clt.hamilton.recognize import recognize_gnn
from spectral_hamilton_clt.hamilton.search import (SearchStats,
                                                   find_hamilton_cycle)
from spectral_hamilton_clt.utils import defaults
from spectral_hamilton_clt.utils.bigraph import (BipartiteGraph, Part, Vertex,
                                                 iter_bits)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TraceStep:
    name: str
    holds: bool
    detail: str


@dataclass(frozen=True)
class HamiltonCycleFound:
    """ A Hamilton cycle of the input graph and how it was obtained."""
    certificate: HamiltonCycle
    via: str

    name = "HamiltonCycleFound"


@dataclass(frozen=True)
class IsGnn:
    name = "IsGnn"


@dataclass(frozen=True)
class InfeasibleCase:
    """ The replay stopped at a step whose hypothesis the graph breaks."""
    step: str
    detail: str

    name = "InfeasibleCase"


TraceVerdict = Union[HamiltonCycleFound, IsGnn, InfeasibleCase]


@dataclass
class ProofTrace:
    """ Structured replay of the case analysis

    Attributes:
        n: Part size.
        edge_count: e(H) for the closure H.
        threshold_pass: Whether e(H) > n(n - 3).
        X0: X-vertices of H with degree at least (n + 1) / 2.
        Y0: Y-vertices of H with degree at least (n + 1) / 2.
        s: |X0|.
        t: |Y0|.
        transposed: Parts were swapped to get s >= t for the case split.
        outside_range: n is below the range the theorem covers.
        case_path: Steps in the order they fired.
        verdict: Final outcome.
    """
    n: int
    edge_count: int
    threshold_pass: bool
    X0: Tuple[Vertex, ...]
    Y0: Tuple[Vertex, ...]
    s: int
    t: int
    transposed: bool = False
    outside_range: bool = False
    case_path: List[TraceStep] = field(default_factory=list)
    verdict: Optional[TraceVerdict] = None

    def to_dict(self) -> Dict[str, Any]:
        verdict: Dict[str, Any] = {"kind": self.verdict.name}
        if isinstance(self.verdict, HamiltonCycleFound):
            verdict["via"] = self.verdict.via
            verdict["certificate"] = self.verdict.certificate.witness()
        elif isinstance(self.verdict, InfeasibleCase):
            verdict["step"] = self.verdict.step
            verdict["detail"] = self.verdict.detail
        return({
            "n": self.n,
            "edge_count": self.edge_count,
            "threshold_pass": self.threshold_pass,
            "X0": [str(x) for x in self.X0],
            "Y0": [str(y) for y in self.Y0],
            "s": self.s,
            "t": self.t,
            "transposed": self.transposed,
            "outside_range": self.outside_range,
            "case_path": [{"step": step.name, "holds": step.holds,
                           "detail": step.detail} for step in self.case_path],
            "verdict": verdict,
        })


def _high(degree: int, n: int) -> bool:
    return(2 * degree >= n + 1)


def _swap(vertex: Vertex) -> Vertex:
    return(Vertex(vertex.part.other(), vertex.index))


class _Tracer:
    """ Walks the case analysis for one graph and its closure."""

    def __init__(self, G: BipartiteGraph, budget: Optional[int]):
        self.G = G
        self.budget = budget
        self.H, self.history = closure_history(G)
        n = G.n
        H = self.H
        e = H.edge_count()
        self.trace = ProofTrace(
            n=n, edge_count=e, threshold_pass=e > n * (n - 3),
            X0=tuple(Vertex(Part.X, i) for i, d in enumerate(H.x_degrees())
                     if _high(d, n)),
            Y0=tuple(Vertex(Part.Y, j) for j, d in enumerate(H.y_degrees())
                     if _high(d, n)),
            s=0, t=0, outside_range=n < defaults.THEOREM_MIN_N)
        self.trace.s = len(self.trace.X0)
        self.trace.t = len(self.trace.Y0)
        self.work = H

    def step(self, name: str, holds: bool, detail: str) -> bool:
        self.trace.case_path.append(TraceStep(name, bool(holds), detail))
        logger.debug("trace %s: %s (%s)", name, holds, detail)
        return(bool(holds))

    ### ---------------------------- Outcomes ------------------------ ###

    def found(self, cycle: HamiltonCycle, via: str) -> HamiltonCycleFound:
        """ Map a cycle of the working graph back to H, then lift it to G."""
        if self.trace.transposed:
            cycle = HamiltonCycle(tuple(_swap(x) for x in cycle.order))
        cycle = lift_cycle(self.H, self.history, cycle.normalized())
        return(HamiltonCycleFound(cycle, via))

    def fallback(self, name: str, detail: str) -> TraceVerdict:
        stats = SearchStats()
        cycle = find_hamilton_cycle(self.G, budget=self.budget, stats=stats)
        self.step("direct search", cycle is not None,
                  f"after {name}: {stats.steps} steps")
        if cycle is not None:
            return(HamiltonCycleFound(cycle, "direct search"))
        if self.trace.n >= defaults.EXTREMAL_MIN_N and recognize_gnn(self.G):
            return(IsGnn())
        return(InfeasibleCase(name, detail))

    def edge_bound(self, name: str, bound: int) -> TraceVerdict:
        """ Record e(H) against the edge bound of a ruled-out case

        The bound is at most n(n-3) from n = 12 on, where the edge threshold
        already excludes the case. Below that the graph is searched directly.
        """
        n = self.trace.n
        e = self.trace.edge_count
        floor = n * (n - 3)
        self.step(name, e <= bound,
                  f"e(H) = {e} <= {bound}; n(n-3) = {floor}")
        if bound <= floor:
            detail = f"e(H) > n(n-3) >= {bound} rules the case out"
        else:
            detail = f"bound {bound} exceeds n(n-3) = {floor}"
        return(self.fallback(name, detail))

    ### ---------------------------- Branches ------------------------ ###

    def run(self) -> TraceVerdict:
        tr = self.trace
        n = tr.n
        self.step("closure", True, f"{len(self.history)} edges added")
        if not self.step("edge threshold", tr.threshold_pass,
                         f"e(H) = {tr.edge_count} > n(n-3) = {n * (n - 3)}"):
            return(self.fallback("edge threshold", "e(H) <= n(n-3)"))

        s, t = tr.s, tr.t
        if not self.step("degree classes", _high(s, n) and _high(t, n),
                         f"s = {s}, t = {t}, both >= (n+1)/2"):
            return(self.fallback("degree classes", "a class is too small"))
        if s < t:
            self.work = self.H.transpose()
            s, t = t, s
            tr.transposed = True
            self.step("transpose", True, "parts swapped so that s >= t")

        W = self.work
        x_deg, y_deg = W.x_degrees(), W.y_degrees()
        delta = W.min_degree()
        if not self.step("minimum degree", delta >= 2,
                         f"delta(H) = {delta} >= 2"):
            return(self.fallback("minimum degree", f"delta(H) = {delta}"))

        low_x = [i for i, d in enumerate(x_deg) if not _high(d, n)]
        low_y = [j for j, d in enumerate(y_deg) if not _high(d, n)]
        bounded = (all(x_deg[i] <= n - s for i in low_x)
                   and all(y_deg[j] <= n - t for j in low_y))
        if not self.step("low degree bounds", bounded,
                         f"d(u) <= {n - s} off X0, d(v) <= {n - t} off Y0"):
            return(self.fallback("low degree bounds", "a low vertex is too "
                                                      "large"))

        sized = s >= n - 3 and t >= n - 3 and n - 1 not in (s, t)
        if not self.step("class sizes", sized,
                         f"s, t >= n-3 = {n - 3} and s, t != n-1"):
            return(self.fallback("class sizes", f"s = {s}, t = {t}"))

        if t == n:
            self.step("t = n", W.is_complete(), "H = K_{n,n}")
            order = []
            for i in range(n):
                order.extend([Vertex(Part.X, i), Vertex(Part.Y, i)])
            return(self.found(HamiltonCycle(tuple(order)), "complete"))

        if t == n - 2:
            if s == n - 2:
                return(self.edge_bound("t = n-2, s = n-2",
                                       (n - 2) ** 2 + 2 * 4))
            return(self.two_specials(low_y))

        if s == n - 3:
            return(self.edge_bound("t = n-3, s = n-3", (n - 3) ** 2 + 3 * 6))
        if s == n - 2:
            return(self.edge_bound("t = n-3, s = n-2",
                                   (n - 3) * (n - 2) + 2 * 2 + 3 * 3))
        return(self.three_specials(low_y))

    def two_specials(self, low_y: Sequence[int]) -> TraceVerdict:
        """ s = n, t = n-2: the closure leaves two twin degree-2 vertices

        Every X-vertex meeting one special meets the other, so both specials
        see the same pair and close a 4-cycle with it.
        """
        W = self.work
        j1, j2 = low_y
        degrees = [W.degree(Vertex(Part.Y, j)) for j in low_y]
        twins = degrees == [2, 2] and W.y_rows[j1] == W.y_rows[j2]
        pair = "".join(str(Vertex(Part.X, i))
                       for i in iter_bits(W.y_rows[j1]))
        self.step("t = n-2, s = n", twins,
                  f"special degrees {degrees}, shared pair {pair}")
        return(self.fallback("t = n-2, s = n", "two special vertices share "
                                               "their only neighbours"))

    def three_specials(self, low_y: Sequence[int]) -> TraceVerdict:
        """ s = n, t = n-3: good linear forest, else the extremal shape."""
        W = self.work
        specials = [Vertex(Part.Y, j) for j in low_y]
        forest = find_good_linear_forest(W, specials)
        self.step("t = n-3, s = n: good linear forest", forest is not None,
                  str(forest) if forest else "none")
        if forest is not None:
            return(self.found(forest_to_hamilton(W, forest),
                              "good linear forest"))

        degrees = [W.degree(s) for s in specials]
        if not self.step("special degrees are 2", degrees == [2, 2, 2],
                         f"special degrees {degrees}"):
            return(self.fallback("special degrees are 2", "a special vertex "
                                                          "has degree 3"))
        is_gnn = recognize_gnn(W) and self.G == self.H
        if self.step("extremal shape", is_gnn, "H = G_{n,n} and G = H"):
            return(IsGnn())
        return(self.fallback("extremal shape", "the specials do not share "
                                               "exactly one neighbour"))


def proof_trace(G: BipartiteGraph, budget: Optional[int] = None) -> ProofTrace:
    """ Replay the case analysis on G and its bipartite closure

    Args:
        G: Balanced bipartite graph; below n = 16 the trace is marked as
            outside the theorem's range but still runs.
        budget: Step budget for the fallback Hamilton search.

    Returns:
        The ProofTrace with its verdict; a HamiltonCycleFound certificate is
        always a cycle of G itself.
    """
    tracer = _Tracer(G, budget)
    tracer.trace.verdict = tracer.run()
    logger.debug("trace verdict %s", tracer.trace.verdict.name)
    return(tracer.trace)
