""" Main-theorem verdict pipeline

A 1-tough balanced bipartite graph with rho(G) >= rho(G_{n,n}) must either
be Hamiltonian or be G_{n,n} itself. verify_main_theorem checks one graph
against that statement and returns a VerificationRecord; every outcome,
including a failure of the statement, is a verdict rather than an exception.
"""

import enum
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Optional

from spectral_hamilton_clt.hamilton.certificates import HamiltonCycle
from spectral_hamilton_clt.hamilton.recognize import recognize_gnn
from spectral_hamilton_clt.hamilton.search import (SearchStats,
                                                   find_hamilton_cycle)
from spectral_hamilton_clt.spectral import rho_gnn_exact, spectral_radius
from spectral_hamilton_clt.toughness import is_one_tough
from spectral_hamilton_clt.utils import defaults
from spectral_hamilton_clt.utils.bigraph import BipartiteGraph
from spectral_hamilton_clt.utils.graph_io import dump_graph

logger = logging.getLogger(__name__)

RECORD_COLUMNS = ["hash", "n", "e", "rho", "threshold", "one_tough",
                  "verdict", "certificate_path", "micros", "check", "passed",
                  "deviation", "graph6", "transcript"]


class Verdict(enum.Enum):
    NOT_APPLICABLE = "NotApplicable"
    HAMILTONIAN = "Hamiltonian"
    EXTREMAL = "Extremal"
    COUNTEREXAMPLE = "Counterexample"


@dataclass
class VerificationRecord:
    """ One row of harness output

    Attributes:
        hash: Graph digest (see BipartiteGraph.digest).
        n: Part size.
        e: Edge count.
        rho: Spectral radius.
        threshold: rho(G_{n,n}), or None when n < 5.
        one_tough: None when toughness was not needed for the verdict.
        verdict: Verdict value; None for pure property checks.
        certificate: Hamilton cycle backing a Hamiltonian verdict.
        certificate_path: Sidecar file holding the certificate, if written.
        micros: Elapsed time, zero unless timings were requested.
        check: Name of the property the record belongs to.
        passed: Whether the property held.
        deviation: Largest numerical deviation observed by the check.
        graph6: The graph, for replay.
        transcript: Hamilton search digest, kept for counterexample dumps.
    """
    hash: str
    n: int
    e: int
    rho: Optional[float] = None
    threshold: Optional[float] = None
    one_tough: Optional[bool] = None
    verdict: Optional[Verdict] = None
    certificate: Optional[HamiltonCycle] = field(default=None, repr=False)
    certificate_path: str = ""
    micros: int = 0
    check: str = "main-theorem"
    passed: bool = True
    deviation: float = 0.0
    graph6: str = ""
    transcript: str = ""

    @classmethod
    def for_graph(cls, G: BipartiteGraph, **kwargs) -> "VerificationRecord":
        graph6 = dump_graph(G, "graph6").payload.decode("ascii").strip()
        return(cls(hash=G.digest(), n=G.nx, e=G.edge_count(), graph6=graph6,
                   **kwargs))

    def to_row(self) -> Dict[str, Any]:
        """ Flat dict over RECORD_COLUMNS."""
        row = {column: getattr(self, column) for column in RECORD_COLUMNS}
        row["verdict"] = self.verdict.value if self.verdict else ""
        return(row)


def meets_threshold(G: BipartiteGraph, rho: float, threshold: float) -> bool:
    """ rho >= threshold up to the one-sided slack, re-screened on e(G)

    The slack keeps rounding from discarding a candidate; e(G) > n(n-3) is the
    exact necessary condition that removes the false positives it lets in.
    """
    n = G.n
    return(rho >= threshold - defaults.THRESHOLD_SLACK
           and G.edge_count() > n * (n - 3))


def verify_main_theorem(G: BipartiteGraph, tol: float = defaults.DEFAULT_TOL,
                        budget: Optional[int] = None,
                        limit: int = defaults.TOUGHNESS_PART_LIMIT,
                        closure_first: bool = False) -> VerificationRecord:
    """ Classify one graph against the main theorem

    Args:
        G: Balanced bipartite graph.
        tol: Power iteration tolerance.
        budget: Step budget for the Hamilton search.
        limit: Part-size limit for the toughness search.
        closure_first: Search the closure and lift, instead of G itself.

    Returns:
        A VerificationRecord whose verdict is NotApplicable, Hamiltonian,
        Extremal or Counterexample.
    """
    n = G.n
    rho = spectral_radius(G, tol).rho
    record = VerificationRecord.for_graph(G, rho=rho)

    if n < defaults.EXTREMAL_MIN_N:
        record.verdict = Verdict.NOT_APPLICABLE
        return(record)

    record.threshold = rho_gnn_exact(n, tol)
    if not meets_threshold(G, rho, record.threshold):
        record.verdict = Verdict.NOT_APPLICABLE
        return(record)

    record.one_tough = is_one_tough(G, limit).one_tough
    if not record.one_tough:
        record.verdict = Verdict.NOT_APPLICABLE
        return(record)

    stats = SearchStats()
    cycle = find_hamilton_cycle(G, closure_first=closure_first, budget=budget,
                                stats=stats)
    record.transcript = stats.hexdigest()
    if cycle is not None:
        record.verdict = Verdict.HAMILTONIAN
        record.certificate = cycle
    elif recognize_gnn(G):
        record.verdict = Verdict.EXTREMAL
    else:
        record.verdict = Verdict.COUNTEREXAMPLE
        record.passed = False
        logger.warning("Counterexample %s: n=%d rho=%.12f graph6=%s "
                       "(no toughness witness, search transcript %s)",
                       record.hash, n, rho, record.graph6, record.transcript)
    return(record)
