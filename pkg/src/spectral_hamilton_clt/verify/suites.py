""" Named verification suites

Each suite is planned as a list of independent tasks. A task carries its own
sub-seed, so the records do not depend on how many workers run them, and the
final record order is fixed by sorting on (graph hash, task index).

Suites:
    extremal: G_{n,n} across the n range.
    edge-bound: rho(G) <= sqrt(e(G)) and its equality classifier.
    monotonicity: deleting an edge never raises rho.
    closure-equivalence: G is Hamiltonian iff its closure is.
    closure-determinism: processing order does not change the closure.
    forest-construction: good linear forests always thread into cycles.
    hypothesis-sweep: near-extremal samples through the verdict pipeline
        and the case-analysis replay.
"""

import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import repeat
from pathlib import Path
from typing import Any, Callable, Dict, List, Tuple

from spectral_hamilton_clt import view
from spectral_hamilton_clt.configure import SuiteConfig
from spectral_hamilton_clt.hamilton.closure import bipartite_closure
from spectral_hamilton_clt.hamilton.factor import find_two_factor
from spectral_hamilton_clt.hamilton.forest import (find_good_linear_forest,
                                                   forest_to_hamilton)
from spectral_hamilton_clt.hamilton.search import find_hamilton_cycle
from spectral_hamilton_clt.spectral import (BoundClass, edge_bound_classify,
                                            rho_gnn_exact, spectral_radius)
from spectral_hamilton_clt.toughness import count_components
from spectral_hamilton_clt.utils import defaults
from spectral_hamilton_clt.utils.bigraph import (BipartiteGraph, extremal_gnn,
                                                 gnn_specials)
from spectral_hamilton_clt.utils.errors import ResourceLimitError, UsageError
from spectral_hamilton_clt.utils.graph_io import (GraphDocument,
                                                  certificate_document,
                                                  load_graph)
from spectral_hamilton_clt.verify.pipeline import (Verdict,
                                                   VerificationRecord,
                                                   verify_main_theorem)
from spectral_hamilton_clt.verify.populations import (balanced_from_mask,
                                                      make_rng,
                                                      sample_bipartite,
                                                      sample_near_extremal,
                                                      sub_seed)
from spectral_hamilton_clt.verify.trace import (HamiltonCycleFound, IsGnn,
                                                proof_trace)

logger = logging.getLogger(__name__)

EDGE_PROBABILITIES = (0.2, 0.5, 0.8)
CLOSURE_PROBABILITIES = (0.3, 0.5, 0.7)
CLOSURE_ORDERS = 100
EXHAUSTIVE_CHUNK = 4096
EDGE_BOUND_SLACK = 1e-9
EXTREMAL_RHO_MATCH = 1e-8


@dataclass(frozen=True)
class Task:
    """ One unit of suite work

    Attributes:
        index: Position in the plan; breaks ties in the record order.
        n: Part size.
        seed: Sub-seed for this task.
        kind: Suite-specific variant (e.g. constructed vs sampled).
        start: First enumeration index for exhaustive chunks.
        stop: One past the last enumeration index.
    """
    index: int
    n: int
    seed: int
    kind: int = 0
    start: int = 0
    stop: int = 0


@dataclass
class SuiteResult:
    suite: str
    records: List[VerificationRecord] = field(default_factory=list)
    summary: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return(bool(self.summary.get("passed", True)))

    @property
    def counterexamples(self) -> int:
        return(sum(r.verdict is Verdict.COUNTEREXAMPLE for r in self.records))


### ----------------------------- Planning --------------------------- ###

def _sampled(config: SuiteConfig, sizes: List[int],
             kind: int = 0, first: int = 0) -> List[Task]:
    if not sizes:
        return([])
    return([Task(first + k, sizes[k % len(sizes)],
                 sub_seed(config.seed, first + k), kind)
            for k in range(config.samples)])


def _plan_extremal(config: SuiteConfig) -> List[Task]:
    sizes = [n for n in config.sizes() if n >= defaults.EXTREMAL_MIN_N]
    return([Task(k, n, 0) for k, n in enumerate(sizes)])


def _plan_edge_bound(config: SuiteConfig) -> List[Task]:
    tasks = _sampled(config, [n for n in config.sizes() if n >= 1])
    constructed = config.samples // 20
    sizes = [n for n in config.sizes() if n >= 1]
    for k in range(constructed if sizes else 0):
        index = len(tasks)
        tasks.append(Task(index, sizes[k % len(sizes)],
                          sub_seed(config.seed, index), kind=1))
    return(tasks)


def _plan_closure_equivalence(config: SuiteConfig) -> List[Task]:
    tasks = []
    for n in config.sizes():
        if n <= defaults.ENUMERATION_LIMIT:
            total = 1 << (n * n)
            for start in range(0, total, EXHAUSTIVE_CHUNK):
                tasks.append(Task(len(tasks), n, 0, kind=1, start=start,
                                  stop=min(start + EXHAUSTIVE_CHUNK, total)))
    sampled = [n for n in config.sizes() if n > defaults.ENUMERATION_LIMIT]
    return(tasks + _sampled(config, sampled, first=len(tasks)))


def _plan_sampled(config: SuiteConfig) -> List[Task]:
    return(_sampled(config, [n for n in config.sizes() if n >= 1]))


def _plan_forest(config: SuiteConfig) -> List[Task]:
    tasks = _plan_extremal(config)
    shaped = [n for n in config.sizes() if n >= 6]
    return(tasks + _sampled(config, shaped, kind=1, first=len(tasks)))


def _plan_sweep(config: SuiteConfig) -> List[Task]:
    tasks = _plan_extremal(config)
    sizes = [n for n in config.sizes() if n >= defaults.EXTREMAL_MIN_N]
    return(tasks + _sampled(config, sizes, kind=1, first=len(tasks)))


### ----------------------------- Checks ----------------------------- ###

def _extremal(config: SuiteConfig, task: Task) -> List[VerificationRecord]:
    n = task.n
    G = extremal_gnn(n)
    record = verify_main_theorem(G, config.tol, config.budget,
                                 limit=config.tough_limit)
    exact = rho_gnn_exact(n, config.tol)
    deviation = abs(record.rho - exact)
    record.deviation = deviation
    record.check = "extremal"
    record.passed = (record.verdict is Verdict.EXTREMAL
                     and G.edge_count() == n * (n - 3) + 6
                     and find_two_factor(G) is None
                     and math.sqrt(n * (n - 3)) < record.rho
                     < math.sqrt(n * (n - 3) + 6)
                     and deviation <= EXTREMAL_RHO_MATCH)
    return([record])


def _edge_bound(config: SuiteConfig, task: Task) -> List[VerificationRecord]:
    n = task.n
    if task.kind == 1:
        rng = make_rng(task.seed)
        a = int(rng.integers(1, n + 1))
        b = int(rng.integers(1, n + 1))
        G = BipartiteGraph(n, n, tuple((1 << b) - 1 if i < a else 0
                                       for i in range(n)))
    else:
        p = EDGE_PROBABILITIES[task.index % len(EDGE_PROBABILITIES)]
        G = sample_bipartite(n, p, task.seed)

    rho = spectral_radius(G, config.tol).rho
    bound = math.sqrt(G.edge_count())
    equality = edge_bound_classify(G) is BoundClass.EQUALITY
    passed = rho <= bound + EDGE_BOUND_SLACK
    if equality:
        passed = passed and abs(rho - bound) <= EDGE_BOUND_SLACK
    else:
        passed = passed and rho < bound
    if task.kind == 1:
        passed = passed and equality
    return([VerificationRecord.for_graph(G, rho=rho, check="edge-bound",
                                         passed=passed,
                                         deviation=rho - bound)])


def _monotonicity(config: SuiteConfig, task: Task) -> List[VerificationRecord]:
    p = EDGE_PROBABILITIES[task.index % len(EDGE_PROBABILITIES)]
    G = sample_bipartite(task.n, p, task.seed)
    rho = spectral_radius(G, config.tol).rho
    edges = list(G.edges())
    deviation = -rho
    if edges:
        rng = make_rng(sub_seed(task.seed, 1))
        edge = edges[int(rng.integers(len(edges)))]
        deviation = spectral_radius(G.without_edges([edge]),
                                    config.tol).rho - rho
    passed = deviation <= EDGE_BOUND_SLACK
    # Perron-Frobenius: a connected graph loses spectral radius strictly
    if edges and count_components(G, []) == 1:
        passed = passed and deviation < -EDGE_BOUND_SLACK
    return([VerificationRecord.for_graph(G, rho=rho, check="monotonicity",
                                         passed=passed, deviation=deviation)])


def _closure_check(config: SuiteConfig, G: BipartiteGraph) -> VerificationRecord:
    H = bipartite_closure(G)
    direct = find_hamilton_cycle(G, budget=config.budget)
    closed = find_hamilton_cycle(H, budget=config.budget)
    lifted = find_hamilton_cycle(G, closure_first=True, budget=config.budget)
    agree = (direct is None) == (closed is None) == (lifted is None)
    valid = all(cycle is None or cycle.verify(G) for cycle in (direct, lifted))
    verdict = Verdict.HAMILTONIAN if direct is not None else None
    return(VerificationRecord.for_graph(G, check="closure-equivalence",
                                        verdict=verdict, certificate=direct,
                                        passed=agree and valid))


def _closure_equivalence(config: SuiteConfig,
                         task: Task) -> List[VerificationRecord]:
    if task.kind == 1:
        return([_closure_check(config, balanced_from_mask(task.n, mask))
                for mask in range(task.start, task.stop)])
    p = CLOSURE_PROBABILITIES[task.index % len(CLOSURE_PROBABILITIES)]
    return([_closure_check(config, sample_bipartite(task.n, p, task.seed))])


def _closure_determinism(config: SuiteConfig,
                         task: Task) -> List[VerificationRecord]:
    p = CLOSURE_PROBABILITIES[task.index % len(CLOSURE_PROBABILITIES)]
    G = sample_bipartite(task.n, p, task.seed)
    base = bipartite_closure(G)
    rng = make_rng(sub_seed(task.seed, 1))
    mismatches = sum(bipartite_closure(G, rng) != base
                     for _ in range(CLOSURE_ORDERS))
    idempotent = bipartite_closure(base) == base
    return([VerificationRecord.for_graph(G, check="closure-determinism",
                                         passed=mismatches == 0 and idempotent,
                                         deviation=float(mismatches))])


def _shaped_graph(n: int, seed: int) -> BipartiteGraph:
    """ K_{n,n-3} on X and v_4..v_n plus three specials of degree 2 or 3."""
    rng = make_rng(seed)
    core = ((1 << n) - 1) & ~0b111
    rows = [core] * n
    for j in range(3):
        size = int(rng.integers(2, 4))
        for i in rng.choice(n, size=size, replace=False):
            rows[int(i)] |= 1 << j
    return(BipartiteGraph(n, n, tuple(rows)))


def _forest_construction(config: SuiteConfig,
                         task: Task) -> List[VerificationRecord]:
    specials = list(gnn_specials())
    if task.kind == 0:
        G = extremal_gnn(task.n)
        forest = find_good_linear_forest(G, specials)
        return([VerificationRecord.for_graph(G, check="forest-construction",
                                             passed=forest is None)])

    H = _shaped_graph(task.n, task.seed)
    forest = find_good_linear_forest(H, specials)
    cycle = forest_to_hamilton(H, forest) if forest is not None else None
    return([VerificationRecord.for_graph(
        H, check="forest-construction",
        verdict=Verdict.HAMILTONIAN if cycle is not None else None,
        certificate=cycle,
        passed=cycle is None or cycle.verify(H))])


TRACE_MATCH = {Verdict.HAMILTONIAN: HamiltonCycleFound,
               Verdict.EXTREMAL: IsGnn}


def _hypothesis_sweep(config: SuiteConfig,
                      task: Task) -> List[VerificationRecord]:
    if task.kind == 0:
        G = extremal_gnn(task.n)
    else:
        G = sample_near_extremal(task.n, task.seed, tol=config.tol)
    record = verify_main_theorem(G, config.tol, config.budget,
                                 limit=config.tough_limit)
    record.check = "hypothesis-sweep"
    expected = TRACE_MATCH.get(record.verdict)
    if expected is not None:
        trace = proof_trace(G, config.budget)
        if not isinstance(trace.verdict, expected):
            logger.warning("Trace verdict %s disagrees with %s on %s",
                           trace.verdict.name, record.verdict.value,
                           record.hash)
            record.passed = False
    if task.kind == 0:
        record.passed = record.passed and record.verdict is Verdict.EXTREMAL
    return([record])


Planner = Callable[[SuiteConfig], List[Task]]
Checker = Callable[[SuiteConfig, Task], List[VerificationRecord]]

SUITES: Dict[str, Tuple[Planner, Checker]] = {
    "extremal": (_plan_extremal, _extremal),
    "edge-bound": (_plan_edge_bound, _edge_bound),
    "monotonicity": (_plan_sampled, _monotonicity),
    "closure-equivalence": (_plan_closure_equivalence, _closure_equivalence),
    "closure-determinism": (_plan_sampled, _closure_determinism),
    "forest-construction": (_plan_forest, _forest_construction),
    "hypothesis-sweep": (_plan_sweep, _hypothesis_sweep),
}


### ----------------------------- Running ---------------------------- ###

def _run_task(config: SuiteConfig, task: Task) -> List[VerificationRecord]:
    checker = SUITES[config.suite][1]
    started = time.perf_counter()
    records = checker(config, task)
    if config.timings:
        micros = int((time.perf_counter() - started) * 1e6)
        for record in records:
            record.micros = micros // max(len(records), 1)
    return(records)


def _write_certificates(records: List[VerificationRecord], directory: str):
    folder = Path(directory)
    try:
        folder.mkdir(parents=True, exist_ok=True)
    except OSError as err:
        raise UsageError(f"Cannot create {directory}: {err}") from err
    for record in records:
        if record.certificate is None:
            continue
        n = record.n
        doc = GraphDocument("graph6", record.graph6.encode("ascii"),
                            declared_parts=(range(n), range(n, 2 * n)))
        G = load_graph(doc)
        path = folder / f"{record.hash}.json"
        sidecar = certificate_document(G, record.certificate.kind,
                                       record.certificate.witness())
        path.write_bytes(sidecar.payload)
        record.certificate_path = str(path)


def summarize(suite: str, records: List[VerificationRecord],
              micros: int) -> Dict[str, Any]:
    """ Summary row in record-column shape (hash "summary")."""
    failed = sum(not record.passed for record in records)
    counter = sum(record.verdict is Verdict.COUNTEREXAMPLE
                  for record in records)
    deviations = [record.deviation for record in records]
    return({"hash": "summary", "n": None, "e": len(records), "rho": None,
            "threshold": None, "one_tough": None,
            "verdict": (f"passed={len(records) - failed};failed={failed};"
                        f"counterexamples={counter}"),
            "certificate_path": "", "micros": micros, "check": suite,
            "passed": failed == 0 and counter == 0,
            "deviation": max(deviations) if deviations else 0.0,
            "graph6": "", "transcript": ""})


def run_suite(config: SuiteConfig) -> SuiteResult:
    """ Execute a named suite and write its records

    Args:
        config: Suite descriptor; output None writes to standard output.

    Returns:
        SuiteResult with the ordered records and the summary row. The suite
        fails when any record fails or any verdict is Counterexample.

    Raises:
        UsageError: Unknown suite name or unwritable output.
        ResourceLimitError: The n range exceeds the part-size limit.
    """
    if config.suite not in SUITES:
        raise UsageError(f"Unknown suite {config.suite!r}; choose from "
                         f"{', '.join(SUITES)}.")
    if config.n_range[1] > config.limit:
        raise ResourceLimitError(f"n range reaches {config.n_range[1]}, above "
                                 f"the part-size limit {config.limit}.")
    view.check_writable(config.output)

    tasks = SUITES[config.suite][0](config)
    logger.info("Suite %s: %d tasks on %d worker(s)", config.suite,
                len(tasks), config.workers)
    started = time.perf_counter()
    if config.workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            batches = list(pool.map(_run_task, repeat(config), tasks))
    else:
        batches = [_run_task(config, task) for task in tasks]

    ordered = sorted(((record, task.index)
                      for task, batch in zip(tasks, batches)
                      for record in batch),
                     key=lambda pair: (pair[0].hash, pair[1]))
    records = [record for record, _ in ordered]
    if config.certificates:
        _write_certificates(records, config.certificates)

    for record in records:
        if not record.passed:
            logger.warning("Record %s failed %s", record.hash, record.check)

    micros = int((time.perf_counter() - started) * 1e6) if config.timings else 0
    result = SuiteResult(config.suite, records,
                         summarize(config.suite, records, micros))
    view.write_records(view.records_frame(records, result.summary),
                       config.output)
    logger.info("Suite %s finished: %s", config.suite,
                result.summary["verdict"])
    return(result)
