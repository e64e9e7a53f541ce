import json
import logging

import pytest
from hypothesis import given

from spectral_hamilton_clt.configure import SuiteConfig
from spectral_hamilton_clt.hamilton.closure import bipartite_closure
from spectral_hamilton_clt.spectral import rho_gnn_exact, spectral_radius
from spectral_hamilton_clt.utils.bigraph import (BipartiteGraph,
                                                 complete_bipartite,
                                                 extremal_gnn)
from spectral_hamilton_clt.utils.errors import (DomainError,
                                                ResourceLimitError, UsageError)
from spectral_hamilton_clt.verify import pipeline
from spectral_hamilton_clt.verify.pipeline import (RECORD_COLUMNS, Verdict,
                                                   verify_main_theorem)
from spectral_hamilton_clt.verify.populations import (balanced_from_mask,
                                                      enumerate_balanced,
                                                      sample_bipartite,
                                                      sample_near_extremal,
                                                      sub_seed)
from spectral_hamilton_clt.verify.suites import run_suite
from spectral_hamilton_clt.verify.trace import (HamiltonCycleFound,
                                                InfeasibleCase, IsGnn,
                                                proof_trace)
from tests.oracles import balanced_graphs


### --------------------------- Populations -------------------------- ###

@pytest.mark.parametrize("n, count", [(0, 1), (1, 2), (2, 16), (3, 512)])
def test_enumeration_counts(n, count):
    graphs = list(enumerate_balanced(n))
    assert len(graphs) == count
    assert len({G.digest() for G in graphs}) == count


def test_enumeration_limits():
    with pytest.raises(ResourceLimitError):
        next(enumerate_balanced(5))
    with pytest.raises(UsageError):
        next(enumerate_balanced(-1))


@given(balanced_graphs())
def test_mask_inverse(G):
    assert balanced_from_mask(G.n, G.mask()) == G


def test_sampling_is_seeded():
    assert sample_bipartite(6, 0.5, 7) == sample_bipartite(6, 0.5, 7)
    assert sample_bipartite(5, 0.0, 1).edge_count() == 0
    assert sample_bipartite(5, 1.0, 1) == complete_bipartite(5, 5)
    with pytest.raises(UsageError):
        sample_bipartite(5, 1.5, 1)
    assert sub_seed(3, 1) == sub_seed(3, 1)
    assert sub_seed(3, 1) != sub_seed(3, 2)


@pytest.mark.parametrize("seed", range(4))
def test_near_extremal_samples(seed):
    n = 7
    G = sample_near_extremal(n, seed)
    assert G == sample_near_extremal(n, seed)
    assert G.min_degree() >= 2
    assert spectral_radius(G).rho >= rho_gnn_exact(n) - 1e-9
    assert sample_near_extremal(n, seed, removals=0) == complete_bipartite(n, n)
    with pytest.raises(DomainError):
        sample_near_extremal(4, seed)


### ----------------------------- Verdicts --------------------------- ###

@pytest.mark.parametrize("n", [5, 6, 8])
def test_extremal_verdict(n):
    record = verify_main_theorem(extremal_gnn(n))
    assert record.verdict is Verdict.EXTREMAL
    assert record.one_tough
    assert record.passed
    assert record.threshold == pytest.approx(record.rho, abs=1e-8)


@pytest.mark.slow
def test_extremal_verdict_at_sixteen(gnn16):
    assert verify_main_theorem(gnn16).verdict is Verdict.EXTREMAL


def test_complete_graph_verdict():
    G = complete_bipartite(16, 16)
    record = verify_main_theorem(G)
    assert record.verdict is Verdict.HAMILTONIAN
    assert record.certificate.verify(G)
    assert record.rho == pytest.approx(16.0)


def test_small_and_sparse_graphs_are_not_applicable(k33):
    small = verify_main_theorem(k33)
    assert small.verdict is Verdict.NOT_APPLICABLE
    assert small.threshold is None
    # a 12-cycle sits far below the threshold
    cycle = BipartiteGraph.from_edges(6, 6, [(i, i) for i in range(6)]
                                      + [((i + 1) % 6, i) for i in range(6)])
    sparse = verify_main_theorem(cycle)
    assert sparse.verdict is Verdict.NOT_APPLICABLE
    assert sparse.one_tough is None
    assert sparse.threshold is not None


def test_counterexample_is_a_verdict(monkeypatch, caplog):
    monkeypatch.setattr(pipeline, "find_hamilton_cycle",
                        lambda *args, **kwargs: None)
    caplog.set_level(logging.WARNING)
    record = verify_main_theorem(complete_bipartite(6, 6))
    assert record.verdict is Verdict.COUNTEREXAMPLE
    assert not record.passed
    assert record.graph6 in caplog.text
    assert record.transcript


def test_record_row(c6):
    record = verify_main_theorem(c6)
    row = record.to_row()
    assert list(row) == RECORD_COLUMNS
    assert row["verdict"] == "NotApplicable"
    assert row["hash"] == c6.digest()


### ------------------------------ Traces ---------------------------- ###

def test_trace_of_extremal_graph(gnn16):
    trace = proof_trace(gnn16)
    assert isinstance(trace.verdict, IsGnn)
    assert (trace.edge_count, trace.s, trace.t) == (214, 16, 13)
    assert trace.threshold_pass
    assert not trace.outside_range
    steps = [step.name for step in trace.case_path]
    assert steps[0] == "closure"
    assert "t = n-3, s = n: good linear forest" in steps


def test_trace_of_complete_graph():
    G = complete_bipartite(16, 16)
    trace = proof_trace(G)
    assert isinstance(trace.verdict, HamiltonCycleFound)
    assert trace.verdict.via == "complete"
    assert trace.verdict.certificate.verify(G)


def test_trace_lifts_through_the_closure(gnn16):
    G = gnn16.with_edges([(5, 2)])
    trace = proof_trace(G)
    assert isinstance(trace.verdict, HamiltonCycleFound)
    assert trace.verdict.certificate.verify(G)
    json.dumps(trace.to_dict())


def test_trace_below_theorem_range(c6, p4):
    trace = proof_trace(c6)
    assert trace.outside_range
    assert isinstance(trace.verdict, HamiltonCycleFound)
    assert trace.verdict.certificate.verify(c6)

    stuck = proof_trace(p4)
    assert isinstance(stuck.verdict, InfeasibleCase)
    assert stuck.verdict.step == "degree classes"
    assert stuck.to_dict()["verdict"]["kind"] == "InfeasibleCase"


def from_neighbourhoods(*neighbourhoods) -> BipartiteGraph:
    """ Balanced graph from the 1-based Y-labels adjacent to u1, u2, ..."""
    n = len(neighbourhoods)
    return(BipartiteGraph.from_edges(n, n, [
        (i, j - 1) for i, ys in enumerate(neighbourhoods) for j in ys]))


def step_named(trace, name):
    return(next(step for step in trace.case_path if step.name == name))


def test_trace_two_twin_specials():
    G = from_neighbourhoods(range(1, 7), range(1, 7), *[range(3, 7)] * 4)
    assert bipartite_closure(G) == G
    trace = proof_trace(G)
    assert (trace.s, trace.t) == (6, 4)
    step = step_named(trace, "t = n-2, s = n")
    assert step.holds
    assert step.detail == "special degrees [2, 2], shared pair u1u2"
    assert isinstance(trace.verdict, InfeasibleCase)
    assert trace.verdict.step == "t = n-2, s = n"


def test_trace_edge_bound_with_two_low_classes():
    G = from_neighbourhoods(*[range(1, 5)] * 4, [5, 6], [5, 6])
    assert bipartite_closure(G) == G
    trace = proof_trace(G)
    assert (trace.edge_count, trace.s, trace.t) == (20, 4, 4)
    step = step_named(trace, "t = n-2, s = n-2")
    assert step.holds
    assert step.detail == "e(H) = 20 <= 24; n(n-3) = 18"
    assert trace.verdict == InfeasibleCase("t = n-2, s = n-2",
                                           "bound 24 exceeds n(n-3) = 18")


def test_trace_edge_bound_falls_back_to_a_cycle():
    G = from_neighbourhoods(range(1, 8), range(1, 8), range(1, 5),
                            range(1, 5), [1, 2, 5], [1, 2, 6], [1, 2, 7])
    assert bipartite_closure(G) == G
    trace = proof_trace(G)
    assert (trace.edge_count, trace.s, trace.t) == (31, 4, 4)
    assert "34" in step_named(trace, "t = n-3, s = n-3").detail
    assert isinstance(trace.verdict, HamiltonCycleFound)
    assert trace.verdict.via == "direct search"
    assert trace.verdict.certificate.verify(G)


def test_trace_edge_bound_on_either_side():
    G = from_neighbourhoods(*[range(1, 8)] * 3, range(1, 5), range(1, 5),
                            [1, 2], [1, 2])
    assert bipartite_closure(G) == G
    expected = InfeasibleCase("t = n-3, s = n-2",
                              "bound 33 exceeds n(n-3) = 28")
    trace = proof_trace(G)
    assert (trace.edge_count, trace.s, trace.t) == (33, 5, 4)
    assert not trace.transposed
    assert trace.verdict == expected

    flipped = proof_trace(G.transpose())
    assert (flipped.s, flipped.t) == (4, 5)
    assert flipped.transposed
    assert flipped.verdict == expected


def test_trace_builds_cycle_from_linear_forest():
    wide = [4, 5, 6, 7]
    G = from_neighbourhoods([1] + wide, [1] + wide, [2] + wide, [2] + wide,
                            [3] + wide, [3] + wide, wide)
    assert bipartite_closure(G) == G
    trace = proof_trace(G)
    assert (trace.edge_count, trace.s, trace.t) == (34, 7, 4)
    assert step_named(trace, "t = n-3, s = n: good linear forest").holds
    assert isinstance(trace.verdict, HamiltonCycleFound)
    assert trace.verdict.via == "good linear forest"
    assert trace.verdict.certificate.verify(G)


### ------------------------------ Suites ---------------------------- ###

def suite(name: str, n_range, samples: int = 0, **kwargs) -> SuiteConfig:
    return(SuiteConfig(suite=name, n_range=n_range, samples=samples, seed=1,
                       **kwargs))


def read_lines(path):
    return([json.loads(line) for line in path.read_text().splitlines()])


def test_extremal_suite(tmp_path):
    out = tmp_path / "extremal.jsonl"
    result = run_suite(suite("extremal", (5, 7), output=str(out)))
    assert result.passed
    assert [r.n for r in sorted(result.records, key=lambda r: r.n)] == \
        [5, 6, 7]
    rows = read_lines(out)
    assert len(rows) == 4
    assert rows[-1]["hash"] == "summary"
    assert all(row["verdict"] == "Extremal" for row in rows[:-1])


def test_exhaustive_closure_equivalence(tmp_path):
    result = run_suite(suite("closure-equivalence", (3, 3),
                             output=str(tmp_path / "closure.csv"),
                             certificates=str(tmp_path / "certs")))
    assert result.passed
    assert len(result.records) == 512
    hashes = [r.hash for r in result.records]
    assert hashes == sorted(hashes)
    certified = [r for r in result.records if r.certificate is not None]
    assert certified
    for record in certified:
        sidecar = json.loads(open(record.certificate_path).read())
        assert sidecar["certificate"] == "cycle"
    header = (tmp_path / "closure.csv").read_text().splitlines()[0]
    assert header.split(",") == RECORD_COLUMNS


def test_zero_samples_gives_summary_only(tmp_path):
    out = tmp_path / "mono.jsonl"
    result = run_suite(suite("monotonicity", (3, 6), output=str(out)))
    assert result.records == []
    rows = read_lines(out)
    assert len(rows) == 1
    assert rows[0]["hash"] == "summary"


@pytest.mark.parametrize("name, n_range", [
    ("edge-bound", (1, 5)),
    ("monotonicity", (1, 6)),
    ("closure-determinism", (2, 6)),
    ("closure-equivalence", (5, 6)),
    ("forest-construction", (6, 9)),
])
def test_sampled_suites_pass(tmp_path, name, n_range):
    result = run_suite(suite(name, n_range, samples=20,
                             output=str(tmp_path / "out.jsonl")))
    assert result.passed
    assert result.counterexamples == 0


def test_suite_errors(tmp_path):
    with pytest.raises(UsageError):
        run_suite(suite("no-such-suite", (5, 6)))
    with pytest.raises(ResourceLimitError):
        run_suite(suite("extremal", (5, 70)))
    with pytest.raises(UsageError):
        run_suite(suite("extremal", (5, 5),
                        output=str(tmp_path / "missing" / "out.jsonl")))


@pytest.mark.slow
def test_hypothesis_sweep(tmp_path):
    result = run_suite(suite("hypothesis-sweep", (16, 17), samples=4,
                             output=str(tmp_path / "sweep.jsonl")))
    assert result.passed
    assert result.counterexamples == 0


@pytest.mark.slow
def test_worker_count_does_not_change_records(tmp_path):
    outputs = []
    for workers in (1, 3):
        out = tmp_path / f"records-{workers}.jsonl"
        run_suite(suite("closure-determinism", (3, 5), samples=9,
                        output=str(out), workers=workers))
        outputs.append(out.read_text())
    assert outputs[0] == outputs[1]
