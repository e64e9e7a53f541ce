#!/usr/bin/env python
""" Main program for running the command-line tools

Dispatches the subcommands. Data goes to standard output (or --output), logs
and diagnostics go to standard error, and every library error is turned into
its exit code here:

    0 success or verdict computed, 1 usage error, 2 input format error,
    3 counterexample or failed suite (verify and scan), 4 resource limit.
"""

import json
import logging
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional

from spectral_hamilton_clt import configure
from spectral_hamilton_clt import view
from spectral_hamilton_clt.hamilton.closure import bipartite_closure
from spectral_hamilton_clt.hamilton.factor import find_two_factor
from spectral_hamilton_clt.hamilton.search import (SearchStats,
                                                   find_hamilton_cycle)
from spectral_hamilton_clt.spectral import spectral_radius
from spectral_hamilton_clt.toughness import bipartite_toughness, is_one_tough
from spectral_hamilton_clt.utils.arg_parsing import arg_parser
from spectral_hamilton_clt.utils.bigraph import BipartiteGraph
from spectral_hamilton_clt.utils.errors import (GraphFormatError,
                                                HamiltonCLTError, UsageError)
from spectral_hamilton_clt.utils.graph_io import (GraphDocument,
                                                  certificate_document,
                                                  construct, dump_graph,
                                                  iter_graph6_lines,
                                                  load_graph,
                                                  read_graph_source,
                                                  read_source_bytes)
from spectral_hamilton_clt.verify.pipeline import (Verdict,
                                                   VerificationRecord,
                                                   verify_main_theorem)
from spectral_hamilton_clt.verify.suites import run_suite
from spectral_hamilton_clt.verify.trace import proof_trace

logger = logging.getLogger("spectral_hamilton_clt")

EXIT_COUNTEREXAMPLE = 3
EXIT_INTERRUPTED = 130


def setup_logging(verbose: bool):
    """ One stderr handler on the package logger."""
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(
        "%(asctime)s - %(levelname)s - %(message)s"))
    logger.handlers[:] = [handler]
    logger.setLevel(logging.DEBUG if verbose else logging.INFO)
    logger.propagate = False


def emit(text: str, output: Optional[str]):
    """ Write data to the output file, or to standard output."""
    if output is None:
        sys.stdout.write(text)
        return
    try:
        Path(output).write_text(text)
    except OSError as err:
        raise UsageError(f"Cannot write {output}: {err}") from err


def _load(args) -> BipartiteGraph:
    return(read_graph_source(args.input, args.format, args.limit))


def _document(G: BipartiteGraph, fmt: Optional[str]) -> str:
    return(dump_graph(G, fmt or "graph6").payload.decode("ascii"))


def _json(obj) -> str:
    return(json.dumps(obj) + "\n")


### --------------------------- Subcommands -------------------------- ###

def cmd_construct(args) -> int:
    G = construct(args.spec)
    if max(G.nx, G.ny) > args.limit:
        raise UsageError(f"{args.spec} exceeds the part-size limit.")
    emit(_document(G, args.format), args.output)
    return(0)


def cmd_rho(args) -> int:
    result = spectral_radius(_load(args), args.tol)
    emit(_json({"rho": result.rho, "iterations": result.iterations,
                "residual": result.residual}), args.output)
    return(0)


def cmd_tough(args) -> int:
    G = _load(args)
    if args.one_tough:
        one_tough, witness = is_one_tough(G, args.tough_limit)
        obj = {"one_tough": one_tough}
    else:
        witness = bipartite_toughness(G, args.tough_limit)
        obj = {"toughness": str(witness.ratio)}
    if witness is not None:
        obj["S"] = [str(x) for x in witness.S]
        obj["components"] = witness.components
    emit(_json(obj), args.output)
    return(0)


def cmd_closure(args) -> int:
    emit(_document(bipartite_closure(_load(args)), args.format), args.output)
    return(0)


def cmd_hamilton(args) -> int:
    G = _load(args)
    stats = SearchStats()
    cycle = find_hamilton_cycle(G, closure_first=args.closure_first,
                                budget=args.budget, stats=stats)
    logger.debug("Search transcript %s", stats.hexdigest())
    if cycle is None:
        emit("none\n", args.output)
    else:
        doc = certificate_document(G, cycle.kind, cycle.witness())
        emit(doc.payload.decode("utf-8"), args.output)
    return(0)


def cmd_two_factor(args) -> int:
    G = _load(args)
    factor = find_two_factor(G)
    if factor is None:
        emit("none\n", args.output)
    else:
        doc = certificate_document(G, factor.kind, factor.witness())
        emit(doc.payload.decode("utf-8"), args.output)
    return(0)


def cmd_trace(args) -> int:
    trace = proof_trace(_load(args), args.budget)
    if trace.outside_range:
        logger.info("n = %d is outside the theorem range; the trace is "
                    "reported, not judged", trace.n)
    emit(_json(trace.to_dict()), args.output)
    return(0)


def cmd_verify(args) -> int:
    configs = configure.read_configs(args.config) if args.config else None
    overrides = {"suite": args.suite, "n_range": args.n_range,
                 "samples": args.samples, "seed": args.seed,
                 "output": args.output, "tol": args.tol, "limit": args.limit,
                 "tough_limit": args.tough_limit,
                 "workers": args.workers,
                 "timings": "true" if args.timings else None}
    config = configure.suite_config(configs, overrides, args.certificates,
                                    args.budget)
    result = run_suite(config)
    view.print_table(view.grid_summary(view.records_frame(result.records)))
    return(0 if result.passed else EXIT_COUNTEREXAMPLE)


def cmd_scan(args) -> int:
    payload = read_source_bytes(args.input)
    records: List[VerificationRecord] = []
    for number, line in iter_graph6_lines(payload):
        try:
            G = load_graph(GraphDocument("graph6", line), limit=args.limit)
        except GraphFormatError as err:
            raise type(err)(f"line {number}: {err}") from err
        if G.balanced():
            record = verify_main_theorem(G, args.tol, args.budget,
                                         limit=args.tough_limit)
        else:
            record = VerificationRecord.for_graph(
                G, verdict=Verdict.NOT_APPLICABLE)
        records.append(record)

    frame = view.records_frame(records)
    view.write_records(frame, args.output)
    view.print_table(view.grid_summary(frame))
    if any(r.verdict is Verdict.COUNTEREXAMPLE for r in records):
        return(EXIT_COUNTEREXAMPLE)
    return(0)


def cmd_config(args) -> int:
    if args.config_mode == "init":
        configure.create_configs(args.path)
    elif args.config_mode == "check":
        configure.print_configs(configure.read_configs(args.path))
    elif args.config_mode == "set":
        configs = configure.read_configs(args.path)
        configure.update_config(args.path, configs, args.key, args.value)
    return(0)


COMMANDS: Dict[str, Callable] = {
    "construct": cmd_construct,
    "rho": cmd_rho,
    "tough": cmd_tough,
    "closure": cmd_closure,
    "hamilton": cmd_hamilton,
    "two-factor": cmd_two_factor,
    "trace": cmd_trace,
    "verify": cmd_verify,
    "scan": cmd_scan,
    "config": cmd_config,
}


def run(argv: Optional[List[str]] = None) -> int:
    """ Run one command-line invocation

    Args:
        argv: Arguments without the program name; sys.argv when omitted.

    Returns:
        The process exit code.
    """
    try:
        args = arg_parser(argv)
    except HamiltonCLTError as err:
        print(err, file=sys.stderr)
        return(err.exit_code)
    except SystemExit as err:
        return(int(err.code or 0))

    setup_logging(args.verbose)
    try:
        return(COMMANDS[args.tool](args))
    except HamiltonCLTError as err:
        logger.error("%s", err)
        return(err.exit_code)


def cli_entry_point():
    """ Entry point for a command line call"""
    try:
        sys.exit(run())
    except (KeyboardInterrupt, EOFError):
        print("\nInterrupted.", file=sys.stderr)
        sys.exit(EXIT_INTERRUPTED)


if __name__ == '__main__':
    cli_entry_point()
