""" Command-line argument parsing module

Provides command-line argument parsing functionality using argparse. Parse
errors raise UsageError instead of exiting, so the entry point maps every
failure to an exit code in one place.
"""

import argparse
from typing import List, Optional

from spectral_hamilton_clt.utils import defaults
from spectral_hamilton_clt.utils.errors import UsageError
from spectral_hamilton_clt.utils.graph_io import FORMATS


class ArgumentParser(argparse.ArgumentParser):
    """ argparse parser that raises UsageError on bad arguments."""

    def error(self, message: str):
        raise UsageError(f"{self.prog}: {message}")


def arg_parser(argv: Optional[List[str]] = None) -> argparse.Namespace:
    """ Parse command-line arguments

    Args:
        argv: Arguments without the program name; sys.argv when omitted.

    Returns:
        The parsed namespace; `tool` names the subcommand.
    """
    parser = ArgumentParser(prog="spechamilton",
                            description="Spectral Hamiltonicity tools for "
                                        "balanced bipartite graphs")
    parser.add_argument("-v", "--verbose", action="store_true",
                        help="Log debug messages to the error stream")

    subparsers = parser.add_subparsers(help="Top-level commands", dest="tool",
                                       parser_class=ArgumentParser)
    subparsers.required = True

    add_construct_parser(subparsers)
    add_graph_parsers(subparsers)
    add_hamilton_parser(subparsers)
    add_verify_parser(subparsers)
    add_scan_parser(subparsers)
    add_config_parser(subparsers)

    return(parser.parse_args(argv))


def add_io_arguments(parser, with_input: bool = True):
    """ Input, format and output flags shared by the graph commands."""
    if with_input:
        parser.add_argument("-i", "--input", default="-",
                            help="Graph file, inline spec (gnn:<n>, "
                                 "complete:<m>,<n>) or - for stdin")
    parser.add_argument("--format", choices=FORMATS, default=None,
                        help="Graph format; guessed from the input when "
                             "omitted, graph6 for output")
    parser.add_argument("-o", "--output", default=None,
                        help="Write data to OUTPUT instead of stdout")
    parser.add_argument("--limit", type=int, default=defaults.PART_SIZE_LIMIT,
                        help="Largest accepted part size (default "
                             f"{defaults.PART_SIZE_LIMIT})")


def add_tough_limit_argument(parser):
    """ Part-size cap for the exponential toughness search."""
    parser.add_argument("--tough-limit", dest="tough_limit", type=int,
                        default=defaults.TOUGHNESS_PART_LIMIT,
                        help="Largest part size the toughness search accepts "
                             f"(default {defaults.TOUGHNESS_PART_LIMIT})")


def add_construct_parser(subparser):
    """ Prepares the graph-family construction parser

    Args:
        subparser (Subparser): Parent subparser object
    """
    construct_parser = subparser.add_parser("construct",
                                            help="Emit a named graph")
    construct_parser.add_argument("spec", help="gnn:<n> or complete:<m>,<n>")
    add_io_arguments(construct_parser, with_input=False)


def add_graph_parsers(subparser):
    """ Prepares the single-graph analysis parsers

    Args:
        subparser (Subparser): Parent subparser object
    """
    rho_parser = subparser.add_parser("rho", help="Spectral radius")
    add_io_arguments(rho_parser)
    rho_parser.add_argument("--tol", type=float, default=defaults.DEFAULT_TOL,
                            help="Power iteration tolerance (default "
                                 f"{defaults.DEFAULT_TOL})")

    tough_parser = subparser.add_parser("tough", help="Bipartite toughness")
    add_io_arguments(tough_parser)
    tough_parser.add_argument("--one-tough", action="store_true",
                              help="Only decide whether the graph is 1-tough")
    add_tough_limit_argument(tough_parser)

    closure_parser = subparser.add_parser("closure",
                                          help="Bipartite closure")
    add_io_arguments(closure_parser)

    factor_parser = subparser.add_parser("two-factor",
                                         help="Find a 2-factor")
    add_io_arguments(factor_parser)

    trace_parser = subparser.add_parser("trace",
                                        help="Replay the case analysis")
    add_io_arguments(trace_parser)
    trace_parser.add_argument("--budget", type=int, default=None,
                              help="Step budget for fallback searches")


def add_hamilton_parser(subparser):
    """ Prepares the Hamilton cycle search parser

    Args:
        subparser (Subparser): Parent subparser object
    """
    hamilton_parser = subparser.add_parser("hamilton",
                                           help="Find a Hamilton cycle")
    add_io_arguments(hamilton_parser)
    hamilton_parser.add_argument("--closure-first", action="store_true",
                                 help="Search the closure and lift the cycle")
    hamilton_parser.add_argument("--budget", type=int, default=None,
                                 help="Search step budget")


def add_verify_parser(subparser):
    """ Prepares the suite runner parser

    Every flag left unset falls back to the suite descriptor, then to the
    built-in defaults.

    Args:
        subparser (Subparser): Parent subparser object
    """
    verify_parser = subparser.add_parser("verify", help="Run a named suite")
    verify_parser.add_argument("--config", default=None,
                               help="Suite descriptor file")
    verify_parser.add_argument("--suite", default=None, help="Suite name")
    verify_parser.add_argument("--n-range", dest="n_range", default=None,
                               help="Part sizes, a..b")
    verify_parser.add_argument("--samples", type=int, default=None,
                               help="Random instances per sampled suite")
    verify_parser.add_argument("--seed", type=int, default=None,
                               help="64-bit master seed")
    verify_parser.add_argument("--tol", type=float, default=None,
                               help="Power iteration tolerance")
    verify_parser.add_argument("--limit", type=int, default=None,
                               help="Largest part size")
    verify_parser.add_argument("--tough-limit", dest="tough_limit", type=int,
                               default=None,
                               help="Largest part size for the toughness "
                                    "search")
    verify_parser.add_argument("-o", "--output", default=None,
                               help="Record file (.csv or JSON lines)")
    verify_parser.add_argument("--workers", type=int, default=None,
                               help="Worker processes")
    verify_parser.add_argument("--timings", action="store_true", default=None,
                               help="Record elapsed microseconds")
    verify_parser.add_argument("--certificates", default=None,
                               help="Directory for certificate sidecars")
    verify_parser.add_argument("--budget", type=int, default=None,
                               help="Hamilton search step budget")


def add_scan_parser(subparser):
    """ Prepares the batch classification parser

    Args:
        subparser (Subparser): Parent subparser object
    """
    scan_parser = subparser.add_parser("scan",
                                       help="Classify every graph6 line")
    scan_parser.add_argument("-i", "--input", default="-",
                             help="graph6 file, one graph per line, or -")
    scan_parser.add_argument("-o", "--output", default=None,
                             help="Record file (.csv or JSON lines)")
    scan_parser.add_argument("--tol", type=float, default=defaults.DEFAULT_TOL,
                             help="Power iteration tolerance")
    scan_parser.add_argument("--limit", type=int,
                             default=defaults.PART_SIZE_LIMIT,
                             help="Largest accepted part size")
    scan_parser.add_argument("--budget", type=int, default=None,
                             help="Hamilton search step budget")
    add_tough_limit_argument(scan_parser)


def add_config_parser(subparser):
    """ Prepares the suite descriptor parser

    Args:
        subparser (Subparser): Parent subparser object
    """
    cfg_parser = subparser.add_parser("config",
                                      help="Create, check or update a suite "
                                           "descriptor")
    cfg_subparser = cfg_parser.add_subparsers(help="Descriptor action",
                                              dest="config_mode",
                                              parser_class=ArgumentParser)
    cfg_subparser.required = True

    init_parser = cfg_subparser.add_parser("init",
                                           help="Write the default descriptor")
    init_parser.add_argument("path", help="Descriptor path")

    check_parser = cfg_subparser.add_parser("check",
                                            help="Print a descriptor")
    check_parser.add_argument("path", help="Descriptor path")

    set_parser = cfg_subparser.add_parser("set", help="Update one key")
    set_parser.add_argument("path", help="Descriptor path")
    set_parser.add_argument("key", help="Key to update")
    set_parser.add_argument("value", help="New value")
