""" Methods to read/write a suite descriptor.

A suite descriptor is a flat key-value text file read with configparser. The
section header may be left out; such a file is read as if it started with
[suite]. Command-line flags override every key.
"""

import configparser
import os
import sys
from dataclasses import dataclass
from typing import Dict, Optional, TextIO, Tuple

from spectral_hamilton_clt.utils import defaults
from spectral_hamilton_clt.utils.errors import UsageError

SECTION = "suite"

DEFAULTS = {"suite": "extremal",
            "n_range": "5..24",
            "samples": "100",
            "seed": "0",
            "output": "",
            "tol": str(defaults.DEFAULT_TOL),
            "limit": str(defaults.PART_SIZE_LIMIT),
            "tough_limit": str(defaults.TOUGHNESS_PART_LIMIT),
            "workers": "1",
            "timings": "false"}


@dataclass(frozen=True)
class SuiteConfig:
    """ Parsed suite descriptor

    Attributes:
        suite: Suite name.
        n_range: Inclusive range of part sizes.
        samples: Number of random instances for sampled suites.
        seed: 64-bit master seed; every task derives its own sub-seed.
        output: Record file (.csv for CSV, anything else JSON lines), or None
            for standard output.
        tol: Power iteration tolerance.
        limit: Largest part size the suite may touch.
        tough_limit: Largest part size the toughness search accepts.
        workers: Worker processes.
        timings: Fill in elapsed microseconds instead of zeros.
        certificates: Directory for certificate sidecars, if any.
        budget: Hamilton search step budget, if any.
    """
    suite: str
    n_range: Tuple[int, int]
    samples: int
    seed: int
    output: Optional[str] = None
    tol: float = defaults.DEFAULT_TOL
    limit: int = defaults.PART_SIZE_LIMIT
    tough_limit: int = defaults.TOUGHNESS_PART_LIMIT
    workers: int = 1
    timings: bool = False
    certificates: Optional[str] = None
    budget: Optional[int] = None

    def sizes(self):
        return(range(self.n_range[0], self.n_range[1] + 1))


def parse_n_range(text: str) -> Tuple[int, int]:
    """ Parse "a..b" or a single integer into an inclusive range."""
    lo, sep, hi = text.strip().partition("..")
    try:
        bounds = (int(lo), int(hi) if sep else int(lo))
    except ValueError as err:
        raise UsageError(f"Cannot parse n range {text!r}; use a..b.") from err
    if bounds[0] < 0 or bounds[0] > bounds[1]:
        raise UsageError(f"Empty or negative n range {text!r}.")
    return(bounds)


def create_configs(config_path: str) -> configparser.ConfigParser:
    """ Write a suite descriptor holding the default value of every key

    Args:
        config_path: Path of the new descriptor.

    Returns:
        configs: The default configuration.
    """
    configs = configparser.ConfigParser()
    configs[SECTION] = dict(DEFAULTS)
    _write(config_path, configs)
    return(configs)


def read_configs(config_path: str) -> configparser.ConfigParser:
    """ Read a suite descriptor from a location.

    Args:
        config_path: Path to the descriptor.

    Returns:
        configs: The descriptor, with a [suite] section.

    Raises:
        UsageError: Missing file, bad syntax or unknown keys.
    """
    if not os.path.isfile(config_path):
        raise UsageError(f"Suite descriptor {config_path} does not exist.")
    with open(config_path) as config_file:
        text = config_file.read()

    first = next((line.strip() for line in text.splitlines()
                  if line.strip() and not line.strip().startswith(("#", ";"))),
                 "")
    if not first.startswith("["):
        text = f"[{SECTION}]\n" + text

    configs = configparser.ConfigParser()
    try:
        configs.read_string(text, source=config_path)
    except configparser.Error as err:
        raise UsageError(f"Cannot parse {config_path}: {err}") from err
    if not configs.has_section(SECTION):
        raise UsageError(f"{config_path} has no [{SECTION}] section.")
    unknown = set(configs[SECTION]) - set(DEFAULTS)
    if unknown:
        raise UsageError(f"Unknown suite keys: {', '.join(sorted(unknown))}.")
    return(configs)


def print_configs(configs: configparser.ConfigParser,
                  stream: Optional[TextIO] = None):
    """ Print out all config properties

    Args:
        configs: Suite descriptor.
        stream: Where to print.
    """
    stream = stream or sys.stdout
    for section in configs.sections():
        print(section, file=stream)
        for prop, val in configs.items(section):
            print(f"{prop}: {val}", file=stream)
        print("", file=stream)


def update_config(config_path: str, configs: configparser.ConfigParser,
                  config_name: str, new_val: str) -> configparser.ConfigParser:
    """ Updates a key to a new value and saves the descriptor

    Args:
        config_path: Path to the descriptor.
        configs: Old descriptor.
        config_name: Key to update.
        new_val: New value.

    Returns:
        configs: Updated descriptor.
    """
    if config_name not in DEFAULTS:
        raise UsageError(f"Unknown suite key {config_name!r}.")
    if not configs.has_section(SECTION):
        configs.add_section(SECTION)
    configs[SECTION][config_name] = new_val
    _write(config_path, configs)
    return(configs)


def _write(config_path: str, configs: configparser.ConfigParser):
    try:
        with open(config_path, "w") as config_file:
            configs.write(config_file)
    except OSError as err:
        raise UsageError(f"Cannot write {config_path}: {err}") from err


def suite_config(configs: Optional[configparser.ConfigParser] = None,
                 overrides: Optional[Dict[str, Optional[str]]] = None,
                 certificates: Optional[str] = None,
                 budget: Optional[int] = None) -> SuiteConfig:
    """ Merge defaults, a descriptor and flag overrides into a SuiteConfig

    Args:
        configs: Descriptor read by read_configs, if any.
        overrides: Key-value pairs from flags; None values are ignored.
        certificates: Certificate directory.
        budget: Hamilton search step budget.
    """
    merged = dict(DEFAULTS)
    if configs is not None and configs.has_section(SECTION):
        merged.update(configs[SECTION])
    for key, value in (overrides or {}).items():
        if value is not None:
            merged[key] = str(value)

    try:
        config = SuiteConfig(
            suite=merged["suite"].strip(),
            n_range=parse_n_range(merged["n_range"]),
            samples=int(merged["samples"]),
            seed=int(merged["seed"], 0),
            output=merged["output"].strip() or None,
            tol=float(merged["tol"]),
            limit=int(merged["limit"]),
            tough_limit=int(merged["tough_limit"]),
            workers=int(merged["workers"]),
            timings=merged["timings"].strip().lower() in {"1", "true", "yes",
                                                          "on"},
            certificates=certificates,
            budget=budget)
    except ValueError as err:
        raise UsageError(f"Bad suite setting: {err}") from err

    if (config.samples < 0 or config.workers < 1 or config.tol <= 0
            or config.tough_limit < 1):
        raise UsageError("samples must be >= 0, workers >= 1, tough_limit "
                         ">= 1 and tol > 0.")
    return(config)
