""" Record tables: emission and summaries

Verification records are collected into pandas DataFrames. They are written
as CSV or JSON lines, and a grid summary is printed for people reading the
error stream.
"""

import sys
from pathlib import Path
from typing import Any, Dict, Iterable, Optional, TextIO

import pandas as pd

from spectral_hamilton_clt.utils.errors import UsageError
from spectral_hamilton_clt.verify.pipeline import (RECORD_COLUMNS,
                                                   VerificationRecord)

DataFrame = pd.DataFrame


def print_table(db: DataFrame, stream: Optional[TextIO] = None,
                show_index: bool = False):
    """ Print a DataFrame as a formatted grid table

    Args:
        db: DataFrame to print.
        stream: Where to print; the error stream unless told otherwise.
        show_index: Flag to include the index of the DataFrame in the output.
    """
    print("\n" + db.to_markdown(tablefmt='grid', index=show_index) + "\n",
          file=stream or sys.stderr)


def records_frame(records: Iterable[VerificationRecord],
                  summary: Optional[Dict[str, Any]] = None) -> DataFrame:
    """ One row per record in RECORD_COLUMNS order, summary row last."""
    rows = [record.to_row() for record in records]
    if summary is not None:
        rows.append(summary)
    return(pd.DataFrame(rows, columns=RECORD_COLUMNS))


def render_records(db: DataFrame, fmt: str) -> str:
    """ Serialise a record table as "csv" or "jsonl"."""
    if fmt == "csv":
        return(db.to_csv(index=False, lineterminator="\n"))
    if db.empty:
        return("")
    text = db.to_json(orient="records", lines=True)
    return(text.rstrip("\n") + "\n")


def record_format(path: Optional[str]) -> str:
    if path is not None and Path(path).suffix.lower() == ".csv":
        return("csv")
    return("jsonl")


def write_records(db: DataFrame, path: Optional[str],
                  stream: Optional[TextIO] = None):
    """ Write the record table to path (format by suffix) or to stream

    Raises:
        UsageError: The path cannot be written.
    """
    text = render_records(db, record_format(path))
    if path is None:
        (stream or sys.stdout).write(text)
        return
    try:
        Path(path).write_text(text)
    except OSError as err:
        raise UsageError(f"Cannot write records to {path}: {err}") from err


def check_writable(path: Optional[str]):
    """ Fail early when the parent directory of path does not exist."""
    if path is None:
        return
    parent = Path(path).parent
    if not parent.is_dir():
        raise UsageError(f"Output directory {parent} does not exist.")


def grid_summary(db: DataFrame) -> DataFrame:
    """ Record counts, failures and the worst deviation per check and verdict."""
    rows = db[db["hash"] != "summary"]
    if rows.empty:
        return(pd.DataFrame(columns=["check", "verdict", "records", "failed",
                                     "max_deviation"]))
    rows = rows.assign(failed=~rows["passed"].astype(bool))
    grouped = rows.groupby(["check", "verdict"], sort=True)
    summary = grouped.agg(records=("hash", "size"),
                          failed=("failed", "sum"),
                          max_deviation=("deviation", "max"))
    return(summary.reset_index())
