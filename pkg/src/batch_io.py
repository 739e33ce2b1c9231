#!/usr/bin/env python3
# -*- coding: utf-8 -*-

# File: src/batch_io.py

"""
Batch Input/Output Module

This module reads files holding one monomial set per line and turns
decision reports and Cremona classes into tables that can be exported to
Excel or CSV for further analysis.
"""

# Standard library imports
import os
from typing import List, Optional, Sequence, Tuple

# Third-party imports
import pandas as pd

# Local imports
from src.config.logging_config import get_logger
from src.core import MonomialSet, format_monomial_set
from src.cremona import CremonaClass
from src.decide import BirationalityReport
from src.exceptions import ExportFailed, FileNotFound, MonocremError, UnreadableFile
from src.parser import parse_monomials

# Initialize logger
logger = get_logger(__name__)

REPORT_COLUMNS = ["input", "n", "d", "q", "verdict", "criterion", "delta_n", "rank_a"]
CLASS_COLUMNS = ["n", "d", "representative", "canonical_matrix", "tags"]


def read_set_lines(file_path: str) -> List[Tuple[int, str]]:
    """
    Read the non-empty, non-comment lines of a batch file.

    Args:
        file_path: Path to a UTF-8 text file

    Returns:
        List of (line number, stripped text) tuples

    Raises:
        FileNotFound: If the file does not exist
        UnreadableFile: If the path cannot be read or is not valid UTF-8
    """
    if not os.path.exists(file_path):
        error_msg = f"Input file not found: {file_path}"
        logger.error(error_msg)
        raise FileNotFound(error_msg)

    lines = []
    number = 0
    try:
        with open(file_path, "rb") as handle:
            for number, raw in enumerate(handle, start=1):
                text = raw.decode("utf-8").strip()
                if text and not text.startswith("#"):
                    lines.append((number, text))
    except UnicodeDecodeError as e:
        error_msg = f"Line {number} of {file_path} is not valid UTF-8: {e.reason}"
        logger.error(error_msg)
        raise UnreadableFile(error_msg) from e
    except OSError as e:
        error_msg = f"Cannot read {file_path}: {e.strerror or e}"
        logger.error(error_msg)
        raise UnreadableFile(error_msg) from e

    logger.debug(f"Read {len(lines)} set(s) from {file_path}")
    return lines



def load_monomial_sets(
    file_path: str, n: Optional[int] = None
) -> List[Tuple[str, MonomialSet]]:
    """
    Parse one monomial set per line.

    Blank lines and lines starting with '#' are skipped.

    Args:
        file_path: Path to a UTF-8 text file
        n: Number of variables for every line (inferred per line if None)

    Returns:
        List of (line text, MonomialSet) tuples in file order

    Raises:
        FileNotFound: If the file does not exist
        UnreadableFile: If the file cannot be read as UTF-8 text
        MonocremError: If a line is invalid; the message names the line
    """
    logger.info(f"Loading monomial sets from: {file_path}")
    sets = []
    for number, text in read_set_lines(file_path):
        try:
            sets.append((text, parse_monomials(text, n, origin="file")))
        except MonocremError as e:
            error_msg = f"Line {number}: {e.message}"
            logger.error(error_msg)
            raise type(e)(error_msg, position=e.position) from e
    logger.info(f"Successfully loaded {len(sets)} monomial set(s)")
    return sets


def reports_to_frame(
    texts: Sequence[str], reports: Sequence[BirationalityReport]
) -> pd.DataFrame:
    """
    Tabulate decision reports, one row per set.

    Args:
        texts: Input text of each set
        reports: Report of each set, same order

    Returns:
        DataFrame with the REPORT_COLUMNS columns
    """
    rows = []
    for text, report in zip(texts, reports):
        rows.append(
            {
                "input": text,
                "n": report.n,
                "d": report.d,
                "q": report.q,
                "verdict": report.verdict.value,
                "criterion": report.criterion.value,
                "delta_n": report.certificates.delta_n,
                "rank_a": report.certificates.rank_a,
            }
        )
    return pd.DataFrame(rows, columns=REPORT_COLUMNS)


def classes_to_frame(classes: Sequence[CremonaClass]) -> pd.DataFrame:
    """
    Tabulate Cremona classes, one row per class.

    Matrices are written row by row as 'a b c; d e f'.
    """
    rows = []
    for cremona_class in classes:
        matrix_text = "; ".join(
            " ".join(row) for row in cremona_class.canonical_matrix.to_strings()
        )
        rows.append(
            {
                "n": cremona_class.n,
                "d": cremona_class.d,
                "representative": format_monomial_set(cremona_class.representative),
                "canonical_matrix": matrix_text,
                "tags": ",".join(sorted(cremona_class.tags)),
            }
        )
    return pd.DataFrame(rows, columns=CLASS_COLUMNS)


def export_frame(df: pd.DataFrame, output_path: str) -> str:
    """
    Export a table to Excel (.xlsx) or CSV (any other extension).

    Args:
        df: Table to export
        output_path: Destination file

    Returns:
        Path to the created file

    Raises:
        ExportFailed: If writing fails
    """
    try:
        # Create directory if it doesn't exist
        output_dir = os.path.dirname(output_path)
        if output_dir and not os.path.exists(output_dir):
            os.makedirs(output_dir)

        if output_path.lower().endswith(".xlsx"):
            df.to_excel(output_path, index=False, engine="openpyxl")
        else:
            df.to_csv(output_path, index=False)
        logger.info(f"Successfully exported {len(df)} rows to {output_path}")

        return output_path

    except Exception as e:
        error_msg = f"Error exporting to {output_path}: {str(e)}"
        logger.error(error_msg)
        raise ExportFailed(error_msg) from e
