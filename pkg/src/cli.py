#!/usr/bin/env python3
# -*- coding: utf-8 -*-

# File: src/cli.py

"""
Command Line Interface

Usage examples:
    monocrem decide "x1x2, x3x4"
    monocrem decide --file sets.txt --export results.xlsx
    monocrem graph --file sets.txt
    monocrem classify --n 5 --d 3 --jobs 4
    monocrem classify --n 6 --db
    monocrem syzygies "x1*x2, x1*x3, x2*x3" --taylor

Every command prints one JSON object (keys sorted) on standard output.
Errors print {"code", "message", "position"?} and exit with status 1.
Logs go to standard error.
"""

# Standard library imports
import argparse
import json
import sys
from typing import Any, Callable, Dict, List, Optional, Tuple

# Local imports
from src.batch_io import (
    classes_to_frame,
    export_frame,
    load_monomial_sets,
    reports_to_frame,
)
from src.config.logging_config import (
    capture_exceptions,
    get_logger,
    setup_logging,
    verbosity_level,
)
from src.config.settings import load_settings
from src.core import (
    MonomialSet,
    dual_complement,
    format_monomial,
    format_monomial_set,
    is_cohesive,
    log_matrix,
    normalize,
)
from src.cremona import (
    classify_db_squarefree_cremona,
    classify_squarefree_cremona,
    degree2_cremona_shape,
    duality_check,
    is_cremona_set,
    is_doubly_stochastic,
)
from src.decide import (
    decide,
    degree2_decide,
    degree2_graph,
    sufficient_reports,
)
from src.exactla import rank
from src.exceptions import MonocremError, PreconditionViolated
from src.parser import parse_monomials
from src.polymatroid import (
    has_linear_quotients_revlex,
    is_polymatroidal,
    revlex_sorted,
    sufficient_polymatroidal,
)
from src.termmat import (
    difference_matrix_and_digraph,
    linear_syzygy_matrix,
    specialize_ones,
    taylor_matrix,
    taylor_minor_audit,
    term_rank,
)

# Initialize logger
logger = get_logger(__name__)


def _verdict_value(verdict) -> Optional[str]:
    return verdict.value if verdict is not None else None


def _normalized(monomial_set: MonomialSet) -> MonomialSet:
    if monomial_set.is_normalized:
        return monomial_set
    logger.warning("Input is not normalized; using its normalization")
    return normalize(monomial_set)


def _load_sets(args: argparse.Namespace) -> List[Tuple[str, MonomialSet]]:
    """Return (text, set) pairs from --file or the positional argument."""
    if args.file:
        return load_monomial_sets(args.file, args.n)
    if not args.monomials:
        error_msg = f"{args.command} needs a monomial set or --file"
        logger.error(error_msg)
        raise PreconditionViolated(error_msg)
    return [(args.monomials, parse_monomials(args.monomials, args.n))]


def _for_each_set(
    args: argparse.Namespace,
    describe: Callable[[MonomialSet, argparse.Namespace], Dict[str, Any]],
) -> Dict[str, Any]:
    loaded = _load_sets(args)
    if not args.file:
        return describe(loaded[0][1], args)
    return {
        "results": [
            {**describe(monomial_set, args), "input": text} for text, monomial_set in loaded
        ]
    }


def command_decide(args: argparse.Namespace) -> Dict[str, Any]:
    settings = load_settings()
    loaded = _load_sets(args)
    texts = [text for text, _ in loaded]
    reports = [decide(monomial_set, settings) for _, monomial_set in loaded]
    if args.export:
        export_frame(reports_to_frame(texts, reports), args.export)

    if not args.file:
        return {"input": format_monomial_set(loaded[0][1]), **reports[0].to_dict()}
    return {
        "results": [
            {"input": text, **report.to_dict()} for text, report in zip(texts, reports)
        ]
    }


def describe_cremona(monomial_set: MonomialSet, args: argparse.Namespace) -> Dict[str, Any]:
    monomial_set = _normalized(monomial_set)
    payload: Dict[str, Any] = {
        "input": format_monomial_set(monomial_set),
        "is_cremona": is_cremona_set(monomial_set),
        "shape": None,
        "doubly_stochastic": None,
    }
    if monomial_set.q == monomial_set.n:
        payload["doubly_stochastic"] = is_doubly_stochastic(monomial_set)
        if monomial_set.d == 2 and is_cohesive(monomial_set):
            payload["shape"] = degree2_cremona_shape(monomial_set).value
    return payload


def command_classify(args: argparse.Namespace) -> Dict[str, Any]:
    if args.db:
        classes = classify_db_squarefree_cremona(
            args.n, jobs=args.jobs, progress=args.progress, prune=not args.no_prune
        )
    else:
        if args.d is None:
            error_msg = "classify needs --d unless --db is given"
            logger.error(error_msg)
            raise PreconditionViolated(error_msg)
        classes = classify_squarefree_cremona(
            args.n, args.d, jobs=args.jobs, progress=args.progress
        )
    if args.export:
        export_frame(classes_to_frame(classes), args.export)
    return {
        "n": args.n,
        "d": args.d,
        "db": args.db,
        "count": len(classes),
        "classes": [cremona_class.to_dict() for cremona_class in classes],
    }


def describe_dual(monomial_set: MonomialSet, args: argparse.Namespace) -> Dict[str, Any]:
    dual = dual_complement(monomial_set)
    duality = None
    if monomial_set.q == monomial_set.n and 1 <= monomial_set.d <= monomial_set.n - 1:
        duality = duality_check(monomial_set).to_dict()
    return {
        "input": format_monomial_set(monomial_set),
        "dual": format_monomial_set(dual),
        "dual_degree": dual.d,
        "duality": duality,
    }


def describe_syzygies(monomial_set: MonomialSet, args: argparse.Namespace) -> Dict[str, Any]:
    syzygies = linear_syzygy_matrix(monomial_set)
    differences, components = difference_matrix_and_digraph(monomial_set)
    payload: Dict[str, Any] = {
        "input": format_monomial_set(monomial_set),
        "LS": syzygies.to_strings(),
        "S": specialize_ones(syzygies).to_strings(),
        "M": differences.to_strings(),
        "rank_a": rank(log_matrix(monomial_set)),
        "rank_ls": term_rank(syzygies),
        "rank_m": rank(differences),
        "components": components,
        "sufficient": [],
    }
    if monomial_set.is_normalized:
        payload["sufficient"] = [
            report.to_dict() for report in sufficient_reports(monomial_set)
        ]
    if args.taylor:
        payload["taylor"] = taylor_matrix(monomial_set).to_strings()
        payload["taylor_audit"] = taylor_minor_audit(
            monomial_set, max_size=args.max_minor
        ).to_dict()
    return payload


def describe_polymatroid(monomial_set: MonomialSet, args: argparse.Namespace) -> Dict[str, Any]:
    return {
        "input": format_monomial_set(monomial_set),
        "polymatroidal": is_polymatroidal(monomial_set),
        "linear_quotients_revlex": has_linear_quotients_revlex(monomial_set),
        "revlex_order": [format_monomial(m) for m in revlex_sorted(monomial_set)],
        "sufficient": _verdict_value(sufficient_polymatroidal(monomial_set)),
    }


def describe_graph(monomial_set: MonomialSet, args: argparse.Namespace) -> Dict[str, Any]:
    payload: Dict[str, Any] = {
        "input": format_monomial_set(monomial_set),
        **degree2_graph(monomial_set).to_dict(),
        "verdict": None,
        "shape": None,
    }
    if monomial_set.is_normalized:
        payload["verdict"] = degree2_decide(monomial_set).verdict.value
        if monomial_set.q == monomial_set.n and is_cohesive(monomial_set):
            payload["shape"] = degree2_cremona_shape(monomial_set).value
    return payload


SET_DESCRIBERS = {
    "cremona": describe_cremona,
    "dual": describe_dual,
    "syzygies": describe_syzygies,
    "polymatroid": describe_polymatroid,
    "graph": describe_graph,
}


def build_parser() -> argparse.ArgumentParser:
    """Build the argument parser with one subcommand per operation group."""
    parser = argparse.ArgumentParser(
        prog="monocrem",
        description="Birationality of monomial maps and Cremona sets",
    )
    parser.add_argument(
        "-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG"
    )
    parser.add_argument("--log-dir", default=None, help="Also write logs to this directory")

    subparsers = parser.add_subparsers(dest="command", required=True)

    set_parent = argparse.ArgumentParser(add_help=False)
    set_parent.add_argument("monomials", nargs="?", help='e.g. "x1*x2, x1*x3, x2*x3"')
    set_parent.add_argument("--file", help="Batch file, one set per line")
    set_parent.add_argument("--n", type=int, default=None, help="Number of variables")

    decide_parser = subparsers.add_parser(
        "decide", parents=[set_parent], help="Decide birationality"
    )
    decide_parser.add_argument("--export", help="Write a .xlsx or .csv table")

    for name, help_text in [
        ("cremona", "Cremona predicate and degree-2 shape"),
        ("dual", "Dual complement and duality identity"),
        ("polymatroid", "Exchange property and linear quotients"),
        ("graph", "Degree-2 graph facts"),
    ]:
        subparsers.add_parser(name, parents=[set_parent], help=help_text)

    syzygies_parser = subparsers.add_parser(
        "syzygies", parents=[set_parent], help="Linear syzygy and difference matrices"
    )
    syzygies_parser.add_argument("--taylor", action="store_true", help="Add the Taylor matrix")
    syzygies_parser.add_argument(
        "--max-minor", type=int, default=3, help="Largest Taylor minor to audit"
    )

    classify_parser = subparsers.add_parser(
        "classify", help="Classify squarefree Cremona sets"
    )
    classify_parser.add_argument("--n", type=int, required=True)
    classify_parser.add_argument("--d", type=int, default=None)
    classify_parser.add_argument("--db", action="store_true", help="DB sets over all degrees")
    classify_parser.add_argument(
        "--no-prune", action="store_true", help="With --db, also search gcd(n, d) > 1"
    )
    classify_parser.add_argument("--jobs", type=int, default=None, help="Worker processes")
    classify_parser.add_argument("--progress", action="store_true", help="Show a progress bar")
    classify_parser.add_argument("--export", help="Write a .xlsx or .csv table")

    return parser


def _emit(payload: Dict[str, Any]) -> None:
    sys.stdout.write(json.dumps(payload, sort_keys=True) + "\n")


def run(argv: Optional[List[str]] = None) -> int:
    """
    Parse arguments, run one command and print its JSON report.

    Args:
        argv: Arguments without the program name (sys.argv[1:] if None)

    Returns:
        Exit code: 0 on success, 1 on a reported error
    """
    args = build_parser().parse_args(argv)

    setup_logging(log_level=verbosity_level(args.verbose), log_dir=args.log_dir)

    try:
        if args.command in SET_DESCRIBERS:
            _emit(_for_each_set(args, SET_DESCRIBERS[args.command]))
        elif args.command == "decide":
            _emit(command_decide(args))
        else:
            _emit(command_classify(args))
        return 0
    except MonocremError as e:
        _emit(e.to_dict())
    return 1


def main() -> None:
    capture_exceptions()
    sys.exit(run())


if __name__ == "__main__":
    main()
