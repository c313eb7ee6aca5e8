"""
gyrolab-lite command line.

Reports go to stdout as JSON; diagnostics go to stderr. Exit codes:
0 every requested check passed, 1 a property failure or finding, 2 usage or
input error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Optional, Sequence

from . import __version__
from .axioms import check_identity_suite, check_right_cancellation, verify_axioms
from .context import GyroContext
from .exceptions import GyroError, format_exception_details
from .gensearch import SearchConfig, search_L_not_SL
from .gyrotable import GyroTable, load_table_file
from .logsetup import setup_logging
from .models import ModelKind, model_identity_sampler
from .quotient import quotient_report
from .subgyro import classify_subset, enumerate_subgyrogroups, is_subgyrogroup

logger = logging.getLogger("gyrolab-lite")

EXIT_OK = 0
EXIT_FINDING = 1
EXIT_USAGE = 2


def positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value <= 0:
        raise argparse.ArgumentTypeError(f"must be positive: {value}")
    return value


def positive_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if value <= 0:
        raise argparse.ArgumentTypeError(f"must be positive: {value}")
    return value


def parse_subset(G: GyroTable, text: str):
    try:
        elements = [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError as e:
        raise GyroError(f"subset must be comma-separated integers: {text!r}", cause=e) from e
    return G.mask(elements)


def emit(report: Any) -> None:
    sys.stdout.write(json.dumps(report, indent=2, ensure_ascii=False) + "\n")
    sys.stdout.flush()


def _load(args: argparse.Namespace, ctx: GyroContext) -> GyroTable:
    return load_table_file(args.file, eager_cache_limit=ctx.eager_cache_limit)


# ============================================================================
# COMMANDS
# ============================================================================

def cmd_verify(args: argparse.Namespace, ctx: GyroContext) -> int:
    G = _load(args, ctx)
    axioms = verify_axioms(G)
    identities = check_identity_suite(G)
    right = check_right_cancellation(G)
    emit({
        "order": G.order,
        "axioms": axioms.to_dict(),
        "identities": identities.to_dict(),
        "right_cancellation": right.to_dict(),
    })
    ok = axioms.ok and identities.ok and right.ok
    return EXIT_OK if ok else EXIT_FINDING


def cmd_classify(args: argparse.Namespace, ctx: GyroContext) -> int:
    G = _load(args, ctx)
    if args.all:
        subsets = enumerate_subgyrogroups(G, ctx.subset_scan_bound, ctx.closure_pool_size)
        results = [classify_subset(G, H) for H in subsets]
        findings = [r.subset.elements() for r in results if r.is_L_not_strongly_L]
        emit({
            "order": G.order,
            "subgyrogroups": [r.to_dict() for r in results],
            "counts": {
                "subgyrogroups": len(results),
                "L": sum(r.is_L for r in results),
                "strongly_L": sum(r.is_strongly_L for r in results),
                "normal_sufficient": sum(r.is_normal_sufficient for r in results),
            },
            "L_not_strongly_L": findings,
        })
        return EXIT_FINDING if findings else EXIT_OK

    H = parse_subset(G, args.subset)
    check = is_subgyrogroup(G, H)
    if not check:
        emit({"subset": H.elements(), "flags": {"subgyrogroup": False}, "subgyrogroup": check.to_dict()})
        return EXIT_FINDING
    result = classify_subset(G, H)
    report = result.to_dict()
    report["subgyrogroup"] = check.to_dict()
    emit(report)
    return EXIT_FINDING if result.is_L_not_strongly_L else EXIT_OK


def cmd_quotient(args: argparse.Namespace, ctx: GyroContext) -> int:
    G = _load(args, ctx)
    H = parse_subset(G, args.subset)
    check = is_subgyrogroup(G, H)
    if not check:
        emit({"subgroup": H.elements(), "subgyrogroup": check.to_dict()})
        return EXIT_FINDING
    seed = args.seed if args.seed is not None else ctx.seed
    report, ok = quotient_report(G, H, seed=seed, p_samples=args.p_samples, v_samples=args.v_samples)
    emit(report)
    return EXIT_OK if ok else EXIT_FINDING


def cmd_models(args: argparse.Namespace, ctx: GyroContext) -> int:
    report = model_identity_sampler(
        args.model,
        samples=args.samples,
        tol=args.tol if args.tol is not None else ctx.tolerance,
        seed=args.seed if args.seed is not None else ctx.seed,
        workers=ctx.workers,
        chunk_size=ctx.chunk_size,
        radius_cap=ctx.radius_cap,
        dual_path_tol=ctx.dual_path_tolerance,
    )
    emit(report.to_dict())
    return EXIT_OK if report.ok else EXIT_FINDING


def cmd_search(args: argparse.Namespace, ctx: GyroContext) -> int:
    catalog = args.catalog or (str(ctx.catalog_dir) if ctx.catalog_dir else None)
    config = SearchConfig(
        max_order=args.max_order or ctx.exhaustive_order,
        worker_count=ctx.workers,
        output_path=catalog,
        catalog_dir=catalog,
        allow_large=args.allow_large,
        exhaustive_order=ctx.exhaustive_order,
    )
    result = search_L_not_SL(config, subset_scan_bound=ctx.subset_scan_bound, canonical_limit=ctx.canonical_limit)
    emit(result.summary)
    return EXIT_FINDING if result.witness else EXIT_OK


COMMANDS = {
    "verify": cmd_verify,
    "classify": cmd_classify,
    "quotient": cmd_quotient,
    "models": cmd_models,
    "search": cmd_search,
}


# ============================================================================
# PARSER
# ============================================================================

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--debug', action='store_true', help='Enable debug logging')
    common.add_argument('--config', type=Path, default=None,
                        help='JSON settings file (default: config/gyrolab.json or $GYROLAB_CONFIG)')

    parser = argparse.ArgumentParser(
        prog='gyrolab-lite',
        description='gyrolab-lite - finite and model gyrogroup verification engine',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  gyrolab-lite verify catalog/g8.json                 # Axioms + identity suite
  gyrolab-lite classify z4.txt --subset 0,2           # Subgyrogroup hierarchy flags
  gyrolab-lite classify catalog/g8.json --all         # Every subgyrogroup
  gyrolab-lite quotient catalog/g8.json --subset 0,1,2,3
  gyrolab-lite models --model einstein --samples 10000
  gyrolab-lite search --max-order 6 --catalog catalog
        """
    )
    parser.add_argument('--version', action='version', version=f'%(prog)s {__version__}')
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('verify', parents=[common], help='Certify axioms and run the identity suite')
    p.add_argument('file', type=Path, help='Table file (.json or text)')

    p = sub.add_parser('classify', parents=[common], help='Classify one subset or all subgyrogroups')
    p.add_argument('file', type=Path)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument('--subset', help='Comma-separated elements, e.g. 0,2')
    group.add_argument('--all', action='store_true', help='Classify every subgyrogroup')

    p = sub.add_parser('quotient', parents=[common], help='Build G/H and run the quotient checks')
    p.add_argument('file', type=Path)
    p.add_argument('--subset', required=True, help='Comma-separated elements of H')
    p.add_argument('--seed', type=int, default=None, help='Seed for sampled subsets')
    p.add_argument('--p-samples', type=positive_int, default=50,
                   help='Random symmetric subsets for the intersection identity (default: 50)')
    p.add_argument('--v-samples', type=positive_int, default=100,
                   help='Random subsets for saturation and pull-back checks (default: 100)')

    p = sub.add_parser('models', parents=[common], help='Sample the identity suite on a continuous model')
    p.add_argument('--model', choices=[k.value for k in ModelKind], default=ModelKind.MOBIUS.value)
    p.add_argument('--samples', type=positive_int, default=10000)
    p.add_argument('--tol', type=positive_float, default=None)
    p.add_argument('--seed', type=int, default=None)
    p.add_argument('--workers', type=positive_int, default=None)

    p = sub.add_parser('search', parents=[common], help='Search small orders for an L but not strongly-L subgyrogroup')
    p.add_argument('--max-order', type=positive_int, default=None)
    p.add_argument('--catalog', default=None, help='Catalog directory to scan and to write generated classes into')
    p.add_argument('--workers', type=positive_int, default=None)
    p.add_argument('--allow-large', action='store_true', help='Permit orders above the exhaustive bound')
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    setup_logging(args.debug)

    try:
        ctx = GyroContext.load(args.config).with_overrides(workers=getattr(args, 'workers', None))
        return COMMANDS[args.command](args, ctx)
    except GyroError as e:
        e.log()
        sys.stderr.write(json.dumps(e.to_dict()) + "\n")
        if args.debug:
            logger.debug(format_exception_details(e)["traceback"])
        return EXIT_USAGE
    except (OSError, ValueError) as e:
        logger.error(f"{type(e).__name__}: {e}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
