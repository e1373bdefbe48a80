"""Command-line interface.

Every invocation writes exactly one payload to stdout — JSON except for
``matrix --format grid`` — and keeps diagnostics on stderr. Identical
inputs and flags produce byte-identical stdout (the bench subcommand,
which reports wall-clock times, is the documented exception).

Exit codes: 0 success, 1 domain error (validation failures, unknown
names, malformed documents), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import bench as bench_mod
from .discernibility import build_legacy_matrix, build_matrix
from .errors import CovredError
from .granulation import (
    induced_cover,
    induced_cover_family,
    lower_approx,
    upper_approx,
)
from .ingestion import (
    TableDerivationConfig,
    config_from_document,
    covers_from_table,
    family_to_document,
    parse_cover_file,
    read_csv_table,
    Categorical,
    IntervalBins,
    NumericTolerance,
)
from .model import CoverFamily, is_partition
from .reduction import all_reducts, all_reducts_legacy, brute_force_reducts


class UsageError(Exception):
    """Bad flag combination detected after argparse; exits 2."""


def _read_text(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise CovredError(f"cannot read {path}: {exc.strerror}") from None


def _load_family(args) -> CoverFamily:
    if not args.input:
        raise UsageError("this command requires --input")
    return parse_cover_file(_read_text(args.input))


def _threads(args) -> int:
    if args.threads is not None:
        return args.threads
    try:
        return int(os.environ.get("COVRED_THREADS", "1"))
    except ValueError:
        raise UsageError("COVRED_THREADS must be an integer") from None


def _parse_range(text: str) -> tuple[int, int]:
    try:
        lo, _, hi = text.partition(":")
        lo_i, hi_i = int(lo), int(hi or lo)
    except ValueError:
        raise UsageError(f"expected MIN:MAX, got {text!r}") from None
    if lo_i < 1 or hi_i < lo_i:
        raise UsageError(f"invalid range {text!r}")
    return lo_i, hi_i


def cmd_validate(args):
    family = _load_family(args)
    return {
        "universe_size": family.universe.n,
        "covers": [
            {"name": c.name, "blocks": c.block_labels(), "is_partition": is_partition(c)}
            for c in family.covers
        ],
    }


def _scope_map(family: CoverFamily, scope: str):
    if scope == "family":
        return induced_cover_family(family)
    return induced_cover(family.cover(scope))


def cmd_granulate(args):
    family = _load_family(args)
    nmap = _scope_map(family, args.scope)
    return {
        label: list(nmap.granule_labels(x))
        for x, label in enumerate(family.universe.labels)
    }


def cmd_approx(args):
    family = _load_family(args)
    nmap = _scope_map(family, args.scope)
    labels = [s for s in (t.strip() for t in args.set.split(",")) if s]
    target = family.universe.mask_of_labels(labels)
    return {
        "scope": args.scope,
        "target": list(family.universe.labels_of_mask(target)),
        "lower": list(family.universe.labels_of_mask(lower_approx(nmap, target))),
        "upper": list(family.universe.labels_of_mask(upper_approx(nmap, target))),
    }


def cmd_matrix(args):
    family = _load_family(args)
    threads = _threads(args)
    if args.method == "new":
        matrix = build_matrix(family, threads=threads)
    else:
        matrix = build_legacy_matrix(family, threads=threads)
    if args.format == "grid":
        return matrix.to_grid()
    return matrix.to_payload()


def cmd_reducts(args):
    family = _load_family(args)
    threads = _threads(args)
    if args.method == "matrix":
        result = all_reducts(build_matrix(family, threads=threads))
    elif args.method == "legacy":
        result = all_reducts_legacy(build_legacy_matrix(family, threads=threads))
    else:
        result = brute_force_reducts(family)
    return result.to_payload()


def cmd_cross_check(args):
    return bench_mod.cross_check(
        args.count,
        seed=args.seed,
        n_range=_parse_range(args.n_range),
        m_range=_parse_range(args.m_range),
    )


def _derive_config(args) -> TableDerivationConfig:
    if args.config:
        try:
            doc = json.loads(_read_text(args.config))
        except json.JSONDecodeError as exc:
            raise CovredError(f"config: syntax error at line {exc.lineno}: {exc.msg}") from None
        return config_from_document(doc)
    per = {}
    try:
        for item in args.tolerance or []:
            attr, sep, eps = item.partition("=")
            if not sep or not eps:
                raise UsageError(f"--tolerance expects ATTR=EPS, got {item!r}")
            per[attr] = NumericTolerance(float(eps), mode="absolute")
        for item in args.tolerance_fraction or []:
            attr, sep, eps = item.partition("=")
            if not sep or not eps:
                raise UsageError(f"--tolerance-fraction expects ATTR=FRACTION, got {item!r}")
            per[attr] = NumericTolerance(float(eps), mode="fraction")
        for item in args.bins or []:
            attr, sep, rest = item.partition("=")
            if not sep or not rest:
                raise UsageError(f"--bins expects ATTR=E1,E2,...[:OVERLAP], got {item!r}")
            edges_text, _, overlap = rest.partition(":")
            edges = tuple(float(e) for e in edges_text.split(","))
            per[attr] = IntervalBins(edges, float(overlap) if overlap else 0.0)
    except ValueError as exc:
        raise UsageError(f"bad numeric value in derivation flag: {exc}") from None
    return TableDerivationConfig(Categorical(), per)


def cmd_derive(args):
    if not args.input:
        raise UsageError("this command requires --input")
    table = read_csv_table(_read_text(args.input))
    family = covers_from_table(table, _derive_config(args))
    return family_to_document(family)


def cmd_bench(args):
    if args.repetitions < 3:
        raise UsageError("--repetitions must be at least 3")
    n_values = [int(v) for v in args.n_list.split(",") if v]
    m_values = [int(v) for v in args.m_list.split(",") if v]
    if not n_values or not m_values:
        raise UsageError("--n-list and --m-list must be nonempty")
    report = bench_mod.run_bench(
        n_values, m_values,
        repetitions=args.repetitions,
        seed=args.seed,
        style=args.style,
        density=args.density,
        blocks_range=_parse_range(args.blocks),
        compare_backends=args.compare_backends,
        verify_threads=_threads(args),
    )
    if args.out_csv:
        with open(args.out_csv, "w", encoding="utf-8") as fh:
            fh.write(report.to_csv())
    payload = report.to_json_obj()
    if args.out_json:
        with open(args.out_json, "w", encoding="utf-8") as fh:
            fh.write(json.dumps(payload, indent=2) + "\n")
    return payload


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", "-i", help="path to the input document")
    common.add_argument("--format", choices=("json", "grid"), default="json",
                        help="payload format (grid is matrix-only)")
    common.add_argument("--seed", type=int, default=0, help="PRNG seed")
    common.add_argument("--threads", type=int, default=None,
                        help="worker threads for matrix rows (default: COVRED_THREADS or 1)")

    parser = argparse.ArgumentParser(
        prog="covred",
        description="Attribute reduction over covering rough sets.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common],
                       help="parse and validate a cover-family document")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("granulate", parents=[common],
                       help="per-object granules of one cover or the family")
    p.add_argument("--scope", default="family", help='cover name or "family"')
    p.set_defaults(func=cmd_granulate)

    p = sub.add_parser("approx", parents=[common],
                       help="lower/upper approximation of an object set")
    p.add_argument("--scope", default="family", help='cover name or "family"')
    p.add_argument("--set", required=True, help="comma-separated object labels")
    p.set_defaults(func=cmd_approx)

    p = sub.add_parser("matrix", parents=[common], help="build a discernibility matrix")
    p.add_argument("--method", choices=("new", "legacy"), default="new")
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser("reducts", parents=[common], help="all reducts and the core")
    p.add_argument("--method", choices=("matrix", "legacy", "brute"), default="matrix")
    p.set_defaults(func=cmd_reducts)

    p = sub.add_parser("cross-check", parents=[common],
                       help="compare all reduct routes on random instances")
    p.add_argument("--count", type=int, default=200)
    p.add_argument("--n-range", default="1:8", help="universe size range MIN:MAX")
    p.add_argument("--m-range", default="1:5", help="cover count range MIN:MAX")
    p.set_defaults(func=cmd_cross_check)

    p = sub.add_parser("derive", parents=[common],
                       help="derive a cover family from a CSV table")
    p.add_argument("--config", help="derivation config JSON file")
    p.add_argument("--tolerance", action="append", metavar="ATTR=EPS",
                   help="absolute numeric tolerance for an attribute")
    p.add_argument("--tolerance-fraction", action="append", metavar="ATTR=FRACTION",
                   help="range-relative numeric tolerance for an attribute")
    p.add_argument("--bins", action="append", metavar="ATTR=E1,E2,..[:OVERLAP]",
                   help="interval bins for an attribute")
    p.set_defaults(func=cmd_derive)

    p = sub.add_parser("bench", parents=[common],
                       help="time both matrix builders over an (n, m) grid")
    p.add_argument("--n-list", default="200", help="comma-separated universe sizes")
    p.add_argument("--m-list", default="4,8,16,32", help="comma-separated cover counts")
    p.add_argument("--repetitions", type=int, default=5)
    p.add_argument("--style", choices=bench_mod.STYLES, default="nested")
    p.add_argument("--density", type=float, default=0.5)
    p.add_argument("--blocks", default="5:5", help="blocks-per-cover range MIN:MAX")
    p.add_argument("--compare-backends", action="store_true",
                   help="also time the other kernel backend")
    p.add_argument("--out-csv", help="write rows as CSV to this path")
    p.add_argument("--out-json", help="write the full report to this path")
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        payload = args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except CovredError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if isinstance(payload, str):
        sys.stdout.write(payload)
    else:
        sys.stdout.write(json.dumps(payload, indent=2) + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
