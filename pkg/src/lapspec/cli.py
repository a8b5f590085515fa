"""Command-line surface.

Subcommands: the six campaign kinds (esd, max-diag, max-eig, block,
bounds, ratio) plus moments, gen, and replay. Campaigns write records
CSV to --out (default standard output) and always write a JSON manifest
alongside (--manifest, default derived from --out). Diagnostics go to
standard error; data goes to files or standard output only.

Exit codes: 0 success, 2 usage/configuration error, 1 runtime failure.
"""

import argparse
import json
import math
import sys

from ._version import __version__
from .experiments import (
    ExperimentConfig,
    manifest_to_json,
    records_to_csv,
    replay,
    run,
)
from .laws import gamma_m_moment
from .linalg import EigensolverError
from .models import BlockSpec, sample_block_laplacian, scale_matrix, dump_matrix
from .extremes import bound_lower, bound_upper

_DISTS = ("gaussian", "rademacher", "uniform")


def _uint64(text):
    value = int(text)
    if not 0 <= value < 1 << 64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return value


def _add_campaign_flags(p, *, with_k=False, with_esd=False, reps_required=True):
    p.add_argument("--n", type=int, required=True, help="matrix order")
    p.add_argument(
        "--reps",
        type=int,
        required=reps_required,
        default=None,
        help="number of Monte Carlo replicates",
    )
    p.add_argument(
        "--seed", type=_uint64, default=0, help="64-bit master seed (default 0)"
    )
    p.add_argument(
        "--dist",
        choices=_DISTS,
        default="gaussian",
        help="entry distribution (default gaussian)",
    )
    if with_k:
        p.add_argument("--k", type=int, required=True, help="number of diagonal blocks")
    p.add_argument(
        "--eps", type=float, default=1.0, help="bound slack epsilon (default 1)"
    )
    p.add_argument(
        "--sigma", type=float, default=1.0, help="entry scale sigma (default 1)"
    )
    p.add_argument(
        "--K",
        type=float,
        default=math.sqrt(2.0),
        help="comparison-bound constant (default sqrt(2))",
    )
    p.add_argument(
        "--threads",
        type=int,
        default=None,
        help="worker threads (default: machine parallelism)",
    )
    p.add_argument("--out", default=None, help="records CSV path (default stdout)")
    p.add_argument(
        "--manifest",
        default=None,
        help="manifest JSON path (default derived from --out)",
    )
    if with_esd:
        p.add_argument(
            "--bins", type=int, default=100, help="histogram bins (default 100)"
        )
        p.add_argument(
            "--scale",
            choices=("sqrt-n", "sqrt-n-minus-1"),
            default="sqrt-n",
            help="eigenvalue scaling convention (default sqrt-n)",
        )


def build_parser():
    parser = argparse.ArgumentParser(
        prog="lapspec",
        description=(
            "Monte Carlo harness for spectral and extreme-value statistics "
            "of Laplacian random matrices."
        ),
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    sub = parser.add_subparsers(dest="command", metavar="command", required=True)

    p = sub.add_parser(
        "esd", help="empirical spectral distribution campaign (full eigensolve)"
    )
    _add_campaign_flags(p, with_esd=True)

    p = sub.add_parser(
        "max-diag", help="largest-diagonal campaign (fast path, no eigensolve)"
    )
    _add_campaign_flags(p)

    p = sub.add_parser("max-eig", help="largest-eigenvalue campaign")
    _add_campaign_flags(p)

    p = sub.add_parser("block", help="block-diagonal Laplacian campaign")
    _add_campaign_flags(p, with_k=True)

    p = sub.add_parser(
        "bounds",
        help="bound formulas (no --reps) or a bound-coverage campaign (--reps)",
    )
    _add_campaign_flags(p, reps_required=False)

    p = sub.add_parser("ratio", help="largest-eigenvalue ratio campaign")
    _add_campaign_flags(p)

    p = sub.add_parser("moments", help="exact even moments of the limiting law")
    p.add_argument("--k", type=int, required=True, help="print m2, m4, ..., m(2k)")

    p = sub.add_parser("gen", help="dump one sampled matrix as plain text")
    p.add_argument("--n", type=int, required=True, help="matrix order")
    p.add_argument("--seed", type=_uint64, default=0, help="substream seed (default 0)")
    p.add_argument("--dist", choices=_DISTS, default="gaussian")
    p.add_argument("--k", type=int, default=1, help="diagonal blocks (default 1)")
    p.add_argument("--sigma", type=float, default=1.0)
    p.add_argument("--out", default=None, help="output path (default stdout)")

    p = sub.add_parser("replay", help="re-derive a manifest's records and verify")
    p.add_argument("--manifest", required=True, help="manifest JSON path")
    p.add_argument("--out", default=None, help="optionally rewrite the records CSV")
    return parser


def _manifest_path(args):
    if args.manifest is not None:
        return args.manifest
    if args.out is not None:
        base = args.out
        if base.endswith(".csv"):
            base = base[: -len(".csv")]
        return base + ".manifest.json"
    return f"{args.command}.manifest.json"


def _write_campaign(args, records, manifest):
    csv_text = records_to_csv(records)
    manifest_path = _manifest_path(args)
    if args.out is None:
        manifest["records_file"] = ""
        sys.stdout.write(csv_text)
    else:
        import os

        manifest["records_file"] = os.path.basename(args.out)
        with open(args.out, "wb") as fh:
            fh.write(csv_text.encode("utf-8"))
    with open(manifest_path, "wb") as fh:
        fh.write(manifest_to_json(manifest).encode("utf-8"))
    print(f"manifest written to {manifest_path}", file=sys.stderr)


def _campaign_config(args):
    kwargs = {
        "kind": args.command,
        "n": args.n,
        "reps": args.reps,
        "dist": args.dist,
        "eps": args.eps,
        "sigma": args.sigma,
        "K": args.K,
        "seed": args.seed,
        "threads": args.threads,
    }
    if getattr(args, "k", None) is not None:
        kwargs["k"] = args.k
    if hasattr(args, "bins"):
        kwargs["bins"] = args.bins
        kwargs["scale"] = args.scale
    return ExperimentConfig(**kwargs)


def _cmd_campaign(args):
    records, manifest = run(_campaign_config(args))
    _write_campaign(args, records, manifest)
    return 0


def _cmd_bounds(args):
    if args.reps is None:
        upper = bound_upper(args.n, args.eps, args.sigma)
        lower = bound_lower(args.n, args.eps, args.sigma)
        print(f"upper = {upper:.6g}")
        print(f"lower = {lower:.6g}")
        return 0
    return _cmd_campaign(args)


def _cmd_moments(args):
    if args.k < 1:
        raise ValueError("--k must be >= 1")
    for i in range(1, args.k + 1):
        print(f"m{2 * i} = {int(gamma_m_moment(i))}")
    return 0


def _cmd_gen(args):
    matrix = scale_matrix(
        sample_block_laplacian(BlockSpec(args.k, args.n), args.dist, args.seed),
        args.sigma,
    )
    if args.out is None:
        dump_matrix(matrix, sys.stdout)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            dump_matrix(matrix, fh)
    return 0


def _cmd_replay(args):
    with open(args.manifest, "r", encoding="utf-8") as fh:
        manifest = json.load(fh)
    records = replay(manifest)
    print(
        f"replay verified: {len(records)} records, digest "
        f"{manifest['records_digest']}",
        file=sys.stderr,
    )
    if args.out is not None:
        with open(args.out, "wb") as fh:
            fh.write(records_to_csv(records).encode("utf-8"))
    return 0


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else 0
    try:
        if args.command == "moments":
            return _cmd_moments(args)
        if args.command == "gen":
            return _cmd_gen(args)
        if args.command == "replay":
            return _cmd_replay(args)
        if args.command == "bounds":
            return _cmd_bounds(args)
        return _cmd_campaign(args)
    except (ValueError, TypeError) as exc:
        print(f"lapspec: error: {exc}", file=sys.stderr)
        return 2
    except (EigensolverError, RuntimeError, OSError) as exc:
        print(f"lapspec: failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
