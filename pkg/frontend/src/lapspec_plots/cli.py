"""Command line wrapper: `plot <kind> --in file.csv --manifest file.json --out fig.svg`."""

import argparse
import sys

from .contract import ContractError
from .render import KINDS, PlotJob, render


def build_parser():
    parser = argparse.ArgumentParser(
        prog="plot",
        description="Render a figure from a campaign CSV and its manifest.",
    )
    parser.add_argument("kind", choices=KINDS, help="figure kind")
    parser.add_argument("--in", dest="records", required=True, metavar="FILE.csv",
                        help="replicate records CSV")
    parser.add_argument("--manifest", required=True, metavar="FILE.json",
                        help="campaign manifest JSON")
    parser.add_argument("--out", required=True, metavar="FIG.svg",
                        help="output image (.svg or .png)")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        result = render(PlotJob(kind=args.kind, records=args.records,
                                manifest=args.manifest, out=args.out))
    except ContractError as exc:
        print(f"plot: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"plot: failure: {exc}", file=sys.stderr)
        return 1
    if result.max_gap is not None:
        print(f"max gap = {result.max_gap:.12g}")
    print(f"wrote {result.out}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
