"""Command line: ``plots <kind> --in <csv> --out <file>``."""

import argparse
import sys

from .figures import SchemaError, plot_convergence, plot_monitor, \
    plot_spacetime

KINDS = {"convergence": plot_convergence,
         "spacetime": plot_spacetime,
         "monitor": plot_monitor}


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="plots", description="Generate figures from twofluid CSVs.")
    parser.add_argument("kind", choices=sorted(KINDS))
    parser.add_argument("--in", dest="infile", required=True,
                        metavar="CSV", help="input CSV file")
    parser.add_argument("--out", required=True, metavar="FILE",
                        help="output image (extension selects the format; "
                             "use .pdf or .svg for vector output)")
    args = parser.parse_args(argv)
    try:
        KINDS[args.kind](args.infile, args.out)
    except (SchemaError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
