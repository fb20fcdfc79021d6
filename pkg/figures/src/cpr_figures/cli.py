"""render_figures --in <dir> --out <dir> [--figures name ...]"""

from __future__ import annotations

import argparse
import sys

from .render import MANIFEST, MissingInputError, SchemaMismatchError, render_all


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="render_figures",
        description="Render figure facsimiles from fragile-cpr reproduction CSVs.")
    parser.add_argument("--in", dest="in_dir", required=True,
                        help="directory holding the repro_*.csv files")
    parser.add_argument("--out", dest="out_dir", required=True,
                        help="directory for the rendered images")
    parser.add_argument("--figures", nargs="+", default=None,
                        choices=[spec.name for spec in MANIFEST],
                        help="render only these figures (default: all)")
    args = parser.parse_args(argv)
    try:
        for path in render_all(args.in_dir, args.out_dir, args.figures):
            print(path)
    except (MissingInputError, SchemaMismatchError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
