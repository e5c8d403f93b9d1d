import argparse
import sys

from .render import PlotError, PlotSpec, render


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plots",
        description="Render a sweep CSV into a multi-panel figure.")
    parser.add_argument("csv", help="input sweep CSV")
    parser.add_argument("out_image", help="output image path (format by extension)")
    parser.add_argument("--panels", type=float, action="append", dest="panels",
                        metavar="ALPHA",
                        help="render only these alpha panels, repeatable")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    spec = PlotSpec(args.csv, args.out_image, tuple(args.panels or ()))
    try:
        render(spec)
    except (PlotError, OSError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
