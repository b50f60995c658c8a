import argparse
import json
import sys

from .contract import SchemaError
from .render import METRICS, FigureSpec, render


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="plots-render",
        description="Render a grouped bar figure from a benchmark summary CSV",
    )
    parser.add_argument("--csv", required=True, help="summary CSV (gastsp-summary/1)")
    parser.add_argument("--metric", required=True, choices=METRICS)
    parser.add_argument("--out", required=True, help="output image path")
    args = parser.parse_args(argv)

    try:
        result = render(FigureSpec(csv=args.csv, metric=args.metric, out=args.out))
    except (SchemaError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(
        json.dumps(
            {
                "out": str(result.out),
                "series": len(result.series),
                "sizes": list(result.sizes),
            }
        )
    )
    return 0


if __name__ == "__main__":
    sys.exit(main())
