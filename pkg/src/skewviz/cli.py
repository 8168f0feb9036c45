"""Command line entry point.

Usage::

    skewviz data.csv --column intensity --out figure.svg
    skewviz demo gamma:0.5,100 --seed 42
    skewviz values.txt --stats-only

Exit codes: 0 success, 1 usage error, 2 input error, 3 computation error.
"""
import argparse
from dataclasses import dataclass
import math
import re
import sys

from .density import BinRule, select_bandwidth
from .demo import demo_sample
from .errors import (ColumnNotFound, DegenerateVariance, DomainError, EmptyFigure,
                     EmptySample, ParseError, SkewvizError)
from .geometry import build_panels
from .render import layout, write_svg
from .stats import make_sample, medcouple, summary

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_COMPUTE = 0, 1, 2, 3

PANEL_CHOICES = ("hist", "notched", "classical", "adjusted", "violin", "bpp", "lv",
                 "bean", "meanbox")
DEFAULT_PANELS = ("hist", "notched", "violin", "meanbox", "adjusted", "bpp")
NAN_TOKENS = {"", "nan", "na", "n/a", "null", "none", "?"}


class UsageError(SkewvizError):
    pass


@dataclass(frozen=True)
class RunConfig:
    input_path: str = None
    demo: tuple = None  # (shape, n)
    column: str = None
    panels: tuple = DEFAULT_PANELS
    bandwidth: object = "scott"
    bins: BinRule = BinRule("sturges")
    out: str = "synchronized.svg"
    width: float = 900.0
    height: float = 1200.0
    stats_only: bool = False
    seed: int = 42

    def __post_init__(self):
        if (self.input_path is None) == (self.demo is None):
            raise UsageError("give exactly one of an input file or a demo spec")


# ----------------------------------------------------------------- parsing

def parse_demo(spec):
    m = re.fullmatch(r"\s*gamma\s*:\s*([^,\s]+)\s*,\s*([^,\s]+)\s*", spec)
    if not m:
        raise UsageError(f"demo spec must look like gamma:<shape>,<n>, got {spec!r}")
    try:
        shape = float(m.group(1))
        n = int(m.group(2))
    except ValueError:
        raise UsageError(f"bad numbers in demo spec {spec!r}") from None
    if not (shape > 0 and math.isfinite(shape)) or n < 1:
        raise UsageError(f"demo needs shape > 0 and n >= 1, got {spec!r}")
    return shape, n


def parse_panels(text):
    names = [t.strip() for t in text.split(",") if t.strip()]
    if not names:
        raise UsageError("no panels requested")
    unknown = [t for t in names if t not in PANEL_CHOICES]
    if unknown:
        raise UsageError(f"unknown panel(s) {', '.join(unknown)}; "
                         f"choose from {', '.join(PANEL_CHOICES)}")
    if len(set(names)) != len(names):
        raise UsageError(f"panel listed twice in {text!r}")
    return tuple(names)


def parse_bins(text):
    key = text.strip().lower()
    if key in ("sturges", "scott", "fd"):
        return BinRule(key)
    try:
        k = int(key)
    except ValueError:
        raise UsageError(f"bins must be sturges, scott, fd or an integer, got {text!r}") from None
    if k < 1:
        raise UsageError(f"bin count must be positive, got {k}")
    return BinRule.count(k)


def parse_bandwidth(text):
    key = text.strip().lower()
    if key in ("scott", "fd"):
        return key
    try:
        h = float(key)
    except ValueError:
        raise UsageError(f"bandwidth must be scott, fd or a number, got {text!r}") from None
    if not (h > 0 and math.isfinite(h)):
        raise UsageError(f"bandwidth must be positive, got {text!r}")
    return h


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser():
    p = _Parser(
        prog="skewviz",
        description="Summary table and synchronized multi-panel figure for skewed data.",
    )
    p.add_argument("source", nargs="*", metavar="INPUT",
                   help="numeric file, or: demo gamma:<shape>,<n>")
    p.add_argument("-c", "--column", help="column name or 1-based index (delimited files)")
    p.add_argument("-o", "--out", default="synchronized.svg", help="SVG output path")
    p.add_argument("--panels", default=",".join(DEFAULT_PANELS),
                   help=f"comma list from {{{','.join(PANEL_CHOICES)}}}")
    p.add_argument("--bandwidth", default="scott", help="scott | fd | <number>")
    p.add_argument("--bins", default="sturges", help="sturges | scott | fd | <integer>")
    p.add_argument("--width", type=float, default=900.0)
    p.add_argument("--height", type=float, default=1200.0)
    p.add_argument("--stats-only", action="store_true", help="print the table, skip the figure")
    p.add_argument("--demo", metavar="gamma:SHAPE,N", help="use seeded gamma variates as input")
    p.add_argument("--seed", type=int, default=42, help="seed for --demo")
    return p


def parse_config(argv):
    args = build_parser().parse_args(argv)
    demo = args.demo
    source = list(args.source)
    if source and source[0] == "demo":
        if len(source) != 2 or demo is not None:
            raise UsageError("usage: skewviz demo gamma:<shape>,<n>")
        demo, source = source[1], []
    if len(source) > 1:
        raise UsageError(f"expected one input file, got {len(source)}")
    if args.width <= 0 or args.height <= 0:
        raise UsageError("canvas dimensions must be positive")
    return RunConfig(
        input_path=source[0] if source else None,
        demo=parse_demo(demo) if demo is not None else None,
        column=args.column,
        panels=parse_panels(args.panels),
        bandwidth=parse_bandwidth(args.bandwidth),
        bins=parse_bins(args.bins),
        out=args.out,
        width=args.width,
        height=args.height,
        stats_only=args.stats_only,
        seed=args.seed,
    )


# ---------------------------------------------------------------- ingestion

def _is_missing(token):
    return token.strip().lower() in NAN_TOKENS


def _is_number(token):
    try:
        float(token)
    except ValueError:
        return False
    return True


def read_column(text, column=None, path=None):
    """Values of one column of newline, comma or tab separated ``text``.

    Returns ``(values, dropped)``; missing-value tokens and blank lines are
    dropped, and ``dropped`` counts the missing tokens.
    """
    lines = text.splitlines()
    body = [(i + 1, ln) for i, ln in enumerate(lines) if ln.strip()]
    if not body:
        raise EmptySample(f"{path or 'input'} contains no data")
    first = body[0][1]
    delim = "," if "," in first else ("\t" if "\t" in first else None)

    def fields(line):
        parts = line.split(delim) if delim else [line]
        return [f.strip() for f in parts]

    head = fields(first)
    has_header = any(not _is_number(f) and not _is_missing(f) for f in head)
    if column is None:
        idx = 0
    elif column.isdigit():
        idx = int(column) - 1
        if idx < 0 or idx >= len(head):
            raise ColumnNotFound(f"column {column} not present ({len(head)} columns)")
    elif has_header and column in head:
        idx = head.index(column)
    else:
        raise ColumnNotFound(f"column {column!r} not found in {path or 'input'}")

    values, dropped = [], 0
    for lineno, line in body[1:] if has_header else body:
        parts = fields(line)
        if idx >= len(parts):
            raise ParseError(f"missing column {idx + 1}", lineno, path)
        token = parts[idx]
        if _is_missing(token):
            dropped += 1
            continue
        try:
            values.append(float(token))
        except ValueError:
            raise ParseError(f"not a number: {token!r}", lineno, path) from None
    return values, dropped


def ingest(config, err=None):
    """Load the configured sample; NaN drop counts go to ``err``."""
    if config.demo is not None:
        shape, n = config.demo
        return demo_sample(shape, n, config.seed)
    with open(config.input_path, encoding="utf-8") as fh:
        text = fh.read()
    values, dropped = read_column(text, config.column, config.input_path)
    if not values:
        raise EmptySample(f"no numeric values in {config.input_path}")
    s = make_sample(values)
    total = dropped + s.dropped
    if total and err is not None:
        print(f"skewviz: dropped {total} missing/non-finite value(s)", file=err)
    return s


# ------------------------------------------------------------------- output

def format_value(v):
    """Six significant digits, fixed point; scientific below 1e-3."""
    if v is None or (isinstance(v, float) and math.isnan(v)):
        return "NA"
    if v == 0:
        return "0.00000"
    mag = abs(v)
    if mag < 1e-3:
        return f"{v:.5e}"
    decimals = max(0, 5 - math.floor(math.log10(mag)))
    return f"{v:.{decimals}f}"


def format_table(stats):
    lines = [f"# n = {stats.n}; skewness m3/m2^1.5 and non-excess kurtosis m4/m2^2 "
             "from population (1/n) moments; quartiles type 7"]
    for label, value in stats.rows():
        lines.append(f"{label:<14}{format_value(value):>16}")
    return "\n".join(lines) + "\n"


def render_figure(s, config):
    h = select_bandwidth(s, config.bandwidth)
    mc = medcouple(s) if "adjusted" in config.panels else None
    geoms = build_panels(s, config.panels, h, config.bins, mc)
    fig = layout(geoms, s, canvas=(config.width, config.height))
    return write_svg(fig, config.out)


def run(config, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        s = ingest(config, err)
    except FileNotFoundError as exc:
        print(f"skewviz: input file not found: {exc.filename or config.input_path}", file=err)
        return EXIT_INPUT
    except (OSError, UnicodeDecodeError) as exc:
        print(f"skewviz: cannot read {config.input_path}: {exc}", file=err)
        return EXIT_INPUT
    except (ColumnNotFound, ParseError, EmptySample) as exc:
        print(f"skewviz: {exc}", file=err)
        return EXIT_INPUT
    except DomainError as exc:
        print(f"skewviz: {exc}", file=err)
        return EXIT_USAGE

    out.write(format_table(summary(s)))
    if config.stats_only:
        return EXIT_OK
    try:
        render_figure(s, config)
    except (DegenerateVariance, DomainError, EmptyFigure) as exc:
        print(f"skewviz: {exc}", file=err)
        return EXIT_COMPUTE
    except OSError as exc:
        print(f"skewviz: cannot write {config.out}: {exc}", file=err)
        return EXIT_INPUT
    print(f"skewviz: wrote {config.out}", file=err)
    return EXIT_OK


def main(argv=None):
    try:
        config = parse_config(sys.argv[1:] if argv is None else argv)
    except UsageError as exc:
        print(f"skewviz: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
