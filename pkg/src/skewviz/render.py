"""Synchronized figure layout and SVG output.

All panels are stacked vertically over one horizontal data axis. They share
a single data-to-pixel map, a median guide line crosses every panel, and the
rug strip sits in the middle of the stack.
"""
from dataclasses import dataclass
import math
from xml.sax.saxutils import escape, quoteattr

from .errors import DomainError, EmptyFigure
from .geometry import Marker, Polygon, Polyline, Rect, Segment, axis_range, rug_geom
from .stats import median

SVG_NS = "http://www.w3.org/2000/svg"
META_NS = "urn:skewviz:layout"

DEFAULT_CANVAS = (900.0, 1200.0)
DEFAULT_MARGINS = (20.0, 30.0, 20.0, 30.0)  # top, right, bottom, left
PANEL_GAP = 10.0
RUG_HEIGHT = 36.0
AXIS_HEIGHT = 44.0
LABEL_HEIGHT = 16.0

GUIDE_STROKE = "#d62728"

_STYLE = {
    "box": 'fill="#e8e8e8" stroke="#222222" stroke-width="1.2"',
    "bar": 'fill="#d9d9d9" stroke="#555555" stroke-width="0.6"',
    "area": 'fill="#e8e8e8" stroke="#222222" stroke-width="1.2"',
    "density": 'fill="#e8e8e8" stroke="#222222" stroke-width="1.2"',
    "median": 'fill="#222222" stroke="#222222" stroke-width="2"',
    "mean": 'fill="none" stroke="#222222" stroke-width="2" stroke-dasharray="4,2"',
    "whisker": 'fill="none" stroke="#222222" stroke-width="1"',
    "cap": 'fill="none" stroke="#222222" stroke-width="1"',
    "quartile": 'fill="none" stroke="#222222" stroke-width="1"',
    "outlier": 'fill="none" stroke="#222222" stroke-width="0.8"',
    "tick": 'fill="none" stroke="#222222" stroke-width="0.6"',
    "bean": 'fill="none" stroke="#000000" stroke-width="0.8" stroke-opacity="0.3"',
}
_LV_STYLE = 'fill="#e8e8e8" stroke="#222222" stroke-width="1"'


def fmt(v):
    """Fixed three-decimal formatting without negative zero."""
    s = f"{v:.3f}"
    return "0.000" if s == "-0.000" else s


def _meta(v):
    return repr(float(v))


@dataclass(frozen=True)
class PanelBox:
    top: float
    height: float

    @property
    def bottom(self):
        return self.top + self.height

    def y(self, t):
        return self.top + (1.0 - t) * self.height


@dataclass(frozen=True)
class FigureLayout:
    panels: tuple
    boxes: tuple
    axis_range: tuple
    median_guide: float
    canvas: tuple
    margins: tuple
    panel_gap: float

    @property
    def plot_left(self):
        return self.margins[3]

    @property
    def plot_right(self):
        return self.canvas[0] - self.margins[1]

    @property
    def x_scale(self):
        lo, hi = self.axis_range
        return (self.plot_right - self.plot_left) / (hi - lo)

    def px(self, v):
        """The one data-to-pixel map shared by every panel."""
        return self.plot_left + (v - self.axis_range[0]) * self.x_scale

    @property
    def rug_index(self):
        return next(i for i, p in enumerate(self.panels) if p.kind == "rug")

    @property
    def axis_top(self):
        return self.boxes[-1].bottom + self.panel_gap


def layout(geoms, s, canvas=DEFAULT_CANVAS, order=None, margins=DEFAULT_MARGINS,
           panel_gap=PANEL_GAP, rug_height=RUG_HEIGHT, axis_height=AXIS_HEIGHT):
    """Arrange panels top to bottom with the rug at the middle position.

    ``order`` optionally lists panel kinds to reorder ``geoms``; a missing
    rug is created from ``s``.
    """
    geoms = list(geoms)
    rug = next((g for g in geoms if g.kind == "rug"), None)
    others = [g for g in geoms if g.kind != "rug"]
    if not others:
        raise EmptyFigure("no panels requested")
    if order is not None:
        rank = {k: i for i, k in enumerate(order)}
        others.sort(key=lambda g: rank.get(g.kind, len(rank)))
    if rug is None:
        rug = rug_geom(s)
    middle = (len(others) + 1) // 2
    panels = tuple(others[:middle] + [rug] + others[middle:])

    lo, hi = axis_range(s)
    tol = 1e-9 * max(hi - lo, abs(lo), abs(hi))
    for g in panels:
        a, b = g.x_extent()
        if a < lo - tol or b > hi + tol:
            raise DomainError(f"{g.kind} panel spans [{a}, {b}] outside axis [{lo}, {hi}]")

    width, height = (float(v) for v in canvas)
    top_m, right_m, bottom_m, left_m = (float(v) for v in margins)
    usable = height - top_m - bottom_m - axis_height - panel_gap * len(panels)
    regular = (usable - rug_height) / len(others)
    if regular <= LABEL_HEIGHT or width - left_m - right_m <= 0:
        raise DomainError(f"canvas {width:g}x{height:g} too small for {len(panels)} panels")
    boxes = []
    y = top_m
    for g in panels:
        h = rug_height if g is rug else regular
        boxes.append(PanelBox(y, h))
        y += h + panel_gap
    return FigureLayout(panels, tuple(boxes), (lo, hi), float(median(s)),
                        (width, height), (top_m, right_m, bottom_m, left_m), float(panel_gap))


def nice_ticks(lo, hi, target=7):
    """Round-number tick positions inside ``[lo, hi]``."""
    span = hi - lo
    raw = span / max(target - 1, 1)
    mag = 10.0 ** math.floor(math.log10(raw))
    step = next(m * mag for m in (1, 2, 2.5, 5, 10) if m * mag >= raw)
    first = math.ceil(lo / step)
    ticks = []
    k = first
    while k * step <= hi + 1e-9 * step:
        ticks.append(k * step)
        k += 1
    return [0.0 if abs(t) < 1e-12 * step else t for t in ticks]


def _tick_label(v):
    return f"{v:.6g}"


def _primitive_svg(prim, ident, fig, box):
    style = _STYLE.get(prim.role, _LV_STYLE)
    if isinstance(prim, Rect):
        x0, x1 = sorted((fig.px(prim.x0), fig.px(prim.x1)))
        y0, y1 = sorted((box.y(prim.y0), box.y(prim.y1)))
        if fmt(x0) == fmt(x1):
            return (f'<line id="{ident}" x1="{fmt(x0)}" y1="{fmt(y0)}" '
                    f'x2="{fmt(x1)}" y2="{fmt(y1)}" {style}/>')
        return (f'<rect id="{ident}" x="{fmt(x0)}" y="{fmt(y0)}" '
                f'width="{fmt(x1 - x0)}" height="{fmt(y1 - y0)}" {style}/>')
    if isinstance(prim, Segment):
        return (f'<line id="{ident}" x1="{fmt(fig.px(prim.x0))}" y1="{fmt(box.y(prim.y0))}" '
                f'x2="{fmt(fig.px(prim.x1))}" y2="{fmt(box.y(prim.y1))}" {style}/>')
    if isinstance(prim, Polygon):
        pts = " ".join(f"{fmt(fig.px(x))},{fmt(box.y(y))}" for x, y in prim.points)
        tag = "polyline" if isinstance(prim, Polyline) else "polygon"
        if tag == "polyline":
            style = 'fill="none" stroke="#000000" stroke-width="1.5"'
        return f'<{tag} id="{ident}" points="{pts}" {style}/>'
    if isinstance(prim, Marker):
        return (f'<circle id="{ident}" cx="{fmt(fig.px(prim.x))}" cy="{fmt(box.y(prim.y))}" '
                f'r="2.500" {style}/>')
    raise TypeError(f"unknown primitive {prim!r}")


def emit_svg(fig, title="Synchronized summary"):
    """Render ``fig`` as a standalone, deterministic SVG 1.1 document."""
    w, h = fig.canvas
    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        f'<svg xmlns="{SVG_NS}" xmlns:skewviz="{META_NS}" version="1.1" '
        f'width="{fmt(w)}" height="{fmt(h)}" viewBox="0 0 {fmt(w)} {fmt(h)}" '
        f'font-family="sans-serif" font-size="11" '
        f'skewviz:axis-lo={quoteattr(_meta(fig.axis_range[0]))} '
        f'skewviz:axis-hi={quoteattr(_meta(fig.axis_range[1]))} '
        f'skewviz:median={quoteattr(_meta(fig.median_guide))}>',
        f"<title>{escape(title)}</title>",
        f'<rect id="skewviz-background" x="0.000" y="0.000" width="{fmt(w)}" height="{fmt(h)}" '
        'fill="#ffffff"/>',
    ]
    for i, (panel, box) in enumerate(zip(fig.panels, fig.boxes)):
        out.append(
            f'<g id="skewviz-{i}-{panel.kind}" class="panel" skewviz:kind="{panel.kind}" '
            f'skewviz:x-scale={quoteattr(_meta(fig.x_scale))} '
            f'skewviz:x-origin={quoteattr(_meta(fig.axis_range[0]))} '
            f'skewviz:plot-left={quoteattr(_meta(fig.plot_left))} '
            f'skewviz:top="{fmt(box.top)}" skewviz:height="{fmt(box.height)}">'
        )
        if panel.kind != "rug":
            out.append(f'<text id="skewviz-{i}-label" x="{fmt(fig.plot_left + 4)}" '
                       f'y="{fmt(box.top + 11)}" fill="#444444">{escape(panel.label)}</text>')
        for j, prim in enumerate(panel.primitives):
            out.append(_primitive_svg(prim, f"skewviz-{i}-{j}", fig, box))
        out.append("</g>")

    gx = fmt(fig.px(fig.median_guide))
    out.append(f'<line id="skewviz-median-guide" x1="{gx}" y1="{fmt(fig.boxes[0].top)}" '
               f'x2="{gx}" y2="{fmt(fig.boxes[-1].bottom)}" stroke="{GUIDE_STROKE}" '
               'stroke-width="1.5"/>')

    base = fig.axis_top + 4
    out.append('<g id="skewviz-axis" fill="none" stroke="#222222" stroke-width="1">')
    out.append(f'<line id="skewviz-axis-line" x1="{fmt(fig.plot_left)}" y1="{fmt(base)}" '
               f'x2="{fmt(fig.plot_right)}" y2="{fmt(base)}"/>')
    for k, t in enumerate(nice_ticks(*fig.axis_range)):
        x = fmt(fig.px(t))
        out.append(f'<line id="skewviz-axis-tick-{k}" x1="{x}" y1="{fmt(base)}" x2="{x}" '
                   f'y2="{fmt(base + 6)}"/>')
        out.append(f'<text id="skewviz-axis-label-{k}" x="{x}" y="{fmt(base + 20)}" '
                   f'text-anchor="middle" fill="#222222" stroke="none">{_tick_label(t)}</text>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_svg(fig, path, **kwargs):
    text = emit_svg(fig, **kwargs)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    return text
