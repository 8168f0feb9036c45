"""Backend-independent panel geometry.

Each ``*_geom`` function turns a :class:`~skewviz.stats.SortedSample` into a
:class:`PanelGeometry`: drawing primitives whose first coordinate is in data
units along the shared axis and whose second ("transverse") coordinate is
panel-local, in ``[0, 1]``. Anything that could extend past the shared axis
range (density tails, mean-box whiskers) is clipped to ``clip``, which
defaults to :func:`axis_range` of the sample.
"""
from dataclasses import dataclass, field
import math

import numpy as np
from scipy.special import stdtrit

from .density import BinRule, histogram, kde
from .stats import letter_values, medcouple, quantile, std

AXIS_PAD = 0.02
WHISKER = 1.5
NOTCH = 1.57
LV_DECAY = 0.75

PANEL_LABELS = {
    "hist": "Histogram + density",
    "notched": "Notched boxplot",
    "classical": "Boxplot",
    "adjusted": "Adjusted boxplot",
    "violin": "Violin plot",
    "bpp": "Box-percentile plot",
    "lv": "Letter-value boxplot",
    "bean": "Bean plot",
    "meanbox": "Mean box (shifting-boxplot approximation)",
    "rug": "Rug",
}


@dataclass(frozen=True)
class Rect:
    x0: float
    x1: float
    y0: float
    y1: float
    role: str = "box"

    def xs(self):
        return (self.x0, self.x1)

    def ys(self):
        return (self.y0, self.y1)


@dataclass(frozen=True)
class Segment:
    x0: float
    y0: float
    x1: float
    y1: float
    role: str = "line"

    def xs(self):
        return (self.x0, self.x1)

    def ys(self):
        return (self.y0, self.y1)


@dataclass(frozen=True)
class Polygon:
    points: tuple
    role: str = "area"

    def xs(self):
        return tuple(p[0] for p in self.points)

    def ys(self):
        return tuple(p[1] for p in self.points)


@dataclass(frozen=True)
class Polyline(Polygon):
    role: str = "curve"


@dataclass(frozen=True)
class Marker:
    x: float
    y: float = 0.5
    role: str = "outlier"

    def xs(self):
        return (self.x,)

    def ys(self):
        return (self.y,)


@dataclass(frozen=True)
class PanelGeometry:
    kind: str
    primitives: tuple
    outliers: tuple = ()
    label: str = ""
    stats: object = None

    def x_extent(self):
        xs = [x for prim in self.primitives for x in prim.xs()]
        return min(xs), max(xs)

    def find(self, role):
        return [p for p in self.primitives if p.role == role]


@dataclass(frozen=True)
class BoxStats:
    q1: float
    q2: float
    q3: float
    iqr: float
    fence_lo: float
    fence_hi: float
    whisker_lo: float
    whisker_hi: float
    outliers: tuple = field(default=())
    notch_lo: float = None
    notch_hi: float = None


def axis_range(s, pad=AXIS_PAD):
    """``[min - pad*range, max + pad*range]``; a constant sample gets a unit
    window (plus padding) centred on its value."""
    lo, hi = float(s.values[0]), float(s.values[-1])
    if hi == lo:
        half = 0.5 + pad
        return lo - half, lo + half
    span = hi - lo
    return lo - pad * span, hi + pad * span


def _box_stats(s, lo_factor, hi_factor):
    x = s.values
    q1, q2, q3 = (float(v) for v in quantile(s, [0.25, 0.5, 0.75]))
    spread = q3 - q1
    fence_lo = q1 - lo_factor * spread
    fence_hi = q3 + hi_factor * spread
    inside = x[(x >= fence_lo) & (x <= fence_hi)]
    # a whisker with no observation between fence and box collapses onto the box
    whisker_lo = min(float(inside[0]), q1) if inside.size else q1
    whisker_hi = max(float(inside[-1]), q3) if inside.size else q3
    outliers = tuple(float(v) for v in x[(x < fence_lo) | (x > fence_hi)])
    return BoxStats(q1, q2, q3, spread, fence_lo, fence_hi, whisker_lo, whisker_hi, outliers)


def classical_box(s):
    """Tukey box: fences at ``Q1 - 1.5 IQR`` and ``Q3 + 1.5 IQR``."""
    return _box_stats(s, WHISKER, WHISKER)


def notch_halfwidth(spread, n):
    return NOTCH * spread / math.sqrt(n)


def notched_box(s):
    """Classical box plus the median notch ``Q2 +/- 1.57 IQR / sqrt(n)``.

    The notch is stored unclamped; drawing clamps it to the box.
    """
    b = classical_box(s)
    half = notch_halfwidth(b.iqr, s.n)
    return BoxStats(b.q1, b.q2, b.q3, b.iqr, b.fence_lo, b.fence_hi, b.whisker_lo,
                    b.whisker_hi, b.outliers, b.q2 - half, b.q2 + half)


def adjusted_fence_factors(mc):
    mc = float(mc)
    if mc >= 0:
        return WHISKER * math.exp(-4.0 * mc), WHISKER * math.exp(3.0 * mc)
    return WHISKER * math.exp(-3.0 * mc), WHISKER * math.exp(4.0 * mc)


def adjusted_box(s, mc=None):
    """Skewness-adjusted box: the whisker factors are scaled by exponentials
    of the medcouple (computed from ``s`` when not supplied)."""
    if mc is None:
        mc = medcouple(s)
    lo_f, hi_f = adjusted_fence_factors(getattr(mc, "value", mc))
    return _box_stats(s, lo_f, hi_f)


# ------------------------------------------------------------------ drawing

def _clip_curve(x, y, lo, hi):
    """Restrict a polyline to ``lo <= x <= hi``, interpolating the ends."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    keep = (x >= lo) & (x <= hi)
    xs, ys = x[keep], y[keep]
    if x[0] < lo:
        xs = np.concatenate([[lo], xs])
        ys = np.concatenate([[np.interp(lo, x, y)], ys])
    if x[-1] > hi:
        xs = np.concatenate([xs, [hi]])
        ys = np.concatenate([ys, [np.interp(hi, x, y)]])
    return xs, ys


def _mirror(xs, half):
    upper = [(float(a), 0.5 + float(w)) for a, w in zip(xs, half)]
    lower = [(float(a), 0.5 - float(w)) for a, w in zip(xs[::-1], half[::-1])]
    return tuple(upper + lower)


def _clamp(v, lo, hi):
    return min(max(v, lo), hi)


def box_primitives(b, notch=False):
    """Box, median line, whiskers with caps, and outlier markers."""
    y0, y1 = 0.25, 0.75
    prims = []
    if notch and b.notch_lo is not None:
        nlo = _clamp(b.notch_lo, b.q1, b.q3)
        nhi = _clamp(b.notch_hi, b.q1, b.q3)
        dent = 0.1
        pts = ((b.q1, y0), (nlo, y0), (b.q2, y0 + dent), (nhi, y0), (b.q3, y0),
               (b.q3, y1), (nhi, y1), (b.q2, y1 - dent), (nlo, y1), (b.q1, y1))
        prims.append(Polygon(pts, "box"))
        prims.append(Segment(b.q2, y0 + dent, b.q2, y1 - dent, "median"))
    else:
        prims.append(Rect(b.q1, b.q3, y0, y1, "box"))
        prims.append(Segment(b.q2, y0, b.q2, y1, "median"))
    prims += [
        Segment(b.whisker_lo, 0.5, b.q1, 0.5, "whisker"),
        Segment(b.q3, 0.5, b.whisker_hi, 0.5, "whisker"),
        Segment(b.whisker_lo, 0.4, b.whisker_lo, 0.6, "cap"),
        Segment(b.whisker_hi, 0.4, b.whisker_hi, 0.6, "cap"),
    ]
    prims += [Marker(v, 0.5, "outlier") for v in b.outliers]
    return prims


def classical_geom(s, clip=None):
    b = classical_box(s)
    return PanelGeometry("classical", tuple(box_primitives(b)), b.outliers,
                         PANEL_LABELS["classical"], b)


def notched_geom(s, clip=None):
    b = notched_box(s)
    return PanelGeometry("notched", tuple(box_primitives(b, notch=True)), b.outliers,
                         PANEL_LABELS["notched"], b)


def adjusted_geom(s, mc=None, clip=None):
    b = adjusted_box(s, mc)
    return PanelGeometry("adjusted", tuple(box_primitives(b)), b.outliers,
                         PANEL_LABELS["adjusted"], b)


def histogram_geom(s, h, rule=None, clip=None):
    """Histogram bars with the kernel density curve laid over them."""
    lo, hi = clip or axis_range(s)
    hist = histogram(s, rule or BinRule.sturges())
    dens = hist.densities
    curve = kde(s, h)
    top = max(float(dens.max()), float(curve.f_hat.max()))
    scale = 0.85 / top
    prims = [
        Rect(float(a), float(b), 0.0, float(d * scale), "bar")
        for a, b, d in zip(hist.edges[:-1], hist.edges[1:], dens)
    ]
    xs, ys = _clip_curve(curve.grid, curve.f_hat * scale, lo, hi)
    prims.append(Polyline(tuple((float(a), float(b)) for a, b in zip(xs, ys)), "density"))
    return PanelGeometry("hist", tuple(prims), (), PANEL_LABELS["hist"], hist)


def violin_geom(s, h, clip=None):
    """Mirrored density silhouette, inner interquartile box, median marker."""
    lo, hi = clip or axis_range(s)
    curve = kde(s, h)
    xs, ys = _clip_curve(curve.grid, curve.f_hat, lo, hi)
    half = 0.4 * ys / ys.max()
    q1, q2, q3 = (float(v) for v in quantile(s, [0.25, 0.5, 0.75]))
    prims = (
        Polygon(_mirror(xs, half), "density"),
        Rect(q1, q3, 0.45, 0.55, "box"),
        Marker(q2, 0.5, "median"),
    )
    return PanelGeometry("violin", prims, (), PANEL_LABELS["violin"], curve)


def box_percentile_profile(s):
    """Vertices ``(x, w)`` of the box-percentile width function.

    ``w = 2 min(F, 1 - F)`` with ``F(x_(i)) = i/n`` (ties take the rank of
    their last occurrence); an extra vertex at the median carries the
    maximal width 1, where the fold happens.
    """
    x = s.values
    n = x.shape[0]
    distinct = np.unique(x)
    rank = np.searchsorted(x, distinct, side="right")
    # integer ranks keep mirrored widths exactly equal
    w = 2.0 * np.minimum(rank, n - rank) / n
    med = float(quantile(s, 0.5))
    at = np.searchsorted(distinct, med)
    if at < distinct.shape[0] and distinct[at] == med:
        w[at] = 1.0
    else:
        distinct = np.insert(distinct, at, med)
        w = np.insert(w, at, 1.0)
    return distinct, w


def box_percentile_geom(s, clip=None):
    xs, w = box_percentile_profile(s)
    half = 0.4 * w
    prims = [Polygon(_mirror(xs, half), "area")]
    for q, role in zip(quantile(s, [0.25, 0.5, 0.75]), ("quartile", "median", "quartile")):
        hw = 0.4 * float(np.interp(q, xs, w))
        prims.append(Segment(float(q), 0.5 - hw, float(q), 0.5 + hw, role))
    return PanelGeometry("bpp", tuple(prims), (), PANEL_LABELS["bpp"], (xs, w))


def letter_value_geom(s, lv=None, clip=None):
    """Nested boxes, one per letter-value level, deepest drawn first."""
    lv = lv or letter_values(s)
    prims = []
    for k in range(lv.levels - 1, 0, -1):
        half = 0.4 * LV_DECAY ** k
        prims.append(Rect(lv.lower[k], lv.upper[k], 0.5 - half, 0.5 + half, f"lv-{k}"))
    m = lv.lower[0]
    prims.append(Rect(m, lv.upper[0], 0.1, 0.9, "lv-0"))
    x = s.values
    outer_lo, outer_hi = lv.lower[-1], lv.upper[-1]
    outliers = tuple(float(v) for v in x[(x < outer_lo) | (x > outer_hi)])
    prims += [Marker(v, 0.5, "outlier") for v in outliers]
    return PanelGeometry("lv", tuple(prims), outliers, PANEL_LABELS["lv"], lv)


def bean_geom(s, h, clip=None):
    """Density silhouette, one short line per observation, long mean line."""
    lo, hi = clip or axis_range(s)
    curve = kde(s, h)
    xs, ys = _clip_curve(curve.grid, curve.f_hat, lo, hi)
    half = 0.4 * ys / ys.max()
    prims = [Polygon(_mirror(xs, half), "density")]
    prims += [Segment(float(v), 0.45, float(v), 0.55, "bean") for v in s.values]
    mean = float(s.values.mean())
    prims.append(Segment(mean, 0.2, mean, 0.8, "mean"))
    return PanelGeometry("bean", tuple(prims), (), PANEL_LABELS["bean"], curve)


@dataclass(frozen=True)
class MeanBoxStats:
    mean: float
    sd: float
    ci_lo: float
    ci_hi: float
    whisker_lo: float
    whisker_hi: float
    degenerate: bool = False


def mean_box_stats(s, level=0.95, spread=2.0):
    """``mean +/- t_{(1+level)/2, n-1} sd / sqrt(n)`` box, ``mean +/- 2 sd``
    whiskers. Zero variance (or ``n == 1``) collapses everything to the mean.
    """
    x = s.values
    mean = float(x.mean())
    sd = std(s)
    if s.n < 2 or sd == 0.0:
        return MeanBoxStats(mean, 0.0, mean, mean, mean, mean, True)
    t = float(stdtrit(s.n - 1, 0.5 + level / 2.0))
    half = t * sd / math.sqrt(s.n)
    return MeanBoxStats(mean, sd, mean - half, mean + half,
                        mean - spread * sd, mean + spread * sd)


def mean_box_geom(s, clip=None):
    lo, hi = clip or axis_range(s)
    b = mean_box_stats(s)
    c = lambda v: _clamp(v, lo, hi)  # noqa: E731
    prims = (
        Rect(c(b.ci_lo), c(b.ci_hi), 0.3, 0.7, "box"),
        Segment(c(b.whisker_lo), 0.5, c(b.ci_lo), 0.5, "whisker"),
        Segment(c(b.ci_hi), 0.5, c(b.whisker_hi), 0.5, "whisker"),
        Segment(c(b.whisker_lo), 0.4, c(b.whisker_lo), 0.6, "cap"),
        Segment(c(b.whisker_hi), 0.4, c(b.whisker_hi), 0.6, "cap"),
        Segment(b.mean, 0.2, b.mean, 0.8, "mean"),
    )
    return PanelGeometry("meanbox", prims, (), PANEL_LABELS["meanbox"], b)


def rug_geom(s, clip=None):
    prims = tuple(Segment(float(v), 0.1, float(v), 0.9, "tick") for v in s.values)
    return PanelGeometry("rug", prims, (), PANEL_LABELS["rug"], None)


def build_panels(s, kinds, h, rule=None, mc=None, clip=None):
    """Geometry for each panel name in ``kinds`` (``"rug"`` excluded)."""
    clip = clip or axis_range(s)
    builders = {
        "hist": lambda: histogram_geom(s, h, rule, clip),
        "notched": lambda: notched_geom(s, clip),
        "classical": lambda: classical_geom(s, clip),
        "adjusted": lambda: adjusted_geom(s, mc, clip),
        "violin": lambda: violin_geom(s, h, clip),
        "bpp": lambda: box_percentile_geom(s, clip),
        "lv": lambda: letter_value_geom(s, None, clip),
        "bean": lambda: bean_geom(s, h, clip),
        "meanbox": lambda: mean_box_geom(s, clip),
    }
    return [builders[k]() for k in kinds]
