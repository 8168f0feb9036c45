"""Histogram bin rules and Gaussian kernel density estimation."""
from dataclasses import dataclass
import math
import numbers

import numpy as np

from . import _kernels
from .errors import DegenerateVariance, DomainError
from .stats import iqr, std

_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)


@dataclass(frozen=True)
class BinRule:
    """How to bin a histogram.

    ``kind`` is one of ``"sturges"``, ``"scott"``, ``"fd"``, ``"count"``
    (``value`` = number of bins) or ``"width"`` (``value`` = bin width).
    """

    kind: str
    value: float = None

    KINDS = ("sturges", "scott", "fd", "count", "width")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise DomainError(f"unknown bin rule {self.kind!r}")
        if self.kind == "count" and (self.value is None or int(self.value) != self.value
                                     or self.value < 1):
            raise DomainError(f"bin count must be a positive integer, got {self.value!r}")
        if self.kind == "width" and not (self.value is not None and self.value > 0
                                         and math.isfinite(self.value)):
            raise DomainError(f"bin width must be positive, got {self.value!r}")

    @classmethod
    def sturges(cls):
        return cls("sturges")

    @classmethod
    def scott(cls):
        return cls("scott")

    @classmethod
    def freedman_diaconis(cls):
        return cls("fd")

    @classmethod
    def count(cls, k):
        return cls("count", k)

    @classmethod
    def width(cls, h):
        return cls("width", h)


def sturges_bins(s):
    """``ceil(1 + log2 n)``; accepts a sample or a bare count."""
    n = s if isinstance(s, numbers.Integral) else s.n
    return math.ceil(1 + math.log2(n))


def scott_width(sigma, n):
    """``3.5 * sigma * n**(-1/3)``."""
    return 3.5 * sigma / float(np.cbrt(n))


def fd_width(spread, n):
    """``2 * IQR * n**(-1/3)``."""
    return 2.0 * spread / float(np.cbrt(n))


def scott_bandwidth(s):
    sigma = std(s)
    if not sigma > 0.0:
        raise DegenerateVariance("Scott's rule needs a positive standard deviation")
    return scott_width(sigma, s.n)


def fd_bandwidth(s):
    """Freedman-Diaconis width; falls back to Scott's rule when ``IQR == 0``."""
    spread = iqr(s)
    if spread > 0.0:
        return fd_width(spread, s.n)
    try:
        return scott_bandwidth(s)
    except DegenerateVariance:
        raise DegenerateVariance("both IQR and standard deviation are zero") from None


@dataclass(frozen=True, eq=False)
class Histogram:
    edges: np.ndarray
    counts: np.ndarray

    @property
    def widths(self):
        return np.diff(self.edges)

    @property
    def densities(self):
        n = self.counts.sum()
        return self.counts / (n * self.widths)

    @property
    def k(self):
        return self.counts.shape[0]


def _bin_count(s, rule, span):
    if rule.kind == "sturges":
        return sturges_bins(s)
    if rule.kind == "count":
        return int(rule.value)
    if rule.kind == "width":
        h = rule.value
    elif rule.kind == "scott":
        h = scott_bandwidth(s)
    else:
        h = fd_bandwidth(s)
    return max(1, math.ceil(span / h))


def histogram(s, rule=None):
    """Equal-width bins spanning ``[min, max]``; the last bin is closed.

    A constant sample gives one unit-width bin centred on the value.
    """
    rule = rule or BinRule.sturges()
    x = s.values
    lo, hi = float(x[0]), float(x[-1])
    if hi == lo:
        return Histogram(np.array([lo - 0.5, lo + 0.5]), np.array([s.n]))
    k = _bin_count(s, rule, hi - lo)
    edges = np.linspace(lo, hi, k + 1)
    idx = np.searchsorted(edges, x, side="right") - 1
    idx = np.clip(idx, 0, k - 1)
    counts = np.bincount(idx, minlength=k)
    return Histogram(edges, counts)


@dataclass(frozen=True, eq=False)
class DensityCurve:
    grid: np.ndarray
    f_hat: np.ndarray
    bandwidth: float

    def integral(self):
        return float(np.trapezoid(self.f_hat, self.grid))

    @property
    def peak(self):
        i = int(np.argmax(self.f_hat))
        return float(self.grid[i]), float(self.f_hat[i])


def kde_at(s, h, points):
    """Gaussian KDE evaluated exactly at arbitrary ``points``."""
    if not h > 0.0:
        raise DomainError(f"bandwidth must be positive, got {h!r}")
    pts = np.atleast_1d(np.asarray(points, dtype=np.float64))
    sums = _kernels.kde_sums(s.values, pts, h)
    return sums * (_INV_SQRT_2PI / (s.n * h))


def kde(s, h, grid_size=512):
    """Gaussian KDE on a uniform grid over ``[min - 3h, max + 3h]``."""
    if not (h > 0.0 and math.isfinite(h)):
        raise DomainError(f"bandwidth must be positive, got {h!r}")
    if grid_size < 2:
        raise DomainError("grid_size must be at least 2")
    x = s.values
    grid = np.linspace(x[0] - 3.0 * h, x[-1] + 3.0 * h, int(grid_size))
    return DensityCurve(grid, kde_at(s, h, grid), float(h))


def fallback_bandwidth(s):
    """Width used when a data-driven rule is undefined (constant samples)."""
    v = abs(float(s.values[0]))
    return 0.1 * v if v > 0.0 else 1.0


def select_bandwidth(s, spec="scott"):
    """Resolve ``"scott"``, ``"fd"`` or a positive number to a bandwidth.

    Degenerate samples get :func:`fallback_bandwidth` instead of an error.
    """
    if isinstance(spec, str):
        key = spec.strip().lower()
        if key in ("scott", "fd"):
            try:
                return scott_bandwidth(s) if key == "scott" else fd_bandwidth(s)
            except DegenerateVariance:
                return fallback_bandwidth(s)
        try:
            spec = float(key)
        except ValueError:
            raise DomainError(f"bandwidth must be scott, fd or a number, got {spec!r}") from None
    h = float(spec)
    if not (h > 0.0 and math.isfinite(h)):
        raise DomainError(f"bandwidth must be positive, got {spec!r}")
    return h
