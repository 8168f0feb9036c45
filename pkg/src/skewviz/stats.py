"""Order statistics, moments, medcouple and letter values."""
from dataclasses import dataclass, field
import math

import numpy as np

from . import _kernels
from .errors import DomainError, EmptySample

#: kernel-matrix size above which the O(n log n) medcouple is used by default
MEDCOUPLE_NAIVE_LIMIT = 250_000

LETTERS = "MFEDCBAZYXWVUTSRQPONLKJIHG"


@dataclass(frozen=True, eq=False)
class SortedSample:
    """Ascending, finite copy of the input; build it with :func:`make_sample`."""

    values: np.ndarray
    dropped: int = 0

    @property
    def n(self):
        return self.values.shape[0]

    def __len__(self):
        return self.values.shape[0]

    def __eq__(self, other):
        if not isinstance(other, SortedSample):
            return NotImplemented
        return self.dropped == other.dropped and np.array_equal(self.values, other.values)

    __hash__ = None

    def map(self, scale, shift=0.0):
        """Sample under ``x -> scale * x + shift``; a negative scale re-sorts."""
        vals = scale * self.values + shift
        if scale < 0:
            vals = vals[::-1]
        vals = np.array(vals, dtype=np.float64)
        vals.setflags(write=False)
        return SortedSample(vals, self.dropped)


def make_sample(raw):
    """Validate ``raw``, drop NaN/infinite entries and sort.

    >>> make_sample([3, 1, float("nan"), 2])
    SortedSample(values=array([1., 2., 3.]), dropped=1)
    """
    arr = np.asarray(raw, dtype=np.float64).ravel()
    finite = np.isfinite(arr)
    kept = np.sort(arr[finite])
    if kept.shape[0] == 0:
        raise EmptySample(f"no finite values among {arr.shape[0]} inputs")
    kept.setflags(write=False)
    return SortedSample(kept, int(arr.shape[0] - kept.shape[0]))


def _lerp(lo, hi, t):
    # Exact midpoint at t == 0.5 (matches letter-value depths); each half is
    # clamped against it so the result stays monotone in t.
    mid = 0.5 * (lo + hi)
    below = np.minimum(lo + (hi - lo) * t, mid)
    above = np.maximum(hi - (hi - lo) * (1.0 - t), mid)
    return np.where(t < 0.5, below, np.where(t > 0.5, above, mid))


def quantile(s, p):
    """Type-7 quantile: linear interpolation at ``h = (n - 1) p``.

    ``p`` may be a scalar or an array of probabilities in ``[0, 1]``.
    """
    p_arr = np.asarray(p, dtype=np.float64)
    if np.any(~((p_arr >= 0.0) & (p_arr <= 1.0))):
        raise DomainError(f"probability outside [0, 1]: {p!r}")
    x = s.values
    h = (x.shape[0] - 1) * p_arr
    lo = np.floor(h).astype(np.intp)
    hi = np.minimum(lo + 1, x.shape[0] - 1)
    out = _lerp(x[lo], x[hi], h - lo)
    if out.ndim == 0:
        return float(out)
    return out


def median(s):
    return quantile(s, 0.5)


def iqr(s):
    """Conventional interquartile range ``Q3 - Q1`` (no 1.5 factor)."""
    q1, q3 = quantile(s, [0.25, 0.75])
    return float(q3 - q1)


def std(s):
    """Sample standard deviation with the ``n - 1`` denominator."""
    if s.n < 2:
        return 0.0
    return float(np.std(s.values, ddof=1))


def central_moments(values, orders=(2, 3, 4)):
    """Population (``1/n``) central moments, two-pass."""
    x = np.asarray(values, dtype=np.float64)
    d = x - x.mean()
    return tuple(float(np.mean(d ** k)) for k in orders)


@dataclass(frozen=True)
class SummaryStats:
    """The rows of the summary table plus ``n``.

    ``skewness`` is ``m3 / m2**1.5`` and ``kurtosis`` the non-excess
    ``m4 / m2**2``; both are NaN (and ``degenerate`` is set) when ``m2 == 0``.
    """

    n: int
    min: float
    q1: float
    median: float
    mean: float
    q3: float
    max: float
    skewness: float
    kurtosis: float
    degenerate: bool = False

    ROWS = (
        ("Min", "min"),
        ("1st Quartile", "q1"),
        ("Median", "median"),
        ("Mean", "mean"),
        ("3rd Quartile", "q3"),
        ("Max", "max"),
        ("Skewness", "skewness"),
        ("Kurtosis", "kurtosis"),
    )

    def rows(self):
        return [(label, getattr(self, attr)) for label, attr in self.ROWS]


def summary(s):
    x = s.values
    q1, q2, q3 = quantile(s, [0.25, 0.5, 0.75])
    mean = float(x.mean())
    d = x - x.mean()
    # shape statistics are scale-free; normalising first keeps m2**2 and m4
    # away from underflow/overflow
    scale = float(np.max(np.abs(d)))
    m2, m3, m4 = central_moments(d / scale) if scale > 0.0 else (0.0, 0.0, 0.0)
    if m2 > 0.0:
        skew = m3 / m2 ** 1.5
        kurt = m4 / (m2 * m2)
        degenerate = False
    else:
        skew = kurt = math.nan
        degenerate = True
    # the mean of a constant sample can be off by an ulp; keep min <= mean <= max
    mean = min(max(mean, float(x[0])), float(x[-1]))
    return SummaryStats(
        n=s.n, min=float(x[0]), q1=float(q1), median=float(q2), mean=mean,
        q3=float(q3), max=float(x[-1]), skewness=skew, kurtosis=kurt,
        degenerate=degenerate,
    )


@dataclass(frozen=True)
class Medcouple:
    value: float
    degenerate: bool = False

    def __float__(self):
        return self.value


def medcouple(s, method="auto"):
    """Medcouple robust skewness of a sample.

    ``method`` is ``"naive"`` (enumerate every kernel value), ``"fast"``
    (order-statistic selection on the implicit kernel matrix) or ``"auto"``,
    which uses the naive route while the matrix has at most
    ``MEDCOUPLE_NAIVE_LIMIT`` entries. Both routes return identical values.
    """
    x = s.values
    if x[0] == x[-1]:
        return Medcouple(0.0, degenerate=True)
    zp, zm = _kernels.split_centered(x, median(s))
    size = zp.shape[0] * zm.shape[0]
    if method == "auto":
        method = "naive" if size <= MEDCOUPLE_NAIVE_LIMIT else "fast"
    if method == "naive":
        value = _kernels.medcouple_naive(zp, zm)
    elif method == "fast":
        value = _kernels.medcouple_select(zp, zm)
    else:
        raise DomainError(f"unknown medcouple method {method!r}")
    return Medcouple(float(value))


@dataclass(frozen=True)
class LetterValueSet:
    """Letter values by level; level 0 is the median (``lower == upper``)."""

    depths: tuple
    lower: tuple
    upper: tuple
    labels: tuple = field(default=())

    @property
    def levels(self):
        return len(self.depths)


def letter_depths(n, stop_count=5):
    """Depths ``d1 = (1+n)/2``, ``d_{k+1} = (1 + floor(d_k))/2``.

    Levels beyond the median are kept while ``2 * d_k >= stop_count``.
    """
    depths = [(1 + n) / 2]
    while True:
        d = (1 + math.floor(depths[-1])) / 2
        if d >= depths[-1] or 2 * d < stop_count:
            break
        depths.append(d)
    return depths


def letter_values(s, stop_count=5):
    x = s.values
    n = x.shape[0]
    depths = letter_depths(n, stop_count)
    lower, upper = [], []
    for d in depths:
        a, b = math.floor(d) - 1, math.ceil(d) - 1
        lower.append(float(0.5 * (x[a] + x[b])))
        upper.append(float(0.5 * (x[n - 1 - a] + x[n - 1 - b])))
    labels = tuple(LETTERS[k] if k < len(LETTERS) else f"L{k}" for k in range(len(depths)))
    return LetterValueSet(tuple(depths), tuple(lower), tuple(upper), labels)
