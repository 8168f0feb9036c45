"""Hot numeric loops: Gaussian KDE sums and the medcouple kernel matrix.

Every kernel comes in two flavours with the same contract:

* ``*_numba``: scalar loops compiled by :func:`skewviz._accel.njit`;
* ``*_numpy``: vectorised numpy, used when numba is disabled or the
  workload is too small to amortise compilation.

The public dispatchers (``kde_sums``, ``medcouple_naive``,
``medcouple_select``) pick one via :func:`skewviz._accel.use_numba`.

Medcouple layout
----------------
With ``z = x - median`` the rows of the kernel matrix run over
``zp = z[z >= 0]`` in descending order and the columns over
``zm = z[z <= 0]`` in descending order, so ``H[i, j]`` is non-increasing
along both axes. Observations tied with the median appear in both (the
last ``k`` rows and the first ``k`` columns); in that block the kernel is
``sign(p - 1 - i - j)``.
"""
import math

import numpy as np

from . import _accel
from ._accel import njit

# exp(-0.5 * 40**2) underflows to exactly 0.0, so skipping such terms
# leaves every accumulated sum bit-for-bit unchanged.
KDE_CUTOFF = 40.0
_KDE_BLOCK = 2048


# --------------------------------------------------------------------- KDE

def kde_sums_numpy(x, grid, h):
    """``sum_i exp(-0.5 ((g - x_i) / h)**2)`` for every grid point ``g``.

    Terms are accumulated in data order for each grid point, block by
    block, through ``np.add.accumulate`` (which is strictly sequential).
    """
    x = np.asarray(x, dtype=np.float64)
    grid = np.asarray(grid, dtype=np.float64)
    acc = np.zeros(grid.shape[0])
    for start in range(0, x.shape[0], _KDE_BLOCK):
        xb = x[start:start + _KDE_BLOCK]
        u = (grid[None, :] - xb[:, None]) / h
        terms = np.exp(-0.5 * u * u)
        acc = np.add.accumulate(np.vstack([acc[None, :], terms]), axis=0)[-1]
    return acc


@njit
def kde_sums_numba(x, grid, h):
    n = x.shape[0]
    m = grid.shape[0]
    out = np.zeros(m)
    reach = KDE_CUTOFF * h
    for g in range(m):
        gv = grid[g]
        lo = np.searchsorted(x, gv - reach, side="left")
        hi = np.searchsorted(x, gv + reach, side="right")
        acc = 0.0
        for i in range(lo, min(hi, n)):
            u = (gv - x[i]) / h
            acc += math.exp(-0.5 * u * u)
        out[g] = acc
    return out


def kde_sums(x, grid, h):
    """Unnormalised Gaussian kernel sums; ``x`` must be sorted ascending."""
    x = np.ascontiguousarray(x, dtype=np.float64)
    grid = np.ascontiguousarray(grid, dtype=np.float64)
    if _accel.use_numba(x.shape[0] * grid.shape[0]):
        return kde_sums_numba(x, grid, float(h))
    return kde_sums_numpy(x, grid, float(h))


# --------------------------------------------------------------- medcouple

def split_centered(x_sorted, median):
    """Return ``(zp, zm)``: the descending row and column vectors."""
    z = np.asarray(x_sorted, dtype=np.float64) - median
    zp = np.ascontiguousarray(z[z >= 0.0][::-1])
    zm = np.ascontiguousarray(z[z <= 0.0][::-1])
    return zp, zm


def _kernel_numpy(zp, zm, rows, cols):
    a = zp[rows]
    b = zm[cols]
    with np.errstate(divide="ignore", invalid="ignore"):
        h = (a + b) / (a - b)
    tie = (a == 0.0) & (b == 0.0)
    if tie.any():
        p = zp.shape[0]
        h[tie] = np.sign(p - 1 - rows[tie] - cols[tie])
    return h


def _median_positions(total):
    return (total - 1) // 2, total // 2


def medcouple_naive_numpy(zp, zm):
    p, q = zp.shape[0], zm.shape[0]
    rows = np.repeat(np.arange(p), q)
    cols = np.tile(np.arange(q), p)
    h = _kernel_numpy(zp, zm, rows, cols)
    lo, hi = _median_positions(h.shape[0])
    part = np.partition(h, (lo, hi))
    return 0.5 * (part[lo] + part[hi])


@njit
def _kernel_scalar(zp, zm, i, j):
    a = zp[i]
    b = zm[j]
    if a == 0.0 and b == 0.0:
        s = zp.shape[0] - 1 - i - j
        if s > 0:
            return 1.0
        if s < 0:
            return -1.0
        return 0.0
    return (a + b) / (a - b)


@njit
def medcouple_naive_numba(zp, zm):
    p = zp.shape[0]
    q = zm.shape[0]
    h = np.empty(p * q)
    for i in range(p):
        for j in range(q):
            h[i * q + j] = _kernel_scalar(zp, zm, i, j)
    total = p * q
    hi = total // 2
    part = np.partition(h, hi)
    upper = part[hi]
    # the lower middle value is the largest entry left of the pivot
    lower = upper if total % 2 == 1 else part[:hi].max()
    return 0.5 * (lower + upper)


def medcouple_naive(zp, zm):
    """Median of all ``p * q`` kernel values, by full enumeration."""
    if _accel.use_numba(zp.shape[0] * zm.shape[0]):
        return medcouple_naive_numba(zp, zm)
    return medcouple_naive_numpy(zp, zm)


# Selection of the r-th largest entry of the monotone kernel matrix without
# materialising it (weighted-median pruning of per-row candidate ranges).

def _count_above_numpy(zp, zm, left, right, value, strict):
    """Per row: first column in ``[left, right+1)`` whose entry is not above
    ``value`` (``>`` if strict else ``>=``), found by binary search."""
    rows = np.arange(zp.shape[0])
    lo = left.copy()
    hi = right + 1
    active = lo < hi
    while active.any():
        r = rows[active]
        mid = (lo[active] + hi[active]) // 2
        h = _kernel_numpy(zp, zm, r, mid)
        above = h > value if strict else h >= value
        lo[r[above]] = mid[above] + 1
        hi[r[~above]] = mid[~above]
        active = lo < hi
    return lo


def _weighted_median_numpy(values, weights):
    order = np.argsort(values, kind="mergesort")
    cum = np.cumsum(weights[order])
    idx = np.searchsorted(2 * cum, cum[-1], side="left")
    return values[order[idx]]


def select_desc_numpy(zp, zm, rank):
    """Entry of descending rank ``rank`` (0-based) of the kernel matrix."""
    p, q = zp.shape[0], zm.shape[0]
    left = np.zeros(p, dtype=np.int64)
    right = np.full(p, q - 1, dtype=np.int64)
    ltot, rtot = 0, p * q
    while rtot - ltot > p:
        live = np.nonzero(left <= right)[0]
        pivots = _kernel_numpy(zp, zm, live, (left[live] + right[live]) // 2)
        weights = right[live] - left[live] + 1
        hmed = _weighted_median_numpy(pivots, weights)
        gt = _count_above_numpy(zp, zm, left, right, hmed, True)
        ge = _count_above_numpy(zp, zm, left, right, hmed, False)
        sum_gt = int(gt.sum())
        sum_ge = int(ge.sum())
        if rank < sum_gt:
            right = gt - 1
            new_l, new_r = ltot, sum_gt
        elif rank >= sum_ge:
            left = ge
            new_l, new_r = sum_ge, rtot
        else:
            return hmed
        if new_r - new_l >= rtot - ltot:
            break  # no progress (float non-monotonicity); finish by sorting
        ltot, rtot = new_l, new_r
    counts = np.maximum(right - left + 1, 0)
    rows = np.repeat(np.arange(p), counts)
    offsets = np.arange(rows.shape[0]) - np.repeat(np.cumsum(counts) - counts, counts)
    cols = left[rows] + offsets
    vals = np.sort(_kernel_numpy(zp, zm, rows, cols))
    return vals[vals.shape[0] - 1 - (rank - ltot)]


@njit
def _count_above_numba(zp, zm, left, right, value, strict):
    p = zp.shape[0]
    out = np.empty(p, dtype=np.int64)
    for i in range(p):
        lo = left[i]
        hi = right[i] + 1
        while lo < hi:
            mid = (lo + hi) // 2
            h = _kernel_scalar(zp, zm, i, mid)
            if (h > value) if strict else (h >= value):
                lo = mid + 1
            else:
                hi = mid
        out[i] = lo
    return out


@njit
def select_desc_numba(zp, zm, rank):
    p = zp.shape[0]
    q = zm.shape[0]
    left = np.zeros(p, dtype=np.int64)
    right = np.full(p, q - 1, dtype=np.int64)
    ltot = 0
    rtot = p * q
    while rtot - ltot > p:
        nlive = 0
        for i in range(p):
            if left[i] <= right[i]:
                nlive += 1
        pivots = np.empty(nlive)
        weights = np.empty(nlive, dtype=np.int64)
        k = 0
        for i in range(p):
            if left[i] <= right[i]:
                pivots[k] = _kernel_scalar(zp, zm, i, (left[i] + right[i]) // 2)
                weights[k] = right[i] - left[i] + 1
                k += 1
        order = np.argsort(pivots, kind="mergesort")
        wtot = weights.sum()
        cum = 0
        hmed = pivots[order[nlive - 1]]
        for t in range(nlive):
            cum += weights[order[t]]
            if 2 * cum >= wtot:
                hmed = pivots[order[t]]
                break
        gt = _count_above_numba(zp, zm, left, right, hmed, True)
        ge = _count_above_numba(zp, zm, left, right, hmed, False)
        sum_gt = gt.sum()
        sum_ge = ge.sum()
        if rank < sum_gt:
            right = gt - 1
            new_l = ltot
            new_r = sum_gt
        elif rank >= sum_ge:
            left = ge
            new_l = sum_ge
            new_r = rtot
        else:
            return hmed
        if new_r - new_l >= rtot - ltot:
            break
        ltot = new_l
        rtot = new_r
    total = 0
    for i in range(p):
        if right[i] >= left[i]:
            total += right[i] - left[i] + 1
    vals = np.empty(total)
    k = 0
    for i in range(p):
        for j in range(left[i], right[i] + 1):
            vals[k] = _kernel_scalar(zp, zm, i, j)
            k += 1
    vals.sort()
    return vals[total - 1 - (rank - ltot)]


def medcouple_select(zp, zm):
    """Median of the kernel matrix in O(n log n) kernel evaluations."""
    total = zp.shape[0] * zm.shape[0]
    lo, hi = _median_positions(total)
    # ascending position t has descending rank total - 1 - t
    if _accel.use_numba(zp.shape[0] * 64):
        select = select_desc_numba
    else:
        select = select_desc_numpy
    a = select(zp, zm, total - 1 - lo)
    b = a if hi == lo else select(zp, zm, total - 1 - hi)
    return 0.5 * (a + b)
