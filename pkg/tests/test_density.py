import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.optimize import minimize_scalar

from skewviz.density import (BinRule, fd_bandwidth, fd_width, histogram, kde, kde_at,
                             scott_bandwidth, scott_width, select_bandwidth, sturges_bins)
from skewviz.errors import DegenerateVariance, DomainError
from skewviz.stats import iqr, make_sample, std

data_lists = st.lists(st.floats(-1e3, 1e3, allow_nan=False), min_size=2, max_size=50)


@pytest.mark.parametrize("n,k", [(1, 1), (4446, 14), (1024, 11), (2, 2), (100, 8)])
def test_sturges(n, k):
    assert sturges_bins(n) == k
    assert sturges_bins(make_sample(np.arange(n))) == k


def test_scott_width_examples():
    assert scott_width(1.0, 1000) == 0.35
    assert scott_width(2.0, 8) == 3.5


def test_fd_width_examples():
    assert fd_width(1.0, 1000) == 0.2
    assert fd_width(5.0, 8) == 5.0


@pytest.mark.parametrize("n", [1, 3, 10, 125, 1000, 12345])
def test_rules_scale_as_cube_root(n):
    assert scott_width(1.3, n) / scott_width(1.3, 8 * n) == 2.0
    assert fd_width(0.7, n) / fd_width(0.7, 8 * n) == 2.0


def test_sample_level_rules():
    s = make_sample([1.0, 2.0, 4.0, 8.0, 9.0, 15.0, 16.0, 20.0])
    assert scott_bandwidth(s) == pytest.approx(3.5 * std(s) / 2, rel=1e-15)
    assert fd_bandwidth(s) == pytest.approx(2 * iqr(s) / 2, rel=1e-15)


def test_scott_constant_raises():
    with pytest.raises(DegenerateVariance):
        scott_bandwidth(make_sample([2.0, 2.0, 2.0]))


def test_fd_falls_back_to_scott():
    s = make_sample([0, 1, 1, 1, 1, 1, 1, 5])
    assert iqr(s) == 0.0
    assert fd_bandwidth(s) == scott_bandwidth(s)
    with pytest.raises(DegenerateVariance):
        fd_bandwidth(make_sample([3, 3]))


class TestHistogram:
    def test_two_bins(self):
        h = histogram(make_sample([0, 1, 2, 3]), BinRule.count(2))
        assert h.edges.tolist() == [0, 1.5, 3]
        assert h.counts.tolist() == [2, 2]

    def test_right_closed_last_bin(self):
        h = histogram(make_sample([0, 1, 2]), BinRule.count(2))
        assert h.counts.tolist() == [1, 2]

    @pytest.mark.parametrize("rule", [BinRule.sturges(), BinRule.scott(), BinRule("fd"),
                                      BinRule.count(3), BinRule.width(0.1)])
    def test_constant_sample_single_bin(self, rule):
        h = histogram(make_sample([5, 5, 5]), rule)
        assert h.counts.tolist() == [3]
        assert h.edges.tolist() == [4.5, 5.5]

    def test_width_rule_count(self):
        h = histogram(make_sample([0, 10]), BinRule.width(3))
        assert h.k == 4  # ceil(10 / 3)

    @pytest.mark.parametrize("bad", [("count", 0), ("count", 2.5), ("width", 0),
                                     ("width", -1), ("nope", None)])
    def test_invalid_rule(self, bad):
        with pytest.raises(DomainError):
            BinRule(*bad)

    @settings(max_examples=100)
    @given(data_lists, st.sampled_from(["sturges", "scott", "fd", "count"]))
    def test_partition_and_normalisation(self, data, kind):
        s = make_sample(data)
        rule = BinRule.count(7) if kind == "count" else BinRule(kind)
        try:
            h = histogram(s, rule)
        except DegenerateVariance:
            return
        assert h.counts.sum() == s.n
        assert np.all(np.diff(h.edges) > 0)
        assert h.edges[0] <= s.values[0] and h.edges[-1] >= s.values[-1]
        assert math.fsum(h.densities * h.widths) == pytest.approx(1.0, rel=1e-12)


class TestKDE:
    def test_single_point_peak(self):
        c = kde(make_sample([0.0]), 1.0, grid_size=513)
        assert c.grid[0] == -3 and c.grid[-1] == 3
        assert c.peak == (0.0, pytest.approx(1 / math.sqrt(2 * math.pi), rel=1e-15))

    def test_symmetric_pair(self):
        c = kde(make_sample([-1.0, 1.0]), 0.5)
        np.testing.assert_allclose(c.f_hat, c.f_hat[::-1], rtol=0, atol=1e-12)
        np.testing.assert_allclose(c.grid, -c.grid[::-1], atol=1e-12)

    @pytest.mark.parametrize("h", [0.0, -1.0, math.nan, math.inf])
    def test_bad_bandwidth(self, h):
        with pytest.raises(DomainError):
            kde(make_sample([1.0, 2.0]), h)

    def test_bad_grid(self):
        with pytest.raises(DomainError):
            kde(make_sample([1.0, 2.0]), 1.0, grid_size=1)

    @settings(max_examples=60, deadline=None)
    @given(data_lists, st.floats(0.01, 10))
    def test_integral_band(self, data, rel_h):
        s = make_sample(data)
        h = rel_h * max(std(s), 1e-3)
        c = kde(s, h)
        assert np.all(c.f_hat >= 0)
        assert 0.98 <= c.integral() <= 1.001

    @settings(max_examples=40, deadline=None)
    @given(data_lists, st.floats(-100, 100))
    def test_location_equivariance(self, data, shift):
        s = make_sample(data)
        h = max(std(s), 1.0) * 0.4
        pts = np.linspace(s.values[0] - 3 * h, s.values[-1] + 3 * h, 64)
        a = kde_at(s, h, pts)
        b = kde_at(s.map(1.0, shift), h, pts + shift)
        np.testing.assert_allclose(a, b, rtol=0, atol=1e-12)

    @settings(max_examples=40, deadline=None)
    @given(data_lists, st.floats(0.01, 100))
    def test_scale_relation(self, data, a):
        s = make_sample(data)
        h = max(std(s), 1.0) * 0.4
        pts = np.linspace(s.values[0] - h, s.values[-1] + h, 32)
        lhs = kde_at(s.map(a), a * h, a * pts)
        rhs = kde_at(s, h, pts) / a
        np.testing.assert_allclose(lhs, rhs, rtol=1e-9, atol=1e-300)

    @settings(max_examples=30, deadline=None)
    @given(st.lists(st.floats(-10, 10, allow_nan=False), min_size=1, max_size=30),
           st.floats(0.05, 3))
    def test_halving_bandwidth_never_lowers_peak(self, data, h):
        s = make_sample(data)

        def sup(bw):
            c = kde(s, bw, grid_size=2048)
            x0 = c.peak[0]
            step = c.grid[1] - c.grid[0]
            res = minimize_scalar(lambda t: -kde_at(s, bw, t)[0],
                                  bounds=(x0 - step, x0 + step), method="bounded",
                                  options={"xatol": 1e-12})
            return max(c.peak[1], -res.fun)

        assert sup(h / 2) >= sup(h) * (1 - 1e-9)


class TestSelectBandwidth:
    def test_named(self):
        s = make_sample([1.0, 2.0, 5.0, 9.0])
        assert select_bandwidth(s, "scott") == scott_bandwidth(s)
        assert select_bandwidth(s, "FD") == fd_bandwidth(s)
        assert select_bandwidth(s, 0.25) == 0.25
        assert select_bandwidth(s, "0.5") == 0.5

    def test_constant_sample_fallback(self):
        assert select_bandwidth(make_sample([4.0, 4.0]), "scott") == pytest.approx(0.4)
        assert select_bandwidth(make_sample([0.0]), "fd") == 1.0

    @pytest.mark.parametrize("spec", ["silverman", -1, 0, "nan"])
    def test_invalid(self, spec):
        with pytest.raises(DomainError):
            select_bandwidth(make_sample([1.0, 2.0]), spec)
