import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from skewviz import stats
from skewviz.errors import DomainError, EmptySample
from skewviz.stats import letter_values, make_sample, medcouple, quantile, summary

from oracles import (letter_values_bruteforce, medcouple_bruteforce, moments_two_pass,
                     quantile7)

finite = st.floats(-1e6, 1e6, allow_nan=False, allow_infinity=False)
samples = st.lists(finite, min_size=1, max_size=60)


class TestMakeSample:
    def test_sorts(self):
        s = make_sample([3, 1, 2])
        assert s.values.tolist() == [1, 2, 3]
        assert s.n == 3 and s.dropped == 0

    def test_singleton(self):
        assert make_sample([5]).values.tolist() == [5]

    def test_all_nan(self):
        with pytest.raises(EmptySample):
            make_sample([math.nan, math.nan])

    def test_drops_nonfinite(self):
        s = make_sample([1, math.nan, math.inf, 0])
        assert s.values.tolist() == [0, 1]
        assert s.dropped == 2

    def test_immutable(self):
        s = make_sample([1, 2])
        with pytest.raises(ValueError):
            s.values[0] = 9


class TestQuantile:
    @pytest.mark.parametrize("data,p,expected", [
        ([1, 2, 3, 4, 5], 0.5, 3.0),
        ([1, 2, 3, 4], 0.25, 1.75),
        ([1, 2, 3, 4], 0.75, 3.25),
        ([4, 1, 9], 0.0, 1.0),
        ([4, 1, 9], 1.0, 9.0),
    ])
    def test_examples(self, data, p, expected):
        assert quantile(make_sample(data), p) == expected

    @pytest.mark.parametrize("p", [-0.1, 1.5, math.nan])
    def test_domain(self, p):
        with pytest.raises(DomainError):
            quantile(make_sample([1, 2]), p)

    @given(samples, st.floats(0, 1))
    def test_matches_type7(self, data, p):
        s = make_sample(data)
        assert quantile(s, p) == pytest.approx(quantile7(data, p), rel=1e-12, abs=1e-9)

    @given(samples, st.lists(st.floats(0, 1), min_size=2, max_size=40))
    def test_monotone_in_p(self, data, ps):
        q = quantile(make_sample(data), np.sort(ps))
        assert np.all(np.diff(q) >= 0)

    @given(samples, st.floats(0, 1))
    def test_reflection(self, data, p):
        s = make_sample(data)
        assert quantile(s.map(-1.0), 1 - p) == pytest.approx(-quantile(s, p), abs=1e-9)

    def test_median_matches_numpy(self):
        x = np.random.default_rng(1).normal(size=101)
        assert quantile(make_sample(x), [0.25, 0.5, 0.75]) == pytest.approx(
            np.quantile(x, [0.25, 0.5, 0.75]), rel=1e-14)


class TestSummary:
    def test_skewed_four_points(self):
        r = summary(make_sample([0, 0, 0, 1]))
        assert r.skewness == pytest.approx(1.1547005383792515, rel=1e-12)
        assert r.kurtosis == pytest.approx(2.3333333333333335, rel=1e-12)

    def test_symmetric(self):
        assert summary(make_sample([-1, 0, 1])).skewness == 0.0

    def test_constant(self):
        r = summary(make_sample([7, 7, 7]))
        assert (r.min, r.q1, r.median, r.mean, r.q3, r.max) == (7,) * 6
        assert r.degenerate and math.isnan(r.skewness) and math.isnan(r.kurtosis)

    def test_one_to_nine(self):
        r = summary(make_sample(range(1, 10)))
        assert (r.q1, r.median, r.mean, r.q3) == (3, 5, 5, 7)
        assert r.n == 9

    def test_row_labels(self):
        labels = [lab for lab, _ in summary(make_sample([1, 2])).rows()]
        assert labels == ["Min", "1st Quartile", "Median", "Mean", "3rd Quartile", "Max",
                          "Skewness", "Kurtosis"]

    @settings(max_examples=200)
    @given(st.lists(finite, min_size=2, max_size=80))
    def test_invariants(self, data):
        r = summary(make_sample(data))
        assert r.min <= r.q1 <= r.median <= r.q3 <= r.max
        assert r.min <= r.mean <= r.max
        if not r.degenerate:
            # m2 of near-constant floats is dominated by rounding; compare only
            # where the spread is resolvable
            if np.ptp(data) > 1e-6 * max(1.0, np.max(np.abs(data))):
                sk, ku = moments_two_pass(data)
                assert r.skewness == pytest.approx(sk, rel=1e-9, abs=1e-9)
                assert r.kurtosis == pytest.approx(ku, rel=1e-9)
            assert r.kurtosis >= 1 - 1e-12
            assert r.kurtosis >= r.skewness ** 2 + 1 - 1e-9 * r.kurtosis


class TestMedcouple:
    @pytest.mark.parametrize("data,expected", [
        ([0, 1, 2, 3, 4], 0.0),
        ([1, 2, 3, 4, 10], 0.0),
        ([-10, -4, -3, -2, -1], 0.0),
        ([1, 2, 3, 10, 20], 0.75),
        ([1, 1, 2, 5], 0.375),
    ])
    def test_examples(self, data, expected):
        assert medcouple_bruteforce(data) == pytest.approx(expected, abs=1e-15)
        assert medcouple(make_sample(data)).value == pytest.approx(expected, abs=1e-15)

    def test_constant_is_flagged(self):
        mc = medcouple(make_sample([3, 3, 3]))
        assert mc.value == 0.0 and mc.degenerate

    @pytest.mark.parametrize("data", [[1.0], [1.0, 2.0], [2.0, 2.0, 5.0], [0, 0, 0, 0, 1]])
    def test_small_and_tied(self, data):
        assert medcouple(make_sample(data)).value == pytest.approx(
            medcouple_bruteforce(data), abs=1e-15)

    @pytest.mark.parametrize("method", ["naive", "fast"])
    @settings(max_examples=150, deadline=None)
    @given(data=st.lists(st.integers(-5, 5), min_size=1, max_size=40))
    def test_ties_vs_oracle(self, method, data):
        mc = medcouple(make_sample(data), method=method).value
        assert mc == pytest.approx(medcouple_bruteforce(data), abs=1e-12)

    @pytest.mark.parametrize("method", ["naive", "fast"])
    @settings(max_examples=100, deadline=None)
    @given(data=st.lists(finite, min_size=1, max_size=60))
    def test_bounded_and_sign_flip(self, method, data):
        s = make_sample(data)
        mc = medcouple(s, method=method).value
        assert -1.0 <= mc <= 1.0
        assert medcouple(s.map(-1.0), method=method).value == -mc

    def test_fast_agrees_with_naive_large(self):
        x = np.random.default_rng(7).lognormal(size=3001)
        s = make_sample(x)
        assert medcouple(s, "fast").value == medcouple(s, "naive").value

    def test_auto_switches_to_fast(self, monkeypatch):
        monkeypatch.setattr(stats, "MEDCOUPLE_NAIVE_LIMIT", 10)
        x = np.random.default_rng(3).gamma(2.0, size=50)
        assert medcouple(make_sample(x)).value == pytest.approx(medcouple_bruteforce(x),
                                                               abs=1e-12)

    def test_unknown_method(self):
        with pytest.raises(DomainError):
            medcouple(make_sample([1, 2, 3]), method="bogus")


class TestLetterValues:
    def test_one_to_sixteen(self):
        lv = letter_values(make_sample(range(1, 17)))
        assert lv.depths[:2] == (8.5, 4.5)
        assert lv.lower[0] == lv.upper[0] == 8.5
        assert (lv.lower[1], lv.upper[1]) == (4.5, 12.5)
        assert lv.labels[:3] == ("M", "F", "E")

    def test_singleton(self):
        lv = letter_values(make_sample([5]))
        assert lv.levels == 1 and lv.lower == (5.0,) and lv.upper == (5.0,)

    def test_stop_count(self):
        s = make_sample(range(1000))
        assert letter_values(s, stop_count=2).levels > letter_values(s).levels

    @given(samples)
    def test_median_level(self, data):
        s = make_sample(data)
        lv = letter_values(s)
        assert lv.lower[0] == lv.upper[0] == quantile(s, 0.5)

    @settings(max_examples=150)
    @given(samples)
    def test_nesting_and_oracle(self, data):
        s = make_sample(data)
        lv = letter_values(s)
        ref = letter_values_bruteforce(data)
        assert list(lv.depths) == [d for d, _, _ in ref]
        assert list(lv.lower) == [lo for _, lo, _ in ref]
        assert list(lv.upper) == [hi for _, _, hi in ref]
        assert all(a >= b for a, b in zip(lv.lower, lv.lower[1:]))
        assert all(a <= b for a, b in zip(lv.upper, lv.upper[1:]))
        med = lv.lower[0]
        assert all(lo <= med <= hi for lo, hi in zip(lv.lower, lv.upper))
