import numpy as np
import pytest

from beveridge_accounting import (MonthDate, MonthlySeries, delta, interpolate_at,
                                  moving_average, normalize_shares, splice)
from beveridge_accounting.series import first_bracket


def series(values, start=MonthDate(2000, 1)):
    return MonthlySeries(start, values)


class TestMonthDate:
    def test_ordering_and_successor(self):
        assert MonthDate(2007, 12).shift(1) == MonthDate(2008, 1)
        assert MonthDate(2008, 1).shift(-1) == MonthDate(2007, 12)
        assert MonthDate(2007, 4) < MonthDate(2007, 5) < MonthDate(2008, 1)
        assert MonthDate(2000, 1).shift(25) == MonthDate(2002, 2)

    def test_months_until(self):
        assert MonthDate(2007, 4).months_until(MonthDate(2009, 6)) == 26
        assert MonthDate(2009, 6).months_until(MonthDate(2007, 4)) == -26

    def test_parse_roundtrip(self):
        assert MonthDate.parse("2010-04") == MonthDate(2010, 4)
        assert str(MonthDate(2010, 4)) == "2010-04"
        with pytest.raises(ValueError):
            MonthDate.parse("2010-13")
        with pytest.raises(ValueError):
            MonthDate(2010, 0)

    def test_series_infinity_rejected(self):
        with pytest.raises(ValueError):
            series([1.0, np.inf])


class TestMovingAverage:
    def test_constant_series_unchanged(self):
        s = series([5.0] * 10)
        out = moving_average(s, 3)
        assert np.array_equal(out.values[1:-1], np.full(8, 5.0))
        assert np.isnan(out.values[0]) and np.isnan(out.values[-1])

    def test_window_one_is_identity(self):
        s = series([1.0, 4.0, 9.0])
        assert np.array_equal(moving_average(s, 1).values, s.values)

    def test_centered_hand_case(self):
        out = moving_average(series([1.0, 2.0, 3.0, 4.0]), 3, "centered")
        assert np.isnan(out.values[0]) and np.isnan(out.values[3])
        assert out.values[1] == pytest.approx(2.0, abs=1e-15)
        assert out.values[2] == pytest.approx(3.0, abs=1e-15)

    def test_trailing_hand_case(self):
        out = moving_average(series([1.0, 2.0, 3.0, 4.0]), 3, "trailing")
        assert np.isnan(out.values[0]) and np.isnan(out.values[1])
        assert out.values[2] == pytest.approx(2.0, abs=1e-15)
        assert out.values[3] == pytest.approx(3.0, abs=1e-15)

    def test_even_window_takes_extra_month_after(self):
        out = moving_average(series([1.0, 2.0, 3.0, 4.0, 5.0]), 4, "centered")
        # window at t covers t-1..t+2
        assert out.values[1] == pytest.approx(2.5, abs=1e-15)
        assert out.values[2] == pytest.approx(3.5, abs=1e-15)
        assert np.isnan(out.values[0]) and np.isnan(out.values[3])

    def test_linearity(self):
        rng = np.random.default_rng(7)
        a, b = 2.5, -1.25
        s1 = series(rng.uniform(1, 2, 40))
        s2 = series(rng.uniform(1, 2, 40))
        combo = series(a * s1.values + b * s2.values)
        lhs = moving_average(combo, 5).values
        rhs = a * moving_average(s1, 5).values + b * moving_average(s2, 5).values
        np.testing.assert_allclose(lhs[2:-2], rhs[2:-2], rtol=1e-12)

    def test_missing_propagates(self):
        out = moving_average(series([1.0, np.nan, 3.0, 4.0, 5.0]), 3)
        assert np.isnan(out.values[1]) and np.isnan(out.values[2])
        assert out.values[3] == pytest.approx(4.0)

    def test_errors(self):
        with pytest.raises(ValueError, match="empty input"):
            moving_average(series([]), 3)
        with pytest.raises(ValueError):
            moving_average(series([1.0, 2.0]), 3)
        with pytest.raises(ValueError):
            moving_average(series([1.0, 2.0]), 0)


class TestInterpolateAt:
    def test_midpoint(self):
        assert interpolate_at([0.0, 1.0], [0.0, 10.0], 0.5) == pytest.approx(5.0)

    def test_knot_exact(self):
        x, y = [0.2, 0.4, 0.9], [1.0, -2.0, 4.0]
        for xi, yi in zip(x, y):
            assert interpolate_at(x, y, xi) == yi

    def test_first_crossing_rule(self):
        # non-monotone x: the first bracketing pair (0.06, 0.08) wins
        got = interpolate_at([0.06, 0.08, 0.07], [1.0, 2.0, 3.0], 0.075)
        assert got == pytest.approx(1.75, abs=1e-15)

    def test_extrapolation_refused(self):
        with pytest.raises(ValueError, match="extrapolation refused"):
            interpolate_at([0.0, 1.0], [0.0, 1.0], 1.5)

    def test_monotone_between_knots(self):
        rng = np.random.default_rng(3)
        x = np.sort(rng.uniform(0, 1, 10))
        y = rng.uniform(-1, 1, 10)
        for x0 in rng.uniform(x[0], x[-1], 50):
            got = interpolate_at(x, y, x0)
            i = np.searchsorted(x, x0) - 1
            lo, hi = sorted((y[i], y[i + 1]))
            assert lo - 1e-12 <= got <= hi + 1e-12

    def test_missing_gap_yields_nan(self):
        assert np.isnan(interpolate_at([0.0, np.nan, 10.0], [0.0, 1.0, 2.0], 5.0))

    def test_constant_x_matches_first(self):
        assert first_bracket([0.06, 0.06, 0.06], 0.06) == (0, 0.0)
        assert interpolate_at([0.06, 0.06], [3.0, 9.0], 0.06) == 3.0


class TestSplice:
    def test_identical_series(self):
        base = series([1.0, 2.0, 3.0])
        out = splice(base, base, MonthDate(2000, 2))
        np.testing.assert_array_equal(out.values, base.values)

    def test_scaled_extension_cancels(self):
        base = series([1.0, 2.0, 3.0])
        ext = series(2.0 * base.values)
        out = splice(base, ext, MonthDate(2000, 2))
        np.testing.assert_allclose(out.values, base.values, rtol=1e-15)

    def test_hand_case(self):
        base = series([5.0, 3.0])
        ext = series([4.0, 2.0, 4.0])  # at splice month (2000-02): 2.0
        out = splice(base, ext, MonthDate(2000, 2))
        assert out.values[0] == 5.0
        assert out.values[1] == pytest.approx(3.0)   # continuity
        assert out.values[2] == pytest.approx(6.0)   # 4.0 * (3/2)

    def test_continuous_at_splice(self):
        rng = np.random.default_rng(11)
        base = series(rng.uniform(1, 2, 12))
        ext = series(rng.uniform(2, 4, 12), start=MonthDate(2000, 7))
        m = MonthDate(2000, 9)
        out = splice(base, ext, m)
        assert out.at(m) == pytest.approx(base.at(m), rel=1e-15)
        assert out.values[: base.start.months_until(m)].tolist() == \
            base.values[: base.start.months_until(m)].tolist()

    def test_degenerate_ratio(self):
        base = series([1.0, 2.0])
        ext = series([1.0, 0.0])
        with pytest.raises(ValueError, match="degenerate splice ratio"):
            splice(base, ext, MonthDate(2000, 2))


class TestNormalizeShares:
    def test_already_normalized(self):
        stocks = [series([0.6, 0.5]), series([0.4, 0.5])]
        out = normalize_shares(stocks)
        for got, want in zip(out, stocks):
            np.testing.assert_allclose(got.values, want.values, rtol=1e-15)

    def test_hand_case(self):
        stocks = [series([90.0]), series([6.0]), series([24.0])]
        out = normalize_shares(stocks)
        assert [o.values[0] for o in out] == pytest.approx([0.75, 0.05, 0.20])

    def test_single_stock(self):
        out = normalize_shares([series([7.0, 3.0])])
        np.testing.assert_array_equal(out[0].values, [1.0, 1.0])

    def test_sums_to_one(self):
        rng = np.random.default_rng(5)
        stocks = [series(rng.uniform(10, 100, 30)) for _ in range(3)]
        out = normalize_shares(stocks)
        totals = sum(o.values for o in out)
        np.testing.assert_allclose(totals, 1.0, atol=1e-14)

    def test_zero_total(self):
        with pytest.raises(ValueError, match="empty population month"):
            normalize_shares([series([1.0, 0.0]), series([1.0, 0.0])])

    def test_negative_stock(self):
        with pytest.raises(ValueError, match="negative"):
            normalize_shares([series([1.0, -0.5]), series([1.0, 1.0])])


def test_delta_forward_difference():
    out = delta(series([1.0, 4.0, 9.0]))
    assert out.values[0] == 3.0 and out.values[1] == 5.0
    assert np.isnan(out.values[2])


def test_window_slicing():
    s = series(np.arange(12.0))
    w = s.window(MonthDate(2000, 3), MonthDate(2000, 5))
    assert w.start == MonthDate(2000, 3)
    assert w.values.tolist() == [2.0, 3.0, 4.0]
    with pytest.raises(KeyError):
        s.window(MonthDate(1999, 1), MonthDate(2000, 5))
