import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from mcgap.core import InvalidDelta, TooFewEigenvalues
from mcgap.intervals import (FLAG_DEGENERATE, FLAG_UNAVAILABLE, DeviationBounds, Interval,
                             TailParams, combined_intervals, empirical_intervals, entrywise_bounds,
                             gap_width, pi_bounds, sensitivity, solve_self_bounded,
                             spectral_gap_estimate, tail_function, tail_threshold)
from mcgap.path_stats import TransitionCounts

from oracles import bound_entry, gap_halfwidth, tail_f, tail_scan

# oracle outputs, frozen
TAU_1E5_5_01 = 10.868568448579715
B_N1000_P03_TAU8 = 0.11704938898315363
B_N1500_P02_TAU8 = 0.08157759506410822
W_EXAMPLE = 0.32153854984701036


@pytest.mark.parametrize("eigs, gap", [
    ((1.0, 0.3, -0.5), 0.5),
    ((1.0, 0.9, 0.2), 0.1),
    ((1.0, -0.2), 0.8),
])
def test_spectral_gap_estimate(eigs, gap):
    assert spectral_gap_estimate(eigs) == pytest.approx(gap, abs=1e-15)


def test_spectral_gap_needs_two():
    with pytest.raises(TooFewEigenvalues):
        spectral_gap_estimate([1.0])


class TestTail:
    def test_known_value(self):
        tail = tail_threshold(10**5, 5, 0.1)
        assert tail.tau == pytest.approx(TAU_1E5_5_01, abs=1e-6)
        assert tail.c == 1.1

    @settings(max_examples=200, deadline=None)
    @given(st.integers(2, 10**7), st.integers(2, 200), st.floats(1e-6, 0.999))
    def test_is_infimum(self, n, d, delta):
        tau = tail_threshold(n, d, delta).tau
        assert tail_f(tau, n, d) <= delta
        assert tau <= 1e-6 or tail_f(tau - 1e-6, n, d) > delta

    def test_function_matches_oracle(self):
        for t in np.geomspace(1e-3, 1e4, 500):
            assert tail_function(t, 1000, 7) == tail_f(t, 1000, 7)
        assert tail_function(0.0, 10, 2) == math.inf
        # beyond 2n the log factor vanishes
        assert tail_function(50.0, 10, 3) == pytest.approx(18 * math.exp(-50.0))

    def test_monotone(self):
        for a, b in zip(np.geomspace(1e-2, 100, 400)[:-1], np.geomspace(1e-2, 100, 400)[1:]):
            assert tail_function(b, 10**4, 5) <= tail_function(a, 10**4, 5)
        taus = [tail_threshold(10**4, 5, dl).tau for dl in (0.01, 0.05, 0.1, 0.5)]
        assert taus == sorted(taus, reverse=True)
        taus = [tail_threshold(n, 5, 0.1).tau for n in (10, 10**3, 10**5, 10**7)]
        assert taus == sorted(taus)
        taus = [tail_threshold(1000, d, 0.1).tau for d in (2, 5, 20, 100)]
        assert taus == sorted(taus)

    @pytest.mark.parametrize("delta", [0.0, 1.0, -0.1, 1.5, float("nan")])
    def test_invalid_delta(self, delta):
        with pytest.raises(InvalidDelta):
            tail_threshold(100, 2, delta)

    def test_grid_scan_oracle(self):
        for n, d, delta in [(100, 2, 0.5), (10**6, 30, 0.01), (2, 2, 0.9)]:
            assert tail_threshold(n, d, delta).tau == pytest.approx(tail_scan(n, d, delta), abs=1e-6)


def _counts(N):
    N = np.asarray(N)
    return TransitionCounts(N, np.diag(N), int(N.sum()) + 1)


class TestEntrywise:
    def test_example(self):
        P = np.array([[0.7, 0.3], [0.2, 0.8]])
        tail = TailParams(tau=8.0, n=2501, d=2, delta=0.1)
        B = entrywise_bounds(P, _counts([1000, 1500]), tail)
        assert B[0, 1] == pytest.approx(B_N1000_P03_TAU8, rel=1e-13)
        assert B[0, 0] == pytest.approx(B_N1000_P03_TAU8, rel=1e-13)
        assert B[1, 0] == pytest.approx(B_N1500_P02_TAU8, rel=1e-13)

    def test_matches_scalar_oracle(self, rng):
        d = 6
        P = rng.dirichlet(np.ones(d), size=d)
        N = rng.integers(0, 500, d)
        tail = TailParams(tau=9.3, n=3000, d=d, delta=0.05)
        B = entrywise_bounds(P, _counts(N), tail)
        for i in range(d):
            for j in range(d):
                assert B[i, j] == pytest.approx(bound_entry(int(N[i]), P[i, j], 9.3, d), rel=1e-13)

    def test_unvisited_row(self):
        B = entrywise_bounds(np.full((3, 3), 1 / 3), _counts([0, 10, 5]), TailParams(5.0, 16, 3, 0.1))
        np.testing.assert_array_equal(B[0], 1.0)
        assert np.all(B <= 1.0) and np.all(B >= 0.0)

    def test_decreasing_in_visits(self):
        P = np.array([[0.7, 0.3], [0.2, 0.8]])
        tail = TailParams(8.0, 10, 2, 0.1)
        prev = np.inf
        for N in [1, 10, 100, 10**3, 10**4, 10**6, 10**9]:
            cur = entrywise_bounds(P, _counts([N, N]), tail)[0, 1]
            assert cur <= prev
            prev = cur
        assert prev < 1e-3


class TestSensitivity:
    def test_uniform(self):
        for d in (2, 3, 10):
            assert sensitivity(np.eye(d) - np.full((d, d), 1 / d)) == pytest.approx(0.5)

    def test_two_state(self):
        p, q = 0.3, 0.2
        A = np.eye(2) - np.array([[1 - p, p], [q, 1 - q]])
        assert sensitivity(A / (p + q) ** 2) == pytest.approx(1 / (2 * (p + q)), abs=1e-14)

    def test_zero(self):
        assert sensitivity(np.zeros((3, 3))) == 0.0


class TestPiBounds:
    def test_example(self):
        b, rho = pi_bounds(0.5, np.array([[0.1, 0.02], [0.05, 0.0]]), [0.5, 0.5])
        assert b == pytest.approx(0.05)
        assert rho == pytest.approx(0.5 * max(0.1, 0.05 / 0.45))
        assert round(rho, 4) == 0.0556

    def test_infinite(self):
        b, rho = pi_bounds(2.0, np.full((2, 2), 0.1), [0.15, 0.85])
        assert b == pytest.approx(0.2) and rho == math.inf

    def test_zero_kappa(self):
        assert pi_bounds(0.0, np.full((2, 2), 0.3), [0.2, 0.8]) == (0.0, 0.0)


class TestGapWidth:
    @pytest.mark.parametrize("d, beta", [(2, 0.1), (5, 0.03)])
    def test_uniform(self, d, beta):
        assert gap_width(0.0, np.full(d, 1 / d), np.full((d, d), beta)) == pytest.approx(beta * d)

    def test_infinite(self):
        assert gap_width(math.inf, [0.5, 0.5], np.zeros((2, 2))) == math.inf

    def test_example(self):
        B = [[B_N1000_P03_TAU8, B_N1000_P03_TAU8], [B_N1500_P02_TAU8, B_N1500_P02_TAU8]]
        got = gap_width(0.05, [0.4, 0.6], np.array(B))
        assert got == pytest.approx(W_EXAMPLE, rel=1e-13)
        assert got == pytest.approx(gap_halfwidth(0.05, [0.4, 0.6], B), rel=1e-13)


class TestEmpirical:
    def test_degenerate(self):
        ivs = empirical_intervals([0.3, 0.7], 0.0, 0.4, 0.0)
        assert ivs.pi == (Interval(0.3, 0.3), Interval(0.7, 0.7))
        assert ivs.gap == Interval(0.4, 0.4)
        assert ivs.pimin == Interval(0.3, 0.3)
        assert ivs.relaxation.lo == ivs.relaxation.hi == pytest.approx(2.5)

    def test_clipping(self):
        ivs = empirical_intervals([0.1, 0.9], 0.2, 0.3, 1.0)
        assert ivs.gap == Interval(0.0, 1.0)
        assert ivs.pi[0].lo == 0.0 and ivs.pi[0].hi == pytest.approx(0.3)
        assert ivs.pi[1].hi == 1.0
        assert ivs.relaxation == Interval(1.0, math.inf)

    @given(st.lists(st.floats(0.01, 1.0), min_size=2, max_size=8),
           st.floats(0, 2), st.floats(1e-3, 1.0), st.floats(0, 2) | st.just(math.inf))
    def test_contains_point_estimates(self, raw, b, gap, w):
        pi = np.asarray(raw) / np.sum(raw)
        ivs = empirical_intervals(pi, b, gap, w)
        for p, I in zip(pi, ivs.pi):
            assert p in I and 0 <= I.lo <= I.hi <= 1
        assert gap in ivs.gap and pi.min() in ivs.pimin
        assert 1 / gap in ivs.relaxation


def _bounds(gap_est, pimin_est, scale=0.01):
    """A stand-in with the right shape: widths grow as the lower bounds shrink."""
    return DeviationBounds(
        gap_estimate=gap_est,
        pimin_estimate=pimin_est,
        gap_halfwidth=lambda pl, gl: scale / math.sqrt(pl * gl),
        pimin_halfwidth=lambda x, pl, gl: scale * math.sqrt(x / gl) + scale / gl,
    )


class TestCombined:
    pi = np.array([0.3, 0.7])

    def _emp(self, b=0.05, gap=0.4, w=0.1):
        return empirical_intervals(self.pi, b, gap, w), b, gap, w

    def test_unavailable(self):
        emp, b, g, w = self._emp()
        comb = combined_intervals(emp, self.pi, b, g, w, None)
        assert comb.gap == emp.gap and comb.pimin == emp.pimin
        assert comb.flags == (FLAG_UNAVAILABLE,)

    def test_degenerate_gap(self):
        emp, b, g, w = self._emp(w=0.5)
        comb = combined_intervals(emp, self.pi, b, g, w, _bounds(0.41, 0.3))
        assert comb.gap == emp.gap and FLAG_DEGENERATE in comb.flags

    def test_degenerate_pimin(self):
        emp, b, g, w = self._emp(b=0.35)
        comb = combined_intervals(emp, self.pi, b, g, w, _bounds(0.41, 0.3))
        assert comb.pimin == emp.pimin and FLAG_DEGENERATE in comb.flags

    def test_intersection_shrinks(self):
        emp, b, g, w = self._emp()
        comb = combined_intervals(emp, self.pi, b, g, w, _bounds(0.41, 0.3, scale=0.005))
        assert comb.flags == ()
        assert comb.gap.issubset(emp.gap) and comb.gap.width < emp.gap.width
        assert comb.pimin.issubset(emp.pimin) and comb.pimin.width < emp.pimin.width
        # gap: centred at 0.41 with half-width 0.005/sqrt(0.25 * 0.3)
        assert comb.gap.lo == pytest.approx(0.41 - 0.005 / math.sqrt(0.25 * 0.3))

    @settings(max_examples=100, deadline=None)
    @given(st.floats(0, 0.4), st.floats(0.05, 1), st.floats(0, 1), st.floats(0, 1),
           st.floats(1e-4, 0.2))
    def test_always_nested(self, b, gap, w, gap_est, scale):
        emp = empirical_intervals(self.pi, b, gap, w)
        comb = combined_intervals(emp, self.pi, b, gap, w, _bounds(gap_est, 0.3, scale))
        assert comb.gap.issubset(emp.gap)
        assert comb.pimin.issubset(emp.pimin)
        assert comb.gap.issubset(Interval(max(gap - w, 0), min(gap + w, 1)))


def test_solve_self_bounded():
    # |0.2 - x| <= 0.1 sqrt(x): endpoints are roots of (x - 0.2)^2 = 0.01 x
    I = solve_self_bounded(0.2, lambda x: 0.1 * math.sqrt(x))
    roots = np.sort(np.roots([1, -0.41, 0.04]))
    assert I.lo == pytest.approx(roots[0], abs=1e-10)
    assert I.hi == pytest.approx(roots[1], abs=1e-10)
    assert solve_self_bounded(0.5, lambda x: 10.0) == Interval(0.0, 1.0)
