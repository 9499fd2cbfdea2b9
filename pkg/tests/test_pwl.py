import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from iqfcalc.dist import AtomicDistribution
from iqfcalc.errors import DomainError, NoBracketError
from iqfcalc.pwl import (
    ConcavePWL,
    ConvexPWL,
    Interval,
    MonotonePWL,
    evaluate,
    fenchel_conjugate,
    levy_distance,
    lower_convex_envelope,
    lower_hull,
    solve_concave_equation,
    subdifferential,
    sup_distance,
)

from oracles import idf_quadrature, levy_brute

TOL = 1e-12
QUAD_TOL = 1e-6

ABS = ConvexPWL([0.0], [0.0], -1.0, 1.0)
COIN = AtomicDistribution([-1.0, 1.0], [0.5, 0.5])


def unit_cdf(c):
    return AtomicDistribution.point(c).cdf_function()


@st.composite
def convex_pwl(draw):
    n = draw(st.integers(1, 6))
    xs = sorted(set(draw(st.lists(st.integers(-50, 50), min_size=n, max_size=n))))
    xs = [x / 4 for x in xs]
    k = len(xs)
    slopes = sorted(draw(st.lists(st.integers(-40, 40), min_size=k + 1, max_size=k + 1)))
    slopes = [s / 8 for s in slopes]
    bounded_left = draw(st.booleans())
    bounded_right = draw(st.booleans())
    if k == 1 and bounded_left and bounded_right:
        bounded_right = False
    y0 = draw(st.integers(-20, 20)) / 4
    ys = [y0]
    for i in range(1, k):
        ys.append(ys[-1] + slopes[i] * (xs[i] - xs[i - 1]))
    s = list(slopes)
    if bounded_left:
        s[0] = -math.inf
    if bounded_right:
        s[-1] = math.inf
    return ConvexPWL.from_parts(xs, ys, s)


class TestConstruction:
    def test_rejects_nonconvex(self):
        with pytest.raises(ValueError):
            ConvexPWL([0, 1, 2], [0, 1, 0])

    def test_rejects_unsorted(self):
        with pytest.raises(ValueError):
            ConvexPWL([1, 0], [0, 0])

    def test_collinear_vertices_merge(self):
        f = ConvexPWL([0, 1, 2], [0, 1, 2], None, None)
        assert f.breakpoints.tolist() == [0.0, 2.0]

    def test_affine_everywhere_is_anchored_at_zero(self):
        f = ConvexPWL([3.0], [7.0], 2.0, 2.0)
        assert f.breakpoints.tolist() == [0.0]
        assert f.values.tolist() == [1.0]

    def test_from_parts_checks_consistency(self):
        with pytest.raises(ValueError):
            ConvexPWL.from_parts([0, 1], [0, 5], [0, 1, 2])

    def test_interval_order(self):
        with pytest.raises(ValueError):
            Interval(1.0, 0.0)


class TestEvaluate:
    def test_abs(self):
        assert evaluate(ABS, 2.0) == 2.0

    def test_outside_domain_is_inf(self):
        f = ConvexPWL([0.0, 1.0], [0.0, 1.0])
        assert evaluate(f, 2.0) == math.inf

    def test_coin_idf_at_half_matches_quadrature(self):
        assert evaluate(COIN.idf, 0.5) == pytest.approx(idf_quadrature(COIN, 0.5), abs=QUAD_TOL)
        assert evaluate(COIN.idf, 0.5) == pytest.approx(0.25, abs=TOL)

    def test_vectorized(self):
        np.testing.assert_allclose(ABS(np.array([-2.0, 0.0, 3.0])), [2.0, 0.0, 3.0])


class TestSubdifferential:
    def test_abs_kink(self):
        assert subdifferential(ABS, 0.0) == Interval(-1.0, 1.0)

    def test_abs_smooth(self):
        assert subdifferential(ABS, 3.0) == Interval(1.0, 1.0)

    def test_coin_iqf_at_half(self):
        # ends are the lower and upper quantiles at 1/2
        iv = subdifferential(COIN.iqf, 0.5)
        assert (iv.lo, iv.hi) == (COIN.quantile_left(0.5), COIN.quantile_right(0.5)) == (-1.0, 1.0)

    def test_outside_interior(self):
        with pytest.raises(DomainError):
            subdifferential(COIN.iqf, 0.0)


class TestConjugate:
    def test_abs_gives_indicator(self):
        g = fenchel_conjugate(ABS)
        assert g.domain == Interval(-1.0, 1.0)
        assert g(0.3) == 0.0 and g(1.5) == math.inf

    def test_linear_gives_point_indicator(self):
        g = fenchel_conjugate(ConvexPWL([0.0], [0.0], 2.5, 2.5))
        assert g.domain == Interval(2.5, 2.5)
        assert g(2.5) == 0.0

    def test_coin_idf_matches_brute_force_sup(self):
        g = fenchel_conjugate(COIN.idf)
        xs = np.linspace(-5, 5, 20001)
        phi = COIN.idf(xs)
        for u in np.linspace(0, 1, 11):
            assert g(u) == pytest.approx(np.max(xs * u - phi), abs=1e-9)
            assert g(u) == pytest.approx(abs(u - 0.5), abs=TOL)

    @settings(max_examples=200, deadline=None)
    @given(convex_pwl())
    def test_involution(self, f):
        assert fenchel_conjugate(fenchel_conjugate(f)).same_vertices(f, TOL)

    @settings(max_examples=100, deadline=None)
    @given(convex_pwl(), st.floats(-20, 20), st.floats(-8, 8))
    def test_young_fenchel(self, f, x, u):
        g = fenchel_conjugate(f)
        fx, gu = f(x), g(u)
        if math.isfinite(fx) and math.isfinite(gu):
            assert fx + gu >= x * u - 1e-9 * max(1.0, abs(x * u), abs(fx), abs(gu))

    @settings(max_examples=100, deadline=None)
    @given(convex_pwl(), st.data())
    def test_subdifferential_inversion(self, f, data):
        g = fenchel_conjugate(f)
        dom = f.domain
        lo = max(dom.lo, -20.0)
        hi = min(dom.hi, 20.0)
        if not lo < hi:
            return
        x = data.draw(st.floats(lo, hi).filter(lambda t: dom.lo < t < dom.hi))
        sub = subdifferential(f, x)
        for u in {sub.lo, sub.hi, 0.5 * (sub.lo + sub.hi)}:
            assert f(x) + g(u) == pytest.approx(x * u, abs=1e-9 * max(1.0, abs(x * u)))
            gd = g.domain
            if gd.lo < u < gd.hi:
                s2 = subdifferential(g, u)
                assert s2.lo - 1e-9 <= x <= s2.hi + 1e-9


class TestEnvelope:
    def test_two_lines(self):
        fs = [ConvexPWL([0, 1], [0, 1]), ConvexPWL([0, 1], [1, 0])]
        env = lower_convex_envelope(fs, Interval(0, 1))
        assert env.isclose(ConvexPWL([0, 1], [0, 0]), TOL)

    def test_single(self):
        f = COIN.iqf_shift1
        assert lower_convex_envelope([f], Interval(0, 1)).isclose(f, TOL)

    def test_nested_tents(self):
        f = ConvexPWL([0, 0.5, 1], [-1, -1, 0])
        g = ConvexPWL([0, 0.5, 1], [-2, -2, 0])
        env = lower_convex_envelope([f, g], Interval(0, 1))
        assert env.same_vertices(g, TOL)
        # chord slopes nondecreasing
        assert np.all(np.diff(env.slopes[1:-1]) >= 0)

    def test_empty(self):
        with pytest.raises(ValueError):
            lower_convex_envelope([], Interval(0, 1))

    def test_infinite_member(self):
        with pytest.raises(DomainError):
            lower_convex_envelope([ConvexPWL([0.2, 1.0], [0, 0])], Interval(0, 1))

    @settings(max_examples=100, deadline=None)
    @given(st.lists(convex_pwl(), min_size=1, max_size=4))
    def test_below_and_touching(self, fs):
        fs = [f for f in fs if math.isfinite(f(-1.0)) and math.isfinite(f(1.0))]
        if not fs:
            return
        env = lower_convex_envelope(fs, Interval(-1.0, 1.0))
        pts = np.linspace(-1, 1, 41)
        mins = np.min([f(pts) for f in fs], axis=0)
        assert np.all(env(pts) <= mins + 1e-9)
        for x, y in env.vertices():
            assert y == pytest.approx(min(float(f(x)) for f in fs), abs=1e-9)

    def test_lower_hull_drops_interior_points(self):
        h = lower_hull([0, 1, 2, 1], [0, 5, 0, -1])
        assert h.vertices() == [(0.0, 0.0), (1.0, -1.0), (2.0, 0.0)]


class TestSolve:
    def test_positive_part(self):
        assert solve_concave_equation(ConvexPWL([0], [0], 0, 1), 0.5, -0.5) == (-1.0, 1.0)

    def test_abs(self):
        assert solve_concave_equation(ABS, 0.0, -1.0) == (-1.0, 1.0)

    def test_shifted_positive_part(self):
        f = AtomicDistribution.point(2.0).idf
        assert f.isclose(ConvexPWL([2.0], [0.0], 0.0, 1.0))
        # x/2 = -1 and x/2 - (x - 2) = -1
        assert solve_concave_equation(f, 0.5, -1.0) == (-2.0, 6.0)
        assert solve_concave_equation(f, 0.5, 0.0) == (0.0, 4.0)

    def test_no_bracket(self):
        with pytest.raises(NoBracketError):
            solve_concave_equation(ABS, 0.0, 0.0)

    def test_vertex_snap(self):
        f = ConvexPWL([-1.0, 0.0, 1.0], [1.0, 0.0, 1.0], -2.0, 2.0)
        a, b = solve_concave_equation(f, 0.0, -1.0)
        assert (a, b) == (-1.0, 1.0)

    @settings(max_examples=100, deadline=None)
    @given(st.integers(0, 10**6), st.floats(0.05, 0.95))
    def test_roots_satisfy_equation(self, seed, v):
        rng = np.random.default_rng(seed)
        d = AtomicDistribution(rng.uniform(-5, 5, 4), rng.dirichlet(np.ones(4)))
        f = d.idf
        top = float(np.max(f.breakpoints * v - f.values))
        c = top - rng.uniform(0.01, 3.0)
        a, b = solve_concave_equation(f, v, c)
        assert a < b
        assert a * v - f(a) == pytest.approx(c, abs=1e-9)
        assert b * v - f(b) == pytest.approx(c, abs=1e-9)


class TestLevy:
    def test_identical(self):
        F = COIN.cdf_function()
        assert levy_distance(F, F) == 0.0

    def test_unit_steps(self):
        assert levy_distance(unit_cdf(0.0), unit_cdf(0.5)) == pytest.approx(0.5, abs=TOL)
        assert levy_distance(unit_cdf(0.0), unit_cdf(3.0)) == pytest.approx(1.0, abs=TOL)

    def test_rejects_non_cdf(self):
        with pytest.raises(ValueError):
            levy_distance(MonotonePWL([0.0], [0.0], [0.5]), unit_cdf(0.0))

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 10**6))
    def test_matches_bisection_on_definition(self, seed):
        rng = np.random.default_rng(seed)
        F = AtomicDistribution(rng.uniform(-2, 2, 3), rng.dirichlet(np.ones(3))).cdf_function()
        uni = MonotonePWL([0.0, 1.0], [0.0, 1.0], [0.0, 1.0])
        G = uni if rng.random() < 0.5 else AtomicDistribution(rng.uniform(-2, 2, 2), [0.5, 0.5]).cdf_function()
        xs = np.linspace(-6, 6, 24001)
        assert levy_distance(F, G) == pytest.approx(levy_brute(F, G, xs), abs=2e-3)

    @settings(max_examples=100, deadline=None)
    @given(st.integers(0, 10**6))
    def test_metric_axioms(self, seed):
        rng = np.random.default_rng(seed)
        Fs = [
            AtomicDistribution(rng.uniform(-3, 3, k), rng.dirichlet(np.ones(k))).cdf_function()
            for k in rng.integers(1, 5, size=3)
        ]
        a, b, c = Fs
        assert levy_distance(a, b) == pytest.approx(levy_distance(b, a), abs=1e-12)
        assert levy_distance(a, c) <= levy_distance(a, b) + levy_distance(b, c) + 1e-12
        assert levy_distance(a, a) == 0.0


class TestSupDistance:
    def test_same(self):
        assert sup_distance(COIN.iqf, COIN.iqf, (0, 1)) == 0.0

    def test_tent(self):
        zero = ConvexPWL([0, 1], [0, 0])
        assert sup_distance(zero, COIN.iqf, Interval(0, 1)) == pytest.approx(0.5, abs=TOL)

    def test_linearized_square(self):
        f = ConvexPWL([0, 1], [0, 1])
        g = ConvexPWL([0, 0.5, 1], [0, 0.25, 1])
        assert sup_distance(f, g, Interval(0, 1)) == pytest.approx(0.25, abs=TOL)

    def test_infinite_on_interval(self):
        with pytest.raises(DomainError):
            sup_distance(COIN.iqf, COIN.iqf, Interval(0, 2))


class TestSerialization:
    @settings(max_examples=100, deadline=None)
    @given(convex_pwl())
    def test_convex_round_trip_bit_faithful(self, f):
        g = ConvexPWL.from_dict(json.loads(json.dumps(f.to_dict())))
        assert g.breakpoints.tolist() == f.breakpoints.tolist()
        assert g.values.tolist() == f.values.tolist()
        assert g.slope_left == f.slope_left and g.slope_right == f.slope_right

    def test_monotone_round_trip(self):
        F = COIN.cdf_function()
        G = MonotonePWL.from_dict(json.loads(json.dumps(F.to_dict())))
        assert G.nodes.tolist() == F.nodes.tolist()
        assert G.left.tolist() == F.left.tolist() and G.right.tolist() == F.right.tolist()

    def test_json_domain_field(self):
        assert COIN.iqf.to_dict()["domain"] == [0.0, 1.0]
        assert ABS.to_dict()["domain"] is None


class TestMonotone:
    def test_right_continuity_and_left_limit(self):
        F = COIN.cdf_function()
        assert F(-1.0) == 0.5 and F.left_limit(-1.0) == 0.0
        assert F(0.0) == 0.5 and F(1.0) == 1.0

    def test_linear_piece(self):
        F = MonotonePWL([0.0, 1.0], [0.0, 0.5], [0.0, 1.0])
        assert F(0.5) == 0.25 and F.left_limit(1.0) == 0.5

    def test_rejects_decreasing(self):
        with pytest.raises(ValueError):
            MonotonePWL([0.0, 1.0], [0.0, 0.2], [0.5, 1.0])


class TestConcave:
    def test_wrapper(self):
        b = ConcavePWL.from_vertices([0, 0.5, 1], [0, 0.5, 0])
        assert b(0.25) == 0.25
        assert b.vertices() == [(0.0, 0.0), (0.5, 0.5), (1.0, 0.0)]
