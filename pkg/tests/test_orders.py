import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from iqfcalc.dist import AtomicDistribution
from iqfcalc.orders import (
    cantelli_extremal,
    cx_witness,
    icx_witness,
    leq_cx,
    leq_decx,
    leq_icx,
    positive_tail_extremal,
)

from oracles import contraction, icx_brute, random_law, stop_loss_direct

TOL = 1e-9

D0 = AtomicDistribution.point(0.0)
COIN = AtomicDistribution([-1.0, 1.0], [0.5, 0.5])
BERN = AtomicDistribution([0.0, 1.0], [0.5, 0.5])
WIDE = AtomicDistribution([-2.0, 0.0, 2.0], [0.25, 0.5, 0.25])

seeds = st.integers(0, 2**32 - 1)


def small_law(rng):
    return random_law(rng, max_atoms=4, scale=3, integer=True)


class TestIcx:
    def test_constant_below_spread(self):
        assert leq_icx(D0, COIN)

    def test_spread_not_below_constant(self):
        assert not leq_icx(COIN, D0)
        assert stop_loss_direct(COIN, 0.0) == 0.5 > stop_loss_direct(D0, 0.0)
        assert icx_witness(COIN, D0) == 0.5

    def test_reflexive(self):
        assert leq_icx(COIN, COIN)


class TestDecx:
    def test_examples(self):
        assert leq_decx(D0, COIN)
        assert leq_decx(COIN, COIN)
        X = AtomicDistribution([-2.0, 0.0], [0.5, 0.5])
        assert not leq_decx(X, AtomicDistribution.point(-1.0))

    @settings(max_examples=200, deadline=None)
    @given(seeds)
    def test_mirror_of_icx(self, seed):
        rng = np.random.default_rng(seed)
        X, Y = small_law(rng), small_law(rng)
        assert leq_decx(X, Y) == leq_icx(X.negate(), Y.negate())


class TestCx:
    def test_examples(self):
        assert leq_cx(D0, COIN)
        assert not leq_cx(D0, BERN)

    def test_coin_below_wide_by_brute_force(self):
        # E|X - c| <= E|Y - c| on a grid plus equal means
        for c in np.linspace(-3, 3, 61):
            lhs = sum(p * abs(x - c) for x, p in COIN.atoms)
            rhs = sum(p * abs(x - c) for x, p in WIDE.atoms)
            assert lhs <= rhs + 1e-12
        assert leq_cx(COIN, WIDE)

    @settings(max_examples=200, deadline=None)
    @given(seeds)
    def test_form_b_agrees(self, seed):
        rng = np.random.default_rng(seed)
        Y = small_law(rng)
        X = contraction(rng, Y) if rng.random() < 0.7 else small_law(rng)
        form_b = leq_icx(X, Y) and abs(X.mean() - Y.mean()) <= TOL
        assert leq_cx(X, Y) == form_b
        assert (cx_witness(X, Y) is None) == leq_cx(X, Y)

    @settings(max_examples=200, deadline=None)
    @given(seeds)
    def test_contraction_is_below(self, seed):
        rng = np.random.default_rng(seed)
        Y = random_law(rng)
        assert leq_cx(contraction(rng, Y), Y)


class TestPartialOrder:
    @settings(max_examples=200, deadline=None)
    @given(seeds)
    def test_axioms(self, seed):
        rng = np.random.default_rng(seed)
        Z = small_law(rng)
        Y = contraction(rng, Z) if rng.random() < 0.5 else small_law(rng)
        X = contraction(rng, Y) if rng.random() < 0.5 else small_law(rng)
        for leq in (leq_icx, leq_decx, leq_cx):
            assert leq(X, X)
            if leq(X, Y) and leq(Y, Z):
                assert leq(X, Z)
        if leq_cx(X, Y) and leq_cx(Y, X):
            assert X.isclose(Y, 1e-9)

    @settings(max_examples=300, deadline=None)
    @given(seeds)
    def test_oracle_agreement(self, seed):
        rng = np.random.default_rng(seed)
        X, Y = small_law(rng), small_law(rng)
        assert leq_icx(X, Y) == icx_brute(X, Y)

    @settings(max_examples=200, deadline=None)
    @given(seeds)
    def test_cx_implies_equal_means(self, seed):
        rng = np.random.default_rng(seed)
        Y = random_law(rng)
        X = contraction(rng, Y)
        assert leq_cx(X, Y)
        assert X.mean() == pytest.approx(Y.mean(), abs=1e-9)
        pts = np.union1d(X.iqf_shift1.breakpoints, Y.iqf_shift1.breakpoints)
        assert np.all(X.iqf_shift1(pts) >= Y.iqf_shift1(pts) - TOL)


class TestCantelli:
    def test_unit(self):
        bound, law = cantelli_extremal(1.0, 1.0)
        assert bound == 0.5
        assert law.atoms == [(-1.0, 0.5), (1.0, 0.5)]

    def test_sigma1_t3(self):
        bound, law = cantelli_extremal(1.0, 3.0)
        assert bound == pytest.approx(1.0 / 10.0, abs=1e-15)
        assert law.mean() == pytest.approx(0.0, abs=1e-15)
        assert law.second_moment() == pytest.approx(1.0, abs=1e-15)
        assert 1.0 - law.cdf_left(3.0) == pytest.approx(bound, abs=1e-15)

    @pytest.mark.parametrize("sigma,t", [(0.0, 1.0), (1.0, 0.0), (-1.0, 2.0)])
    def test_errors(self, sigma, t):
        with pytest.raises(ValueError):
            cantelli_extremal(sigma, t)


class TestPositiveTail:
    def test_example(self):
        bound, law = positive_tail_extremal(0.5, 2.0)
        assert bound == 0.2
        assert law.atoms == [(0.5, 0.8), (3.0, 0.2)]
        assert law.mean() == 1.0
        assert law.second_moment() == 2.0
        assert 1.0 - law.cdf(0.5) == pytest.approx(bound, abs=1e-15)

    @settings(max_examples=100, deadline=None)
    @given(st.floats(0.01, 0.99), st.floats(1.0, 50.0))
    def test_moments(self, a, b):
        bound, law = positive_tail_extremal(a, b)
        assert law.mean() == pytest.approx(1.0, abs=1e-12)
        assert law.second_moment() == pytest.approx(b, rel=1e-12)
        assert law.locations[0] > 0
        assert 1.0 - law.cdf(a) == pytest.approx(bound, abs=1e-12)

    @pytest.mark.parametrize("a,b", [(0.0, 2.0), (1.0, 2.0), (0.5, 0.9)])
    def test_errors(self, a, b):
        with pytest.raises(ValueError):
            positive_tail_extremal(a, b)
