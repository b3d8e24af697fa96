import math
import random

import pytest

from teichgap import spectral as SP
from teichgap.group_words import L, Mat2, S, T


def test_geodesic_length():
    assert SP.geodesic_length(Mat2(29, 12, 12, 5)) == pytest.approx(2 * math.acosh(17))
    assert SP.geodesic_length(Mat2(29, 12, 12, 5)) == pytest.approx(7.050993, abs=1e-5)
    assert SP.geodesic_length(Mat2(2, 1, 1, 1)) == pytest.approx(2 * math.acosh(1.5))
    with pytest.raises(ValueError):
        SP.geodesic_length(Mat2(1, 1, 0, 1))


def test_acosh_matches_math():
    for z in (1.0, 1.5, 17.0, 1e5, 1e12):
        assert SP.acosh(z) == pytest.approx(math.acosh(z), rel=1e-12)


def test_geodesic_length_conjugation_invariant():
    rng = random.Random(2)
    m = Mat2(29, 12, 12, 5)
    for _ in range(50):
        g = Mat2(1, 0, 0, 1)
        for _ in range(6):
            g = g @ rng.choice([T, L, S])
        assert SP.geodesic_length(g @ m @ g.inverse()) == pytest.approx(SP.geodesic_length(m))


def test_bounds_k3():
    b = SP.bounds_for_k(3)
    assert b.lambda_bound == pytest.approx(0.163556, abs=1e-4)
    assert b.complementary_series_certified and b.noncongruence_certified
    assert b.lambda_bound == pytest.approx(10 * b.h_bound ** 2 + 2 * b.h_bound, rel=1e-12)
    assert SP.buser_lambda(b.h_bound) == pytest.approx(b.lambda_bound, rel=1e-12)


def test_bounds_k2_not_certified():
    b = SP.bounds_for_k(2)
    assert b.lambda_bound == pytest.approx(0.2745, abs=1e-4)
    assert not b.complementary_series_certified and b.gap_bound is None


def test_monotone_and_coarse_chain():
    prev = SP.bounds_for_k(3)
    for k in range(4, 200):
        b = SP.bounds_for_k(k)
        assert b.lambda_bound < prev.lambda_bound and b.gap_bound < prev.gap_bound
        prev = b
    for k in (3, 10, 1000, 10 ** 6):
        b = SP.bounds_for_k(k)
        assert b.gap_bound < math.sqrt(3) / k
        assert b.gap_bound <= b.gap_chain


def test_appendix():
    assert SP.appendix_K_tilde() == pytest.approx(10.9822, abs=1e-4)
    assert SP.appendix_t(170) == pytest.approx(math.acosh(14113))
    assert SP.appendix_t(170) == pytest.approx(10.248, abs=1e-3)
    n = SP.appendix_min_N()
    assert n == 170
    assert not SP.appendix_predicate(169) and SP.appendix_predicate(170)
    assert SP.appendix_stable_from(170, count=100)


def test_appendix_crude_bound_is_not_monotone():
    """Without the (1 - Area) factor the threshold is also 170, but odd N = 171 fails."""
    assert SP.appendix_min_N(with_complement=False) == 170
    assert not SP.appendix_predicate(171, with_complement=False)


def test_area_check():
    assert all(ok for _, ok, _ in SP.area_check())
    assert SP.area_for_index(72) == pytest.approx(24 * math.pi)
