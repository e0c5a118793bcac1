import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.optimize import brentq

from bicons.errors import DomainError
from bicons.family import (
    FamilyParams,
    K_of_f,
    admissible_domain,
    curvature_cubic_h,
    f_max,
    invert_curvature_cubic,
    potential_P,
    potential_P_prime,
)

nonzero_c = st.floats(0.05, 5.0).flatmap(lambda x: st.sampled_from([x, -x]))
any_C = st.floats(-30.0, 60.0)


def test_params_reject_zero_c():
    with pytest.raises(DomainError, match="c must be nonzero"):
        FamilyParams(0.0, 1.0)


def test_params_canonicalize_sign():
    p = FamilyParams(-3.0, 5.0)
    assert (p.c, p.C, p.c_was_negative) == (3.0, 5.0, True)
    assert p.c_squared == 9.0


def test_potential_reference_value(ref_params):
    assert potential_P(1.0, ref_params) == pytest.approx(16 / 9, abs=1e-14)


def test_potential_leading_term_near_zero(ref_params):
    f = 1e-9
    assert potential_P(f, ref_params) / f**2 == pytest.approx(16 / 9, rel=1e-6)


def test_potential_with_zero_C():
    assert potential_P(1.0, FamilyParams(1.0, 0.0)) == pytest.approx(-16.0, abs=1e-13)


def test_potential_rejects_nonpositive_f(ref_params):
    with pytest.raises(DomainError):
        potential_P(0.0, ref_params)
    with pytest.raises(DomainError):
        potential_P_prime(-1.0, ref_params)


def test_potential_prime_reference(ref_params):
    assert potential_P_prime(1.0, ref_params) == pytest.approx(-64 / 9, abs=1e-13)


def test_potential_prime_leading_term(ref_params):
    f = 1e-9
    assert potential_P_prime(f, ref_params) / f == pytest.approx(32 / 9, rel=1e-6)


def test_potential_prime_matches_central_difference(ref_params):
    h = 1e-5
    fd = (potential_P(0.5 + h, ref_params) - potential_P(0.5 - h, ref_params)) / (2 * h)
    assert abs(fd - potential_P_prime(0.5, ref_params)) <= 1e-8


def test_f_max_reference_against_brentq(ref_params):
    # oracle: root of q(s) = 1 + 10 s^3 - 9 s^4 - s^6 in s = sqrt(f)
    s = brentq(lambda s: 1 + 10 * s**3 - 9 * s**4 - s**6, 0.5, 2.0, xtol=1e-15)
    assert s == pytest.approx(1.0674, abs=1e-4)
    assert f_max(ref_params) == pytest.approx(s * s, rel=1e-11)
    assert f_max(ref_params) == pytest.approx(1.1393, abs=1e-3)


def test_f_max_zero_C_against_bisection():
    p = FamilyParams(1.0, 0.0)
    root = brentq(lambda f: 16 / 9 - 16 * f**2 - 16 / 9 * f**3, 1e-6, 1.0, xtol=1e-15)
    assert f_max(p) == pytest.approx(root, rel=1e-11)


@settings(max_examples=60, deadline=None)
@given(nonzero_c, any_C)
def test_f_max_brackets_sign_change(c, C):
    p = FamilyParams(c, C)
    fm = f_max(p)
    assert potential_P(fm * (1 - 1e-6), p) > 0
    assert potential_P(fm * (1 + 1e-6), p) < 0


@settings(max_examples=25, deadline=None)
@given(nonzero_c, any_C)
def test_single_positive_root_by_sign_scan(c, C):
    p = FamilyParams(c, C)
    fm = f_max(p)
    grid = np.geomspace(1e-6, 10 * fm, 10_000)
    signs = np.sign(potential_P(grid, p))
    assert np.count_nonzero(np.diff(signs)) == 1


def test_admissible_domain(ref_params):
    dom = admissible_domain(ref_params)
    assert dom.f_lo == 0.0 and dom.width_positive
    assert dom.contains([0.5, 1.0, 1.13]) and not dom.contains(1.2)


@pytest.mark.parametrize("x, c, expected", [(1.0, 1.0, -5.0), (2.0, 1.0, -21.0), (1.0, 2.0, -8.0)])
def test_cubic_values(x, c, expected):
    assert curvature_cubic_h(x, c) == expected
    assert K_of_f(x, c) == expected


def test_cubic_limit_at_zero():
    assert curvature_cubic_h(1e-12, 1.0) == pytest.approx(-1.0, abs=1e-20)


def test_cubic_strictly_decreasing():
    x = np.geomspace(1e-4, 1e2, 2000)
    for c in (0.1, 1.0, -3.0):
        assert np.all(np.diff(curvature_cubic_h(x, c)) < 0)


def test_cubic_rejects_bad_input():
    with pytest.raises(DomainError):
        curvature_cubic_h(0.0, 1.0)
    with pytest.raises(DomainError):
        K_of_f(-1.0, 1.0)
    with pytest.raises(DomainError):
        curvature_cubic_h(1.0, 0.0)


@pytest.mark.parametrize("K, expected", [(-5.0, 1.0), (-21.0, 2.0)])
def test_inverse_exact_cases(K, expected):
    assert invert_curvature_cubic(K, 1.0) == pytest.approx(expected, rel=1e-15)


@pytest.mark.parametrize("K", [-1.0, -0.5, 3.0])
def test_inverse_rejects_K_at_least_minus_one(K):
    with pytest.raises(DomainError, match="1\\+K<0"):
        invert_curvature_cubic(K, 1.0)


def test_inverse_small_eps_monotone():
    eps = np.geomspace(1e-12, 1e-1, 40)
    f = [invert_curvature_cubic(-1 - e, 1.0) for e in eps]
    assert np.all(np.diff(f) > 0)
    assert f[0] < 1e-5


@pytest.mark.parametrize("f", [0.1, 0.5, 1.0, 2.0])
def test_inverse_round_trip_grid(f):
    assert invert_curvature_cubic(K_of_f(f, 1.0), 1.0) == pytest.approx(f, rel=1e-10)


@settings(max_examples=200, deadline=None)
@given(st.floats(1e-6, 1e3), nonzero_c)
def test_inverse_residual(a, c):
    K = -1.0 - a
    f = invert_curvature_cubic(K, c)
    assert f > 0
    assert abs(curvature_cubic_h(f, c) - K) <= 1e-12 * max(1.0, abs(K))


@settings(max_examples=100, deadline=None)
@given(nonzero_c, any_C, st.floats(1e-3, 1.0))
def test_inverse_composition_on_domain(c, C, t):
    f = t * f_max(FamilyParams(c, C))
    assert invert_curvature_cubic(K_of_f(f, c), c) == pytest.approx(f, rel=1e-10)
