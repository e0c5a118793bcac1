import numpy as np
import pytest

from bicons.errors import DomainError, InconsistencyError
from bicons.family import K_of_f, f_max
from bicons.geometry import (
    Chart,
    christoffel,
    christoffel_fd,
    circle_check,
    gauss_curvature_analytic,
    gauss_curvature_fd,
    grad_K_norm,
    kappa_from_K,
    level_curve_curvature,
    metric_at,
    profile_state_at,
)


def _interior_u(profile, n, margin=0.01):
    lo, hi = profile.u_range
    return np.linspace(lo + margin, hi - margin, n)


# ---------------------------------------------------------------- metric

def test_metric_examples(ref_params, ref_profile, ref_kappa_profile):
    m = metric_at(Chart.F_CHART, (1.0, 0.3), ref_params)
    assert (m.g11, m.g12, m.g22) == (pytest.approx(9 / 16), 0.0, pytest.approx(1.0))
    m = metric_at(Chart.U_CHART, (0.0, 0.0), ref_profile)
    assert (m.g11, m.g22) == (1.0, pytest.approx(1.0, abs=1e-15))
    m = metric_at("kappa", (0.0, 1.0), ref_kappa_profile)
    assert (m.g11, m.g22) == (1.0, 1.0)


def test_metric_outside_chart(ref_params, ref_profile):
    with pytest.raises(DomainError):
        metric_at(Chart.F_CHART, (1.2, 0.0), ref_params)
    with pytest.raises(DomainError):
        metric_at(Chart.U_CHART, (ref_profile.u_range[1] + 0.1, 0.0), ref_profile)


# ---------------------------------------------------------------- Christoffel symbols

def test_christoffel_u_chart_reference(ref_profile):
    sym = christoffel(Chart.U_CHART, (0.0, 0.0), ref_profile)
    assert sym.G2_12 == pytest.approx(-1.0, abs=1e-14)
    # G^u_vv = -(1/2) d(f^(-3/2))/du = (3/4) f' f^(-5/2)
    assert sym.G1_22 == pytest.approx(1.0, abs=1e-14)
    assert sym.G1_12 == 0.0 and sym.G1_11 == 0.0 and sym[2, 2, 1] == sym.G2_12


def _metric_fn(chart, data):
    def fn(x1, x2):
        m = metric_at(chart, (x1, x2), data)
        return m.g11, m.g22
    return fn


@pytest.mark.parametrize("chart, points", [
    (Chart.U_CHART, [-2.0, -0.5, 0.0, 0.1]),
    (Chart.F_CHART, [0.3, 0.6, 1.0, 1.1]),
    (Chart.KAPPA_CHART, [-2.0, -0.5, 0.0, 0.1]),
])
def test_christoffel_against_finite_differences(chart, points, ref_params, ref_profile, ref_kappa_profile):
    data = {Chart.U_CHART: ref_profile, Chart.F_CHART: ref_params,
            Chart.KAPPA_CHART: ref_kappa_profile}[chart]
    for x in points:
        h = 1e-4
        if chart is Chart.F_CHART:
            # truncation grows like (h / distance to f_max)^2
            h *= min(1.0, 2 * (f_max(ref_params) - x))
        exact = christoffel(chart, (x, 0.7), data).as_array()
        approx = christoffel_fd(_metric_fn(chart, data), x, 0.7, h=h).as_array()
        assert np.max(np.abs(exact - approx) / np.maximum(1.0, np.abs(exact))) <= 1e-6


# ---------------------------------------------------------------- curvature

def test_analytic_curvature_examples():
    assert gauss_curvature_analytic(1.0, 4 / 3, -32 / 9) == pytest.approx(-5.0, abs=1e-14)
    assert gauss_curvature_analytic(1.0, 0.0, 0.0) == 0.0
    with pytest.raises(DomainError):
        gauss_curvature_analytic(0.0, 1.0, 1.0)


def test_analytic_curvature_equals_K_of_f(ref_profile, rng):
    idx = rng.choice(len(ref_profile), size=100, replace=False)
    f, fp, fpp = ref_profile.f[idx], ref_profile.f_prime[idx], ref_profile.f_double_prime[idx]
    assert np.max(np.abs(gauss_curvature_analytic(f, fp, fpp) - K_of_f(f, 1.0))) <= 1e-9


def test_K_below_minus_one_and_decreasing(ref_profile):
    K = K_of_f(ref_profile.f, 1.0)
    assert np.all(K < -1)
    order = np.argsort(ref_profile.f)
    assert np.all(np.diff(K[order]) <= 0)


def test_fd_f_chart_richardson(ref_params):
    h = 1e-3
    k1 = gauss_curvature_fd(Chart.F_CHART, (1.0, 0.0), ref_params, h)
    k2 = gauss_curvature_fd(Chart.F_CHART, (1.0, 0.0), ref_params, h / 2)
    richardson = (4 * k2 - k1) / 3
    assert richardson == pytest.approx(-5.0, abs=1e-5)
    # the raw absolute-step value is second-order accurate but not to 1e-5
    assert abs(k1 + 5.0) < 1e-4
    assert gauss_curvature_fd(Chart.F_CHART, (1.0, 0.0), ref_params, h, local_step=True) == \
        pytest.approx(-5.0, abs=1e-5)


def test_fd_kappa_chart_reference(ref_kappa_profile):
    assert gauss_curvature_fd(Chart.KAPPA_CHART, (0.0, 0.0), ref_kappa_profile, 1e-3) == \
        pytest.approx(-5.0, abs=1e-5)


@pytest.mark.parametrize("chart", list(Chart))
def test_fd_second_order(chart, ref_params, ref_profile, ref_kappa_profile):
    us = [-2.0, -1.0, -0.4, 0.0, 0.1]
    for u in us:
        f, _, _ = profile_state_at(ref_profile, u)
        K = K_of_f(f, 1.0)
        if chart is Chart.F_CHART:
            pt, data = (f, 0.0), ref_params
        else:
            pt, data = (u, 0.0), ref_profile if chart is Chart.U_CHART else ref_kappa_profile
        e1 = abs(gauss_curvature_fd(chart, pt, data, 2e-3) - K)
        e2 = abs(gauss_curvature_fd(chart, pt, data, 1e-3) - K)
        assert 3.5 < e1 / e2 < 4.5


def test_fd_stencil_guard(ref_params, ref_profile):
    with pytest.raises(DomainError):
        gauss_curvature_fd(Chart.F_CHART, (1e-3, 0.0), ref_params, 1e-3)
    with pytest.raises(DomainError):
        gauss_curvature_fd(Chart.F_CHART, (f_max(ref_params) - 1e-3, 0.0), ref_params, 1e-3)
    with pytest.raises(DomainError):
        gauss_curvature_fd(Chart.U_CHART, (ref_profile.u_range[0] + 1e-3, 0.0), ref_profile, 1e-3)


# ---------------------------------------------------------------- level curves

def test_level_curve_curvature_examples():
    assert level_curve_curvature(1.0, 4 / 3) == 1.0
    assert level_curve_curvature(2.0, 8 / 3) == 1.0
    with pytest.raises(DomainError):
        level_curve_curvature(1.0, 0.0)


def test_kappa_from_K_reference():
    assert grad_K_norm(1.0, 4 / 3, 1.0) == pytest.approx(12.0)
    assert kappa_from_K(-5.0, 12.0, 1.0) == pytest.approx(1.0, abs=1e-15)
    with pytest.raises(InconsistencyError):
        kappa_from_K(-2.0, 1.0, 1.0)


def test_kappa_from_K_matches_level_curve_curvature(ref_profile):
    f, fp = ref_profile.f[:-1], ref_profile.f_prime[:-1]
    k1 = 0.75 * fp / f
    k2 = kappa_from_K(K_of_f(f, 1.0), grad_K_norm(f, fp, 1.0), f)
    assert np.max(np.abs(k1 - k2)) <= 1e-9


def test_circle_check_reference(ref_profile):
    rep = circle_check(ref_profile, 0.0)
    assert rep.passed
    assert rep.notes["kappa"] == pytest.approx(1.0, abs=1e-14)


def test_circle_check_every_level(ref_profile):
    for u in _interior_u(ref_profile, 40):
        assert circle_check(ref_profile, u, n=32).passed


def test_circle_check_v_only_factor_is_invisible(ref_profile):
    # G(u, v) = g(u) (1 + eps sin v) reparametrizes v: same curvature.
    # Symbols come from central differences here, so the tolerances are theirs.
    def metric(u, v):
        return 1.0, ref_profile.interpolant(u) ** -1.5 * (1 + 1e-3 * np.sin(v))
    assert circle_check(ref_profile, -0.5, metric=metric, tol_variation=1e-10, tol_value=1e-7).passed


def test_circle_check_negative_control(ref_profile):
    def metric(u, v):
        return 1.0, ref_profile.interpolant(u) ** -1.5 * (1 + 1e-3 * np.sin(v) * np.exp(u))
    rep = circle_check(ref_profile, -0.5, metric=metric, tol_variation=1e-10, tol_value=1e-7)
    assert not rep.passed
    assert rep["variation along curve"].value > 1e-5
    assert not rep["variation along curve"].passed


def test_circle_check_range(ref_profile):
    with pytest.raises(DomainError):
        circle_check(ref_profile, 100.0)
