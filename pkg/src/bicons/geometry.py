"""Metric data in the three charts, Christoffel symbols and Gaussian curvature.

Charts (all orthogonal, metric independent of ``v``):

* ``U``:     ``g = du^2 + f(u)^(-3/2) dv^2``, data an :class:`FProfile`;
* ``F``:     ``g = df^2 / P(f) + f^(-3/2) dv^2``, data :class:`FamilyParams`;
* ``KAPPA``: ``g = du^2 + exp(-2 int_0^u k) dv^2``, data a :class:`KappaProfile`.

The U-chart frame is ``E1 = d/du``, ``E2 = f^(3/4) d/dv`` with ``f' > 0``.
"""

import enum
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, InconsistencyError
from .family import FamilyParams, f_max, potential_P, potential_P_prime
from .odeflow import FProfile, KappaProfile, f_double_prime
from .report import ResidualReport

__all__ = [
    "Chart",
    "MetricComponents",
    "ChristoffelSymbols",
    "metric_at",
    "christoffel",
    "christoffel_fd",
    "gauss_curvature_analytic",
    "gauss_curvature_fd",
    "level_curve_curvature",
    "kappa_from_K",
    "grad_K_norm",
    "geodesic_curvature_of_level_curve",
    "circle_check",
    "profile_state_at",
]


class Chart(enum.Enum):
    U_CHART = "u"
    F_CHART = "f"
    KAPPA_CHART = "kappa"


@dataclass(frozen=True)
class MetricComponents:
    chart: Chart
    g11: float
    g12: float
    g22: float

    def __post_init__(self):
        if not (self.g11 > 0 and self.g22 > 0):
            raise DomainError("metric is not positive definite here")


@dataclass(frozen=True)
class ChristoffelSymbols:
    """``G{k}_{ij}`` stands for the symbol with upper index k (1 or 2)."""

    G1_11: float
    G1_12: float
    G1_22: float
    G2_11: float
    G2_12: float
    G2_22: float

    def __getitem__(self, kij):
        k, i, j = kij
        i, j = min(i, j), max(i, j)
        return getattr(self, f"G{k}_{i}{j}")

    def as_array(self):
        return np.array([self.G1_11, self.G1_12, self.G1_22, self.G2_11, self.G2_12, self.G2_22])


def _coerce_chart(chart):
    return chart if isinstance(chart, Chart) else Chart(chart)


def _check_u(profile, u, margin=0.0):
    lo, hi = profile.u_range
    if not (lo + margin <= u <= hi - margin):
        raise DomainError(f"u={u!r} outside profile range [{lo:.6g}, {hi:.6g}] (margin {margin:g})")


def profile_state_at(profile: FProfile, u: float):
    """``(f, f', f'')`` at any ``u`` inside the profile.

    ``f`` comes from the quintic interpolant; ``f'`` and ``f''`` are then taken
    from the first integral and the ODE so the triple stays on the solution
    manifold.
    """
    _check_u(profile, u)
    f = profile.interpolant(u)
    P = potential_P(f, profile.params)
    fp = np.sqrt(max(P, 0.0))
    return f, fp, f_double_prime(f, fp, profile.params.c)


def _diag_metric(chart, data):
    """Returns ``(E, G)`` as a function of the first coordinate only."""
    chart = _coerce_chart(chart)
    if chart is Chart.U_CHART:
        if not isinstance(data, FProfile):
            raise TypeError("U chart needs an FProfile")

        def eg(x):
            _check_u(data, x)
            return 1.0, data.interpolant(x) ** -1.5
    elif chart is Chart.F_CHART:
        params = data.params if isinstance(data, FProfile) else data
        if not isinstance(params, FamilyParams):
            raise TypeError("F chart needs FamilyParams")
        fm = f_max(params)

        def eg(x):
            if not 0.0 < x < fm:
                raise DomainError(f"f={x!r} outside (0, f_max={fm:.12g})")
            P = potential_P(x, params)
            if not P > 0:
                raise DomainError("P(f) must be positive in the F chart")
            return 1.0 / P, x**-1.5
    else:
        if not isinstance(data, KappaProfile):
            raise TypeError("KAPPA chart needs a KappaProfile")
        lo, hi = data.u_range
        if not lo <= 0.0 <= hi:
            raise DomainError("KAPPA chart is normalised at u=0, which the profile must contain")

        def eg(x):
            _check_u(data, x)
            return 1.0, np.exp(-2.0 * data.log_width(x))
    return eg


def metric_at(chart, point, data) -> MetricComponents:
    chart = _coerce_chart(chart)
    E, G = _diag_metric(chart, data)(float(point[0]))
    return MetricComponents(chart, E, 0.0, G)


def christoffel(chart, point, data) -> ChristoffelSymbols:
    """Closed-form symbols for each chart's diagonal, v-independent metric."""
    chart = _coerce_chart(chart)
    x = float(point[0])
    if chart is Chart.U_CHART:
        f, fp, _ = profile_state_at(data, x)
        return ChristoffelSymbols(0.0, 0.0, 0.75 * fp * f**-2.5, 0.0, -0.75 * fp / f, 0.0)
    if chart is Chart.F_CHART:
        params = data.params if isinstance(data, FProfile) else data
        E, G = _diag_metric(chart, params)(x)  # validates x
        P = 1.0 / E
        dP = potential_P_prime(x, params)
        return ChristoffelSymbols(-dP / (2.0 * P), 0.0, 0.75 * x**-2.5 * P, 0.0, -0.75 / x, 0.0)
    _check_u(data, x)
    k = data.interpolant(x)
    G = np.exp(-2.0 * data.log_width(x))
    return ChristoffelSymbols(0.0, 0.0, k * G, 0.0, -k, 0.0)


def _central(fn, x, h):
    return (fn(x + h) - fn(x - h)) / (2.0 * h)


def christoffel_fd(metric_fn, x1, x2, h=1e-4) -> ChristoffelSymbols:
    """Symbols of an orthogonal metric ``metric_fn(x1, x2) -> (E, G)`` by central
    differences."""
    E, G = metric_fn(x1, x2)
    E1 = _central(lambda s: metric_fn(s, x2)[0], x1, h)
    E2 = _central(lambda s: metric_fn(x1, s)[0], x2, h)
    G1 = _central(lambda s: metric_fn(s, x2)[1], x1, h)
    G2 = _central(lambda s: metric_fn(x1, s)[1], x2, h)
    return ChristoffelSymbols(E1 / (2 * E), E2 / (2 * E), -G1 / (2 * E),
                              -E2 / (2 * G), G1 / (2 * G), G2 / (2 * G))


def gauss_curvature_analytic(f, f_prime, f_double_prime):
    """``K = (12 f f'' - 21 f'^2) / (16 f^2)`` for the U-chart metric."""
    if np.any(np.asarray(f) <= 0):
        raise DomainError("f must be positive")
    return (12.0 * f * f_double_prime - 21.0 * f_prime * f_prime) / (16.0 * f * f)


def _brioschi_orthogonal(metric_fn, x1, x2, h):
    # K = -1/(2 sqrt(EG)) [ d1(G_1 / sqrt(EG)) + d2(E_2 / sqrt(EG)) ]
    def a1(s):
        E, G = metric_fn(s, x2)
        return _central(lambda t: metric_fn(t, x2)[1], s, h) / np.sqrt(E * G)

    def a2(s):
        E, G = metric_fn(x1, s)
        return _central(lambda t: metric_fn(x1, t)[0], s, h) / np.sqrt(E * G)

    E, G = metric_fn(x1, x2)
    return -(_central(a1, x1, h) + _central(a2, x2, h)) / (2.0 * np.sqrt(E * G))


def gauss_curvature_fd(chart, point, data, h=1e-3, local_step=False) -> float:
    """Brioschi formula for an orthogonal metric, nested central differences.

    The stencil reaches ``2h`` from ``point`` in each coordinate; error is
    ``O(h^2)``.  In the F chart the metric degenerates at both ends of
    ``(0, f_max)``; ``local_step=True`` uses ``h * min(f, f_max - f) / 2``
    there, so the whole stencil covers at most a fraction ``h`` of the
    distance to the nearer end.  Either way the point must lie ``2h`` inside
    the chart: closer to ``f_max`` the coordinate ``f`` no longer resolves the
    metric well enough for nested differences.
    """
    chart = _coerce_chart(chart)
    x1, x2 = float(point[0]), float(point[1])
    if h <= 0:
        raise DomainError("h must be positive")
    if chart is Chart.F_CHART:
        params = data.params if isinstance(data, FProfile) else data
        fm = f_max(params)
        if not (2 * h < x1 < fm - 2 * h):
            raise DomainError("finite-difference stencil leaves the F chart")
        if local_step:
            h = 0.5 * h * min(x1, fm - x1)
    else:
        _check_u(data, x1, margin=2 * h)
    eg = _diag_metric(chart, data)
    return float(_brioschi_orthogonal(lambda s, t: eg(s), x1, x2, h))


def level_curve_curvature(f, f_prime):
    """Geodesic curvature ``3/4 f'/f`` of the level curve ``u = const``."""
    if not f > 0 or not f_prime > 0:
        raise DomainError("need f > 0 and f' > 0")
    return 0.75 * f_prime / f


def grad_K_norm(f, f_prime, c):
    """``|grad K| = -dK/du = (6 f + 3 c^2 f^2) f'``."""
    return (6.0 * f + 3.0 * c * c * f * f) * f_prime


def kappa_from_K(K, grad_K_norm, f):
    """``-1/4 |grad K| / (K + f^2 + 1)``: level-curve curvature from K alone."""
    denom = K + f * f + 1.0
    if not np.all(denom < 0):
        raise InconsistencyError("K + f^2 + 1 must be negative for family members")
    return -0.25 * grad_K_norm / denom


def geodesic_curvature_of_level_curve(symbols: ChristoffelSymbols, E: float, G: float) -> float:
    """Signed curvature of ``x1 = const`` for an orthogonal metric.

    Unit tangent ``T = G^(-1/2) d2``; normal ``N = E^(-1/2) d1``;
    ``<nabla_T T, N> = sqrt(E) G1_22 / G``.
    """
    return np.sqrt(E) * symbols.G1_22 / G


def circle_check(profile: FProfile, u0: float, n: int = 16, metric=None,
                 tol_variation: float = 1e-12, tol_value: float = 1e-9) -> ResidualReport:
    """Check that the level curve ``u = u0`` is a circle of curvature ``3/4 f'/f``.

    ``metric(u, v) -> (E, G)`` replaces the profile's metric (its symbols are
    then taken by finite differences); it exists for negative controls.
    """
    if n < 16:
        raise ValueError("need at least 16 points on the curve")
    _check_u(profile, u0)
    f, fp, _ = profile_state_at(profile, u0)
    c = profile.params.c
    expected = level_curve_curvature(f, fp)
    K = -1.0 - 3.0 * f * f - c * c * f**3
    from_K = kappa_from_K(K, grad_K_norm(f, fp, c), f)
    vs = np.linspace(0.0, 2.0 * np.pi, n, endpoint=False)
    kg = np.empty(n)
    for j, v in enumerate(vs):
        if metric is None:
            sym = christoffel(Chart.U_CHART, (u0, v), profile)
            E, G = 1.0, f**-1.5
        else:
            sym = christoffel_fd(metric, u0, v)
            E, G = metric(u0, v)
        kg[j] = geodesic_curvature_of_level_curve(sym, E, G)
    rep = ResidualReport()
    rep.add("variation along curve", kg.max() - kg.min(), tol_variation)
    rep.add("deviation from 3f'/(4f)", np.max(np.abs(kg - expected)), tol_value)
    rep.add("deviation from kappa(K)", np.max(np.abs(kg - from_K)), tol_value)
    rep.notes.update(u0=u0, kappa=expected, geodesic_curvature=kg)
    return rep
