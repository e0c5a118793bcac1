"""Initial-value integration of the profile ODEs and the quadrature form u(f).

Two systems are integrated:

* the second-order equation for the mean curvature profile,
  ``f f'' - 7/4 f'^2 + 4/3 f^2 + 4 f^4 + 4/3 c^2 f^5 = 0``, started with
  ``f'(0) = +sqrt(P(f0))``;
* the third-order equation for the level-curve curvature,
  ``3k k''' - 26k^2 k'' - 3k' k'' + 72k^3 k' + 32k^3 - 32k^5 = 0``.

Both halt at the edge of their admissible region (turning point of ``f``,
vanishing ``P``, or a failed admissibility inequality for ``k``).
"""

import logging
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy import integrate as _spi

from . import _rk
from ._interp import QuinticHermite
from .characterize import CONDITION_NAMES, condition_flags, condition_margins
from .errors import DomainError, InadmissibleError, IntegrationError
from .family import FamilyParams, f_max, potential_P, potential_P_prime

__all__ = [
    "FProfile",
    "KappaProfile",
    "f_double_prime",
    "integrate_f_ode",
    "integrate_f_ode_both",
    "first_integral_C",
    "u_of_f_quadrature",
    "kappa_triple_prime",
    "integrate_kappa_ode",
    "integrate_kappa_ode_both",
]

log = logging.getLogger(__name__)

TOL_RANGE = (1e-14, 1e-4)
P_FLOOR = 1e-10
KAPPA_FLOOR = 1e-6


def _check_tol(tol):
    if not TOL_RANGE[0] <= tol <= TOL_RANGE[1]:
        raise DomainError(f"tol must lie in [{TOL_RANGE[0]:g}, {TOL_RANGE[1]:g}], got {tol:g}")


def f_double_prime(f, f_prime, c):
    """``f''`` solved from the second-order equation."""
    f = np.asarray(f, dtype=float)
    fp = np.asarray(f_prime, dtype=float)
    c2 = c * c
    out = (1.75 * fp * fp - (4.0 / 3.0) * f * f - 4.0 * f**4 - (4.0 / 3.0) * c2 * f**5) / f
    return out if out.ndim else float(out)


def first_integral_C(f, f_prime, c):
    """Constant ``C`` of the first integral implied by the state ``(f, f')``."""
    if np.any(np.asarray(f) <= 0):
        raise DomainError("f must be positive")
    f = np.asarray(f, dtype=float)
    fp = np.asarray(f_prime, dtype=float)
    c2 = c * c
    # (f' - 4f/3)(f' + 4f/3) avoids squaring twice before the cancellation
    num = (fp - (4.0 / 3.0) * f) * (fp + (4.0 / 3.0) * f) + 16.0 * f**4 + (16.0 / 9.0) * c2 * f**5
    out = num / (2.0 * f**3.5)
    return out if out.ndim else float(out)


@dataclass(frozen=True, eq=False)
class FProfile:
    """Sampled solution ``u -> (f, f', f'')`` at the integrator's accepted steps."""

    params: FamilyParams
    u: np.ndarray
    f: np.ndarray
    f_prime: np.ndarray
    f_double_prime: np.ndarray
    tol: float
    n_steps: int
    n_rejected: int = 0
    event: str = None
    meta: dict = field(default_factory=dict, compare=False)

    def __len__(self):
        return self.u.size

    @property
    def samples(self):
        return list(zip(self.u, self.f, self.f_prime, self.f_double_prime))

    @property
    def C_values(self):
        return first_integral_C(self.f, self.f_prime, self.params.c)

    def C_drift(self) -> float:
        """Max ``|C(sample) - C|`` relative to ``max(1, |C|)``."""
        C = self.params.C
        return float(np.max(np.abs(self.C_values - C)) / max(1.0, abs(C)))

    def first_integral_residual(self) -> float:
        P = potential_P(self.f, self.params)
        return float(np.max(np.abs(self.f_prime**2 - P) / np.maximum(1.0, P)))

    def index_of(self, u0) -> int:
        return int(np.argmin(np.abs(self.u - u0)))

    @property
    def u_range(self):
        return float(self.u[0]), float(self.u[-1])

    @cached_property
    def interpolant(self) -> QuinticHermite:
        """C^2 interpolant of ``f(u)`` built from ``(f, f', f'')`` at the samples."""
        return QuinticHermite(self.u, self.f, self.f_prime, self.f_double_prime)


@dataclass(frozen=True, eq=False)
class KappaProfile:
    """Sampled solution of the third-order curvature ODE."""

    u: np.ndarray
    kappa: np.ndarray
    kappa_p: np.ndarray
    kappa_pp: np.ndarray
    kappa_ppp: np.ndarray
    flags: np.ndarray  # (n, 3) bool, one column per admissibility inequality
    tol: float
    n_steps: int
    event: str = None

    def __len__(self):
        return self.u.size

    @property
    def samples(self):
        return list(zip(self.u, self.kappa, self.kappa_p, self.kappa_pp, self.kappa_ppp))

    @property
    def admissible(self) -> np.ndarray:
        return np.all(self.flags, axis=1)

    @property
    def u_range(self):
        return float(self.u[0]), float(self.u[-1])

    @cached_property
    def interpolant(self) -> QuinticHermite:
        return QuinticHermite(self.u, self.kappa, self.kappa_p, self.kappa_pp)

    def log_width(self, u):
        """``int_0^u kappa``, exact for the interpolant; ``g22 = exp(-2 * this)``."""
        return self.interpolant.integral(0.0, u)


def _assemble(u, y, forward):
    u = np.asarray(u)
    y = np.asarray(y)
    if not forward:
        u, y = u[::-1], y[::-1]
    return u, y


def integrate_f_ode(params: FamilyParams, f0: float, u_span: float, tol: float = 1e-10,
                    f_prime0: float = None) -> FProfile:
    """Integrate the profile ODE from ``u = 0`` to ``u = u_span``.

    The initial slope is ``+sqrt(P(f0))`` unless ``f_prime0`` is given.
    Integration stops early at the turning point (``f'`` reaching 0) or
    where ``P(f)`` drops below ``1e-10 P(f0)``.
    """
    _check_tol(tol)
    fm = f_max(params)
    if not 0.0 < f0 < fm:
        raise DomainError(f"f0={f0!r} outside the admissible interval (0, {fm:.12g})")
    P0 = potential_P(f0, params)
    fp0 = np.sqrt(P0) if f_prime0 is None else float(f_prime0)
    c = params.c

    def rhs(u, y):
        f, fp = y
        return np.array([fp, f_double_prime(f, fp, c)])

    threshold = P_FLOOR * P0
    events = (
        ("potential_floor", lambda u, y: potential_P(y[0], params) - threshold if y[0] > 0 else -1.0),
        ("turning_point", lambda u, y: y[1]),
    )
    res = _rk.integrate(rhs, 0.0, [f0, fp0], float(u_span), tol, events=events,
                        guard=lambda y: y[0] > 0)
    u, y = _assemble(res.t, res.y, u_span >= 0)
    f, fp = y[:, 0], y[:, 1]
    prof = FProfile(params, u, f, fp, f_double_prime(f, fp, c), tol,
                    res.n_accepted, res.n_rejected, res.event,
                    meta={"f0": f0, "u_span": u_span})
    if res.status == "failed":
        raise IntegrationError(res.message, partial=prof)
    if res.event:
        log.info("f-integration halted by %s at u=%.6g", res.event, res.t[-1])
    return prof


def integrate_f_ode_both(params: FamilyParams, f0: float, u_back: float, u_fwd: float,
                         tol: float = 1e-10) -> FProfile:
    """Integrate backward to ``-|u_back|`` and forward to ``+|u_fwd|`` from ``f0``
    and join the two halves at ``u = 0``."""
    back = integrate_f_ode(params, f0, -abs(u_back), tol)
    fwd = integrate_f_ode(params, f0, abs(u_fwd), tol)
    cat = lambda a, b: np.concatenate([a, b[1:]])
    return FProfile(params, cat(back.u, fwd.u), cat(back.f, fwd.f),
                    cat(back.f_prime, fwd.f_prime), cat(back.f_double_prime, fwd.f_double_prime),
                    tol, back.n_steps + fwd.n_steps, back.n_rejected + fwd.n_rejected,
                    fwd.event, meta={"f0": f0, "events": (back.event, fwd.event)})


def _quad_direct(params, a, b):
    val, _ = _spi.quad(lambda f: 1.0 / np.sqrt(potential_P(f, params)), a, b,
                       epsabs=1e-14, epsrel=1e-13, limit=500)
    return val


def _quad_near_max(params, fm, a, b):
    # f = fm - t^2 turns the 1/sqrt endpoint singularity into a smooth integrand
    c2, C = params.c_squared, params.C
    p1 = potential_P_prime(fm, params)
    p2 = (32.0 / 9.0) - 192.0 * fm**2 - (320.0 / 9.0) * c2 * fm**3 + 17.5 * C * fm**1.5

    def integrand(t):
        t2 = t * t
        if t2 < 1e-7 * fm:
            ratio = -p1 + 0.5 * p2 * t2
        else:
            ratio = potential_P(fm - t2, params) / t2
        return 2.0 / np.sqrt(ratio)

    t_lo = np.sqrt(fm - a)
    t_hi = np.sqrt(fm - b)
    val, _ = _spi.quad(integrand, t_hi, t_lo, epsabs=1e-14, epsrel=1e-13, limit=500)
    return val


def u_of_f_quadrature(params: FamilyParams, f_lo: float, f_hi: float) -> float:
    """``u(f_hi) - u(f_lo) = integral of df / sqrt(P(f))``."""
    fm = f_max(params)
    if f_lo == f_hi and 0.0 < f_lo < fm:
        return 0.0
    if f_lo <= 0.0 or not f_lo < f_hi < fm:
        raise DomainError(f"need 0 < f_lo < f_hi < f_max={fm:.12g}")
    if f_lo < 1e-8:
        raise DomainError("u(f) diverges logarithmically as f -> 0; f_lo too small")
    if fm - f_hi <= 1e-3 * fm:
        return _quad_near_max(params, fm, f_lo, f_hi)
    return _quad_direct(params, f_lo, f_hi)


def kappa_triple_prime(kappa, kappa_p, kappa_pp):
    """``k'''`` solved from the third-order curvature ODE."""
    k, k1, k2 = kappa, kappa_p, kappa_pp
    k2_ = k * k
    return (26.0 * k2_ * k2 + 3.0 * k1 * k2 - 72.0 * k2_ * k * k1 - 32.0 * k2_ * k
            + 32.0 * k2_ * k2_ * k) / (3.0 * k)


def integrate_kappa_ode(kappa0: float, kappa0_p: float, kappa0_pp: float, u_span: float,
                        tol: float = 1e-10) -> KappaProfile:
    """Integrate the curvature ODE while the admissibility inequalities hold."""
    _check_tol(tol)
    if not kappa0 > 0:
        raise InadmissibleError("kappa > 0 violated")
    margins = condition_margins(kappa0, kappa0_p, kappa0_pp)
    for name, m in zip(CONDITION_NAMES, margins):
        if not m > 0:
            raise InadmissibleError(f"initial triple violates {name} (margin {m:.6g})")

    def rhs(u, y):
        k, k1, k2 = y
        return np.array([k1, k2, kappa_triple_prime(k, k1, k2)])

    events = [("kappa_floor", lambda u, y: y[0] - KAPPA_FLOOR)]
    for i, name in enumerate(CONDITION_NAMES):
        events.append((name, lambda u, y, i=i: condition_margins(*y)[i] if y[0] > 0 else -1.0))
    res = _rk.integrate(rhs, 0.0, [kappa0, kappa0_p, kappa0_pp], float(u_span), tol,
                        events=events, guard=lambda y: y[0] > 0)
    u, y = _assemble(res.t, res.y, u_span >= 0)
    k, k1, k2 = y[:, 0], y[:, 1], y[:, 2]
    flags = condition_flags(k, k1, k2)
    prof = KappaProfile(u, k, k1, k2, kappa_triple_prime(k, k1, k2), flags, tol,
                        res.n_accepted, res.event)
    if res.status == "failed":
        raise IntegrationError(res.message, partial=prof)
    return prof


def integrate_kappa_ode_both(kappa0, kappa0_p, kappa0_pp, u_back, u_fwd, tol=1e-10):
    """Two-sided version of :func:`integrate_kappa_ode`, joined at ``u = 0``."""
    back = integrate_kappa_ode(kappa0, kappa0_p, kappa0_pp, -abs(u_back), tol)
    fwd = integrate_kappa_ode(kappa0, kappa0_p, kappa0_pp, abs(u_fwd), tol)
    cat = lambda a, b: np.concatenate([a, b[1:]])
    return KappaProfile(cat(back.u, fwd.u), cat(back.kappa, fwd.kappa),
                        cat(back.kappa_p, fwd.kappa_p), cat(back.kappa_pp, fwd.kappa_pp),
                        cat(back.kappa_ppp, fwd.kappa_ppp), np.concatenate([back.flags, fwd.flags[1:]]),
                        tol, back.n_steps + fwd.n_steps, fwd.event)
