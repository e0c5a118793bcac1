"""The two-parameter family of metrics: parameters, first-integral potential,
admissible f-interval and the cubic relating curvature to f.

Every member is fixed by a pair ``(c, C)`` with ``c != 0``.  Along the
profile function ``f(u)`` the first integral reads ``f'(u)**2 = P(f)`` with

    P(f) = 16/9 f^2 - 16 f^4 - 16/9 c^2 f^5 + 2 C f^(7/2),

and the Gaussian curvature is ``K = -1 - 3 f^2 - c^2 f^3``.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError

__all__ = [
    "FamilyParams",
    "DomainInterval",
    "potential_P",
    "potential_P_prime",
    "f_max",
    "admissible_domain",
    "curvature_cubic_h",
    "invert_curvature_cubic",
    "K_of_f",
]


@dataclass(frozen=True)
class FamilyParams:
    """Parameters ``(c, C)`` of one family member.

    ``c`` and ``-c`` give isometric metrics, so the stored ``c`` is always
    ``|c|``; ``c_was_negative`` remembers the sign that was passed in.
    """

    c: float
    C: float
    c_was_negative: bool = field(default=False, compare=False)

    def __post_init__(self):
        c = float(self.c)
        C = float(self.C)
        if not np.isfinite(c) or not np.isfinite(C):
            raise DomainError("c and C must be finite")
        if c == 0.0:
            raise DomainError("c must be nonzero")
        object.__setattr__(self, "c", abs(c))
        object.__setattr__(self, "C", C)
        if c < 0:
            object.__setattr__(self, "c_was_negative", True)

    @property
    def c_squared(self) -> float:
        return self.c * self.c


@dataclass(frozen=True)
class DomainInterval:
    """Open interval ``(f_lo, f_hi)`` on which ``P > 0``; ``f_lo`` is always 0."""

    f_lo: float
    f_hi: float

    @property
    def width_positive(self) -> bool:
        return self.f_hi > self.f_lo

    def contains(self, f) -> bool:
        return bool(np.all((np.asarray(f) > self.f_lo) & (np.asarray(f) < self.f_hi)))


def _check_positive(x, name="f"):
    if np.any(np.asarray(x) <= 0):
        raise DomainError(f"{name} must be positive")


def _check_c(c):
    if c == 0:
        raise DomainError("c must be nonzero")


def potential_P(f, params: FamilyParams):
    """First-integral potential ``P(f)``; ``f'**2 = P(f)`` along solutions."""
    _check_positive(f)
    f = np.asarray(f, dtype=float)
    c2 = params.c_squared
    out = (16.0 / 9.0) * f**2 - 16.0 * f**4 - (16.0 / 9.0) * c2 * f**5 + 2.0 * params.C * f**3.5
    return out if out.ndim else float(out)


def potential_P_prime(f, params: FamilyParams):
    """``dP/df``.  Along solutions ``f'' = P'(f) / 2``."""
    _check_positive(f)
    f = np.asarray(f, dtype=float)
    c2 = params.c_squared
    out = (32.0 / 9.0) * f - 64.0 * f**3 - (80.0 / 9.0) * c2 * f**4 + 7.0 * params.C * f**2.5
    return out if out.ndim else float(out)


def _reduced_potential(s, c2, C):
    # (9/16) P(s^2) / s^4; positive at s=0, increases then decreases (or only
    # decreases when C <= 0), so it has exactly one positive root.
    return 1.0 + 1.125 * C * s**3 - 9.0 * s**4 - c2 * s**6


def f_max(params: FamilyParams, rtol: float = 1e-12) -> float:
    """Unique positive root of ``P``: the right end of the admissible f-interval."""
    c2, C = params.c_squared, params.C
    lo, hi = 0.0, 1.0
    while _reduced_potential(hi, c2, C) > 0:
        lo, hi = hi, 2.0 * hi
    # bisection in s = sqrt(f); rtol on f is twice the rtol on s
    while hi - lo > 0.5 * rtol * hi:
        mid = 0.5 * (lo + hi)
        if _reduced_potential(mid, c2, C) > 0:
            lo = mid
        else:
            hi = mid
    s = 0.5 * (lo + hi)
    return s * s


def admissible_domain(params: FamilyParams) -> DomainInterval:
    return DomainInterval(0.0, f_max(params))


def curvature_cubic_h(x, c):
    """``h(x) = -1 - 3x^2 - c^2 x^3``, strictly decreasing from -1 on ``x > 0``."""
    _check_positive(x, "x")
    _check_c(c)
    x = np.asarray(x, dtype=float)
    out = -1.0 - 3.0 * x**2 - c * c * x**3
    return out if out.ndim else float(out)


def K_of_f(f, c):
    """Gaussian curvature as a function of the mean curvature ``f``."""
    _check_positive(f)
    return curvature_cubic_h(f, c)


def invert_curvature_cubic(K: float, c: float, max_iter: int = 200) -> float:
    """Unique ``f > 0`` with ``1 + K + 3 f^2 + c^2 f^3 = 0``.

    Newton's method seeded at the large-f asymptote, kept inside a shrinking
    bracket and falling back to bisection whenever a Newton step leaves it.
    """
    _check_c(c)
    K = float(K)
    if not K < -1.0:
        raise DomainError("no positive root; hypothesis 1+K<0 violated")
    c2 = c * c
    a = -1.0 - K  # > 0

    def phi(x):
        return a - 3.0 * x * x - c2 * x**3

    lo = 0.0
    hi = (a / c2) ** (1.0 / 3.0)  # phi(hi) = -3 hi^2 < 0
    x = hi
    for _ in range(max_iter):
        val = phi(x)
        if val == 0.0:
            return x
        if val > 0:
            lo = x
        else:
            hi = x
        x_new = x + val / (6.0 * x + 3.0 * c2 * x * x)
        if not lo < x_new < hi:
            x_new = 0.5 * (lo + hi)
        if abs(x_new - x) <= 4e-16 * x_new:
            x = x_new
            break
        x = x_new
    return x
