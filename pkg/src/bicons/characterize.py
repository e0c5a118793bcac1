"""Translation between the f-description and the level-curve curvature k.

With ``k = 3/4 f'/f`` (geodesic curvature of the level curves of K):

* ``K = k' - k^2``;
* ``B(k) = (k'' - 6k k' - 4k + 4k^3) / (4k)`` equals ``f^2``;
* ``A(k) = 2 sqrt(k) (-3k'' + 14k k' + 8k - 8k^3) / (k'' - 6k k' - 4k + 4k^3)^(3/2)``
  equals ``c^2`` and is constant along solutions of the third-order ODE.

Nothing here differentiates numerically: derivatives of ``f`` come from the
second-order equation and its u-derivatives.
"""

import warnings
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DomainError, InadmissibleError, InconsistencyError
from .family import FamilyParams, f_max, potential_P
from .report import ResidualReport

__all__ = [
    "KappaState",
    "CONDITION_NAMES",
    "condition_margins",
    "condition_flags",
    "kappa_chain_from_f",
    "f_derivatives",
    "kappa_ode_residual",
    "frak_A",
    "frak_B",
    "frak_values",
    "K_from_kappa",
    "conditions_check",
    "intermediate_relation",
    "recover_params",
    "connection_coefficients",
]

CONDITION_NAMES = (
    "kappa > 0",
    "kappa' < -1 + kappa^2",
    "kappa'' lower bound",
    "kappa'' upper bound",
)


@dataclass(frozen=True)
class KappaState:
    kappa: float
    kappa_p: float
    kappa_pp: float
    kappa_ppp: float = None

    def __post_init__(self):
        if not self.kappa > 0:
            raise DomainError("kappa must be positive")


def condition_flags(kappa, kappa_p, kappa_pp):
    """One boolean per line of the admissibility system (positivity, slope,
    two-sided bound on ``k''``); arrays give an ``(n, 3)`` result."""
    m0, m1, m2, m3 = condition_margins(kappa, kappa_p, kappa_pp)
    return np.stack([np.asarray(m0) > 0, np.asarray(m1) > 0,
                     (np.asarray(m2) > 0) & (np.asarray(m3) > 0)], axis=-1)


def condition_margins(kappa, kappa_p, kappa_pp):
    """Signed margins of the four strict inequalities (all must be > 0)."""
    k, k1, k2 = kappa, kappa_p, kappa_pp
    slope = -1.0 + k * k - k1
    lower = k2 - 2.0 * k * (3.0 * k1 - 2.0 * k * k + 2.0)
    upper = (2.0 / 3.0) * k * (7.0 * k1 - 4.0 * k * k + 4.0) - k2
    return k, slope, lower, upper


def f_derivatives(f, f_prime, c):
    """``(f'', f''', f'''')`` implied by the second-order equation.

    Writing the equation as ``f'' = F(f, f')`` with
    ``F = 7/4 f'^2/f - 4/3 f - 4 f^3 - 4/3 c^2 f^4``, higher derivatives follow
    from the chain rule in closed form.
    """
    f = np.asarray(f, dtype=float)
    p = np.asarray(f_prime, dtype=float)
    c2 = c * c
    f2 = 1.75 * p * p / f - (4.0 / 3.0) * f - 4.0 * f**3 - (4.0 / 3.0) * c2 * f**4
    F_f = -1.75 * p * p / f**2 - 4.0 / 3.0 - 12.0 * f**2 - (16.0 / 3.0) * c2 * f**3
    F_p = 3.5 * p / f
    F_ff = 3.5 * p * p / f**3 - 24.0 * f - 16.0 * c2 * f**2
    F_fp = -3.5 * p / f**2
    F_pp = 3.5 / f
    f3 = F_f * p + F_p * f2
    f4 = F_ff * p * p + 2.0 * F_fp * p * f2 + F_pp * f2 * f2 + F_f * f2 + F_p * f3
    return f2, f3, f4


def kappa_chain_from_f(f: float, f_prime: float, c: float, C: float,
                       rtol: float = 1e-8) -> KappaState:
    """``(k, k', k'', k''')`` at a point of the profile with state ``(f, f')``."""
    if not f > 0:
        raise DomainError("f must be positive")
    if not f_prime > 0:
        raise DomainError("f' must be positive")
    params = FamilyParams(c, C)
    fm = f_max(params)
    # samples at a turning point may sit on f_max up to rounding
    if not f <= fm * (1.0 + 1e-9):
        raise DomainError(f"f={f!r} outside (0, f_max={fm:.12g})")
    P = potential_P(f, params)
    if abs(f_prime * f_prime - P) > rtol * max(1.0, P):
        raise InconsistencyError(
            f"(f, f') = ({f!r}, {f_prime!r}) violates the first integral for C={C!r}"
        )
    f2, f3, f4 = f_derivatives(f, f_prime, c)
    # q_n = f^(n) / f; derivatives of r = f'/f in terms of q_n
    q1, q2, q3, q4 = f_prime / f, f2 / f, f3 / f, f4 / f
    r0 = q1
    r1 = q2 - q1 * q1
    r2 = q3 - 3.0 * q1 * q2 + 2.0 * q1**3
    r3 = q4 - 4.0 * q1 * q3 - 3.0 * q2 * q2 + 12.0 * q1 * q1 * q2 - 6.0 * q1**4
    return KappaState(0.75 * r0, 0.75 * r1, 0.75 * r2, 0.75 * r3)


class KappaResidual(NamedTuple):
    raw: float
    scaled: float


def kappa_ode_residual(state: KappaState) -> KappaResidual:
    """Left-hand side of the third-order ODE, raw and divided by ``max(1, 32 k^5)``."""
    if state.kappa_ppp is None:
        raise ValueError("state needs kappa''' for the ODE residual")
    k, k1, k2, k3 = state.kappa, state.kappa_p, state.kappa_pp, state.kappa_ppp
    raw = (3.0 * k * k3 - 26.0 * k * k * k2 - 3.0 * k1 * k2 + 72.0 * k**3 * k1
           + 32.0 * k**3 - 32.0 * k**5)
    return KappaResidual(raw, raw / max(1.0, 32.0 * k**5))


def _frak_parts(k, k1, k2):
    denom_base = k2 - 6.0 * k * k1 - 4.0 * k + 4.0 * k**3
    numer = -3.0 * k2 + 14.0 * k * k1 + 8.0 * k - 8.0 * k**3
    return numer, denom_base


def frak_A(state: KappaState) -> float:
    """Invariant that equals ``c^2`` on admissible solutions."""
    numer, base = _frak_parts(state.kappa, state.kappa_p, state.kappa_pp)
    if not base > 0:
        raise InadmissibleError(f"{CONDITION_NAMES[2]} violated (denominator base {base:.6g})")
    if not numer > 0:
        raise InadmissibleError(f"{CONDITION_NAMES[3]} violated (numerator {numer:.6g})")
    return 2.0 * np.sqrt(state.kappa) * numer / base**1.5


def frak_B(state: KappaState) -> float:
    """Reconstructs ``f^2`` from the curvature state."""
    _, base = _frak_parts(state.kappa, state.kappa_p, state.kappa_pp)
    if not base > 0:
        raise InadmissibleError(f"{CONDITION_NAMES[2]} violated (numerator {base:.6g})")
    return base / (4.0 * state.kappa)


def frak_values(k, k1, k2):
    """Vectorised ``(A, B)``; inadmissible entries come out as NaN rather than raising."""
    numer, base = _frak_parts(k, k1, k2)
    with np.errstate(invalid="ignore"):
        A = 2.0 * np.sqrt(k) * numer / base**1.5
    return A, base / (4.0 * k)


def K_from_kappa(kappa, kappa_p):
    """Gaussian curvature in the k-chart; ``K < -1`` iff the slope condition holds."""
    return kappa_p - kappa * kappa


def intermediate_relation(state: KappaState, f: float) -> float:
    """``-k'' + 6k k' + 4k - 4k^3 + 4k f^2`` (vanishes on matched states)."""
    k, k1, k2 = state.kappa, state.kappa_p, state.kappa_pp
    return -k2 + 6.0 * k * k1 + 4.0 * k - 4.0 * k**3 + 4.0 * k * f * f


def conditions_check(state: KappaState) -> ResidualReport:
    """Margins of the admissibility inequalities.

    Also records the implied inequality ``k'' < 2 k k'`` through the margin
    ``2 k k' - upper``, which is positive whenever the slope condition is.
    """
    k, k1, k2 = state.kappa, state.kappa_p, state.kappa_pp
    rep = ResidualReport()
    for name, m in zip(CONDITION_NAMES, condition_margins(k, k1, k2)):
        rep.add_margin(name, m)
    upper_bound = (2.0 / 3.0) * k * (7.0 * k1 - 4.0 * k * k + 4.0)
    rep.notes["implied"] = rep.entries[CONDITION_NAMES[1]].passed
    if rep.entries[CONDITION_NAMES[1]].passed:
        rep.add_margin("upper bound below 2 k k'", 2.0 * k * k1 - upper_bound)
    return rep


def recover_params(profile, rtol: float = 1e-7):
    """Recover ``(c^2, C)`` from a curvature profile.

    ``c^2`` is the mean of ``A`` over admissible samples; ``C`` is the mean of
    the first-integral constant evaluated at ``f = sqrt(B)``, ``f' = 4/3 k f``.
    The report carries the max relative deviation of each from its mean.
    """
    from .odeflow import first_integral_C

    mask = profile.admissible
    if not mask.any():
        raise InadmissibleError("profile has no admissible samples")
    if not mask.all():
        warnings.warn(f"recover_params: dropping {int((~mask).sum())} inadmissible samples",
                      RuntimeWarning, stacklevel=2)
    k = profile.kappa[mask]
    A, B = frak_values(k, profile.kappa_p[mask], profile.kappa_pp[mask])
    c2 = float(np.mean(A))
    f = np.sqrt(B)
    Cs = first_integral_C(f, (4.0 / 3.0) * k * f, np.sqrt(c2))
    C = float(np.mean(Cs))
    rep = ResidualReport()
    rep.add("frakA constancy", np.max(np.abs(A - c2)) / abs(c2), rtol)
    rep.add("C constancy", np.max(np.abs(Cs - C)) / max(1.0, abs(C)), 10 * rtol)
    return c2, C, rep


class FrameConnection(NamedTuple):
    """Coefficients of the Levi-Civita connection in the frame ``E1 = d/du``,
    ``E2 = f^(3/4) d/dv``: ``nabla_{Ei} Ej = coefficient * (other frame vector)``.
    """

    e1_e1: float
    e1_e2: float
    e2_e1: float  # along E2
    e2_e2: float  # along E1

    def connection_form(self):
        """``(omega^1_2(E1), omega^1_2(E2))`` with ``omega^1_2(X) = <nabla_X E2, E1>``."""
        return (self.e1_e2, self.e2_e2)


def connection_coefficients(f: float, f_prime: float) -> FrameConnection:
    if not f > 0:
        raise DomainError("f must be positive")
    w = 0.75 * f_prime / f
    return FrameConnection(0.0, 0.0, -w, w)
