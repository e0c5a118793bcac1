"""Isometry classes of family members.

Two members are isometric exactly when ``c1^2 = c2^2`` and ``C1 = C2``; the
isometry is ``(f, v) -> (f, +-v + b)`` with ``b`` free.  ``invariant_match``
is the numeric counterpart: it compares the level-curve curvature as a
function of ``K``, both intrinsic invariants.
"""

from dataclasses import dataclass

import numpy as np
from scipy.interpolate import CubicHermiteSpline

from .family import FamilyParams, K_of_f
from .odeflow import FProfile

__all__ = ["IsometryVerdict", "classify", "canonical_form", "invariant_match", "kappa_of_K"]

_WITNESS_NOTE = "Psi(f, v) = (f, s*v + b), s in {+1, -1}, b arbitrary"


@dataclass(frozen=True)
class IsometryVerdict:
    """``isometric`` is None when the numeric comparison had nothing to compare."""

    isometric: object
    signs: tuple = ()
    note: str = ""
    max_deviation: float = None

    @property
    def indeterminate(self) -> bool:
        return self.isometric is None

    def __bool__(self):
        return bool(self.isometric)


def canonical_form(p: FamilyParams) -> FamilyParams:
    return FamilyParams(abs(p.c), p.C)


def classify(p1: FamilyParams, p2: FamilyParams) -> IsometryVerdict:
    """Exact comparison of canonical parameters (no tolerance)."""
    a, b = canonical_form(p1), canonical_form(p2)
    if a.c == b.c and a.C == b.C:
        return IsometryVerdict(True, (1, -1), _WITNESS_NOTE)
    return IsometryVerdict(False)


def kappa_of_K(profile: FProfile):
    """``(K, kappa^2, d(kappa^2)/dK)`` along the profile, ordered by increasing K.

    ``kappa^2 = 9/16 P(f)/f^2`` is smooth in K up to the turning point, where
    ``kappa`` itself has a square-root singularity.
    """
    f, fp, fpp = profile.f, profile.f_prime, profile.f_double_prime
    c = profile.params.c
    K = K_of_f(f, c)
    kappa = 0.75 * fp / f
    dkappa = 0.75 * (fpp / f - (fp / f) ** 2)
    dK = -(6.0 * f + 3.0 * c * c * f * f) * fp
    order = np.argsort(K)
    K, k2, slope = K[order], (kappa**2)[order], (2.0 * kappa * dkappa / dK)[order]
    keep = np.concatenate([[True], np.diff(K) > 0])
    return K[keep], k2[keep], slope[keep]


def invariant_match(prof1: FProfile, prof2: FProfile, tol: float, n_grid: int = 256) -> IsometryVerdict:
    """Compare ``kappa(K)`` of two profiles on the overlap of their K-ranges."""
    if not tol > 0:
        raise ValueError("tol must be positive")
    curves = []
    for prof in (prof1, prof2):
        K, k2, s = kappa_of_K(prof)
        if K.size < 2:
            return IsometryVerdict(None, note="profile too short to resample")
        curves.append((K, k2, s))
    lo = max(curves[0][0][0], curves[1][0][0])
    hi = min(curves[0][0][-1], curves[1][0][-1])
    if not hi > lo:
        return IsometryVerdict(None, note="K-ranges do not overlap")
    grid = np.linspace(lo, hi, n_grid)
    vals = [np.sqrt(np.maximum(CubicHermiteSpline(K, k2, s)(grid), 0.0)) for K, k2, s in curves]
    dev = float(np.max(np.abs(vals[0] - vals[1])))
    if dev <= tol:
        return IsometryVerdict(True, (1, -1), _WITNESS_NOTE, dev)
    return IsometryVerdict(False, max_deviation=dev)
