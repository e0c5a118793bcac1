"""Adapted frame data for the immersion and residuals of the structure equations.

Frame: ``E1 = d/du``, ``E2 = f^(3/4) d/dv`` tangent; ``E3 = H/|H|``, ``E4``
normal, with a flat normal connection.  Shape operators in ``(E1, E2)``:

    A3 = diag(-f, 3f),   A4 = diag(l, -l),   l = c f^(3/2).

All checks are algebraic, evaluated at a point from ``(f, f', c)``; the
u-derivatives of the shape-operator entries are supplied with the frame.
"""

from dataclasses import dataclass, field, replace

import numpy as np

from .errors import DomainError
from .family import K_of_f
from .report import ResidualReport

__all__ = [
    "ShapeOperators",
    "SecondFundamental",
    "build_frame",
    "perturb_frame",
    "fundamental_residuals",
    "first_normal_rank",
    "laplacian_f",
    "pde_residual",
    "RESIDUAL_TOL",
]

RESIDUAL_TOL = 1e-12


@dataclass(frozen=True)
class ShapeOperators:
    """``A3``, ``A4`` and the exponents ``(p3, p4)`` giving their u-derivatives.

    Entries scale like ``f^p``, so ``dA/du = p (f'/f) A``; the built frame has
    ``p3 = 1`` and ``p4 = 3/2``.
    """

    f: float
    c: float
    A3: np.ndarray
    A4: np.ndarray
    p3: float = 1.0
    p4: float = 1.5

    @property
    def lam(self):
        return self.c * self.f**1.5

    def derivatives(self, f_prime):
        r = f_prime / self.f
        return self.p3 * r * self.A3, self.p4 * r * self.A4


@dataclass(frozen=True)
class SecondFundamental:
    """Normal-valued second fundamental form; components in ``(E3, E4)``."""

    B11: np.ndarray
    B22: np.ndarray
    B12: np.ndarray = field(default_factory=lambda: np.zeros(2))

    @classmethod
    def from_shape(cls, shape: ShapeOperators):
        A3, A4 = shape.A3, shape.A4
        return cls(np.array([A3[0, 0], A4[0, 0]]), np.array([A3[1, 1], A4[1, 1]]),
                   np.array([A3[0, 1], A4[0, 1]]))

    @property
    def mean_curvature(self):
        return 0.5 * (self.B11 + self.B22)


def _check(f, c):
    if not f > 0:
        raise DomainError("f must be positive")
    if c == 0:
        raise DomainError("c must be nonzero")


def build_frame(f: float, c: float):
    _check(f, c)
    lam = c * f**1.5
    shape = ShapeOperators(f, c, np.diag([-f, 3.0 * f]), np.diag([lam, -lam]))
    return shape, SecondFundamental.from_shape(shape)


def perturb_frame(f: float, c: float, target: str = "A3", index: int = 0, eps: float = 1e-2):
    """Frame with one shape-operator eigenvalue scaled by ``1 + eps``.

    Used as a negative control: the Gauss residual picks up the change at
    first order.
    """
    shape, _ = build_frame(f, c)
    if target not in ("A3", "A4"):
        raise ValueError("target must be 'A3' or 'A4'")
    A = getattr(shape, target).copy()
    A[index, index] *= 1.0 + eps
    shape = replace(shape, **{target: A})
    return shape, SecondFundamental.from_shape(shape)


def _codazzi(A, dA, w):
    # (nabla_E1 A)E2 - (nabla_E2 A)E1 with nabla_E1 = 0 on the frame,
    # nabla_E2 E1 = -w E2, nabla_E2 E2 = w E1.
    return dA[:, 1] - w * np.array([A[1, 0] + A[0, 1], A[1, 1] - A[0, 0]])


def fundamental_residuals(f: float, f_prime: float, c: float, frame=None) -> ResidualReport:
    """Gauss, Codazzi (E3 and E4), Ricci and biconservativity residuals."""
    _check(f, c)
    shape, B = build_frame(f, c) if frame is None else frame
    w = 0.75 * f_prime / f
    dA3, dA4 = shape.derivatives(f_prime)
    rep = ResidualReport()
    gauss = K_of_f(f, c) - (-1.0 + B.B11 @ B.B22 - B.B12 @ B.B12)
    rep.add("gauss", gauss, RESIDUAL_TOL)
    rep.add("codazzi E3", np.max(np.abs(_codazzi(shape.A3, dA3, w))), RESIDUAL_TOL)
    rep.add("codazzi E4", np.max(np.abs(_codazzi(shape.A4, dA4, w))), RESIDUAL_TOL)
    # flat normal connection: the commutator must vanish
    comm = shape.A3 @ shape.A4 - shape.A4 @ shape.A3
    rep.add("ricci", np.max(np.abs(comm)), RESIDUAL_TOL)
    grad_f = np.array([f_prime, 0.0])
    rep.add("biconservative", np.max(np.abs(shape.A3 @ grad_f + f * grad_f)),
            RESIDUAL_TOL * max(1.0, abs(f * f_prime)))
    return rep


def first_normal_rank(f: float, c: float):
    """Determinant of ``[B11 B22]`` (equal to ``-2 c f^(5/2)``) and its rank."""
    if not f > 0:
        raise DomainError("f must be positive")
    lam = c * f**1.5
    M = np.array([[-f, 3.0 * f], [lam, -lam]])
    det = float(M[0, 0] * M[1, 1] - M[0, 1] * M[1, 0])
    scale = abs(M).max() ** 2
    rank = 2 if abs(det) > 1e-14 * scale else int(np.linalg.matrix_rank(M, tol=1e-14 * abs(M).max()))
    return det, rank


def laplacian_f(f, f_prime, f_double_prime):
    """``Delta f = -f'' + 3/4 f'^2 / f`` (non-negative Laplacian convention)."""
    return -f_double_prime + 0.75 * f_prime * f_prime / f


def pde_residual(f: float, grad_f_norm: float, laplacian: float, c: float) -> float:
    """``f Delta f + |grad f|^2 - 4/3 f^2 - 4 f^4 - 4/3 c^2 f^5``.

    The sign of the last term is the one for which the residual vanishes on
    solutions of the second-order equation, given the Laplacian above.
    """
    if not np.all(np.asarray(f) > 0):
        raise DomainError("f must be positive")
    return (f * laplacian + grad_f_norm**2 - (4.0 / 3.0) * f**2 - 4.0 * f**4
            - (4.0 / 3.0) * c * c * f**5)
