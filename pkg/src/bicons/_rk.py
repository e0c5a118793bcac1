"""Dormand-Prince 5(4) stepper with PI step-size control and event location.

Kept deliberately small: fixed tableau, mixed abs/rel error norm, events
located by linear-interpolation guess followed by bisection on exact
sub-steps from the last accepted state.
"""

import numpy as np

_C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])
_A = [
    [],
    [1 / 5],
    [3 / 40, 9 / 40],
    [44 / 45, -56 / 15, 32 / 9],
    [19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729],
    [9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656],
    [35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84],
]
_B5 = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0])
_B4 = np.array([5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200, 187 / 2100, 1 / 40])
_E = _B5 - _B4

# PI controller gains for a 5th order method
_ALPHA = 0.7 / 5
_BETA = 0.4 / 5
_SAFETY = 0.9
_MIN_FACTOR = 0.2
_MAX_FACTOR = 5.0


def rk_step(fun, t, y, h, k0=None):
    """One Dormand-Prince step; returns (y_new, error_vector, k_last)."""
    k = np.empty((7, y.size))
    k[0] = fun(t, y) if k0 is None else k0
    for i in range(1, 7):
        k[i] = fun(t + _C[i] * h, y + h * np.dot(_A[i], k[:i]))
    y_new = y + h * np.dot(_B5, k)
    err = h * np.dot(_E, k)
    return y_new, err, k[6]


class StepResult:
    __slots__ = ("t", "y", "n_accepted", "n_rejected", "event", "status", "message")

    def __init__(self):
        self.t = []
        self.y = []
        self.n_accepted = 0
        self.n_rejected = 0
        self.event = None
        self.status = "completed"
        self.message = ""


def integrate(fun, t0, y0, t_end, tol, events=(), on_accept=None, h0=None,
              max_steps=1_000_000, event_ttol=1e-10, guard=None):
    """Integrate ``y' = fun(t, y)`` from ``t0`` to ``t_end`` (either direction).

    ``events`` is a sequence of ``(name, g)`` with ``g(t, y) -> float``; the
    integration halts at the first point where some ``g`` becomes non-positive,
    located to ``event_ttol`` in t.  The state recorded at an event is the
    last one on the positive side.  ``guard(y)`` may return False to mark a
    trial state as unusable (the step is then shrunk).
    """
    y = np.array(y0, dtype=float)
    t = float(t0)
    out = StepResult()
    out.t.append(t)
    out.y.append(y.copy())
    span = t_end - t0
    if span == 0.0:
        return out
    direction = 1.0 if span > 0 else -1.0

    for name, g in events:
        if not g(t, y) > 0:
            out.event = name
            out.status = "event"
            return out

    scale0 = tol + tol * np.abs(y)
    f0 = fun(t, y)
    if h0 is None:
        d0 = np.linalg.norm(y / scale0) / np.sqrt(y.size)
        d1 = np.linalg.norm(f0 / scale0) / np.sqrt(y.size)
        h = 0.01 * d0 / d1 if d0 > 1e-5 and d1 > 1e-5 else 1e-6
        h = min(h, abs(span), 1e-2)
    else:
        h = abs(h0)
    err_prev = 1e-4
    k0 = f0
    h_min = 16 * np.finfo(float).eps * max(1.0, abs(t0), abs(t_end))

    while direction * (t_end - t) > 0:
        if out.n_accepted + out.n_rejected > max_steps:
            out.status = "failed"
            out.message = "maximum number of steps exceeded"
            return out
        h = min(h, abs(t_end - t))
        if h < h_min:
            out.status = "failed"
            out.message = f"step size underflow at t={t:.17g}"
            return out
        hs = direction * h
        y_new, err, k_last = rk_step(fun, t, y, hs, k0)
        if guard is not None and not guard(y_new):
            out.n_rejected += 1
            h *= 0.25
            continue
        scale = tol + tol * np.maximum(np.abs(y), np.abs(y_new))
        err_norm = np.sqrt(np.mean((err / scale) ** 2))
        if not np.isfinite(err_norm):
            out.n_rejected += 1
            h *= 0.25
            continue
        if err_norm > 1.0:
            out.n_rejected += 1
            h *= max(_MIN_FACTOR, _SAFETY * err_norm ** (-1.0 / 5))
            continue

        t_new = t + hs
        # event check on the accepted step
        hit = None
        for name, g in events:
            g1 = g(t_new, y_new)
            if not g1 > 0:
                hit = (name, g)
                break
        if hit is not None:
            t_ev, y_ev = _locate(fun, t, y, hs, k0, hit[1], event_ttol)
            if t_ev != t:
                out.t.append(t_ev)
                out.y.append(y_ev)
            out.n_accepted += 1
            out.event = hit[0]
            out.status = "event"
            return out

        t, y, k0 = t_new, y_new, k_last
        out.t.append(t)
        out.y.append(y.copy())
        out.n_accepted += 1
        if on_accept is not None:
            on_accept(t, y)
        err_norm = max(err_norm, 1e-10)
        factor = _SAFETY * err_norm ** (-_ALPHA) * err_prev**_BETA
        h *= min(_MAX_FACTOR, max(_MIN_FACTOR, factor))
        err_prev = err_norm
    return out


def _locate(fun, t, y, hs, k0, g, ttol):
    """Bisect for the last positive-side point of ``g`` inside the step."""
    g0 = g(t, y)
    y1, _, _ = rk_step(fun, t, y, hs, k0)
    g1 = g(t + hs, y1)
    # secant guess, then bisection on the fraction of the step
    lo, hi = 0.0, 1.0
    y_lo = y
    if np.isfinite(g1) and g0 != g1:
        theta = min(max(g0 / (g0 - g1), 0.0), 1.0)
        if 0.0 < theta < 1.0:
            yt, _, _ = rk_step(fun, t, y, theta * hs, k0)
            gt = g(t + theta * hs, yt)
            if gt > 0:
                lo, y_lo = theta, yt
            else:
                hi = theta
    while (hi - lo) * abs(hs) > ttol:
        mid = 0.5 * (lo + hi)
        ym, _, _ = rk_step(fun, t, y, mid * hs, k0)
        gm = g(t + mid * hs, ym)
        if gm > 0:
            lo, y_lo = mid, ym
        else:
            hi = mid
    return t + lo * hs, np.array(y_lo, dtype=float)
