"""Command-line driver.

Subcommands: ``family-info``, ``solve-f``, ``solve-kappa``, ``verify``,
``isometry``, ``sweep`` and ``plot``.  Every command also accepts
``--config FILE`` (a JSON object whose keys mirror the flag names); flags given
on the command line win over the file.

Exit codes: 0 success, 1 verification or verdict failure, 2 usage or
precondition error, 3 numerical failure.  ``BICONS_LOG`` selects
``quiet`` (default), ``info`` or ``debug`` logging on stderr.
"""

import argparse
import csv
import io
import json
import logging
import os
import sys
import tempfile
import warnings
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import characterize as ch
from .errors import DomainError, InadmissibleError, InconsistencyError, IntegrationError
from .extrinsic import fundamental_residuals, laplacian_f, pde_residual, perturb_frame, build_frame
from .family import FamilyParams, K_of_f, f_max, potential_P
from .geometry import (Chart, christoffel, circle_check, gauss_curvature_analytic,
                       gauss_curvature_fd, profile_state_at)
from .isometry import classify, invariant_match
from .odeflow import (first_integral_C, integrate_f_ode, integrate_f_ode_both,
                      integrate_kappa_ode, integrate_kappa_ode_both)
from .report import ResidualReport

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3

log = logging.getLogger("bicons")


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- output helpers

def _num(x) -> str:
    """Shortest round-trip text for a float, so reruns are byte-identical."""
    return repr(float(x))


def _atomic_write(path, text):
    if path in (None, "-"):
        sys.stdout.write(text)
        return
    target = os.path.abspath(path)
    folder = os.path.dirname(target)
    os.makedirs(folder, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=folder, prefix=".tmp-", suffix=os.path.basename(target))
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _csv_text(header, rows, footer=()):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_num(v) for v in row])
    for key, value in footer:
        buf.write(f"# {key}={value}\n")
    return buf.getvalue()


def _read_csv(path):
    with open(path, newline="") as fh:
        lines = [ln for ln in fh if ln.strip() and not ln.startswith("#")]
    if not lines:
        raise UsageError(f"{path}: empty CSV")
    reader = csv.reader(lines)
    header = next(reader)
    data = [[float(v) for v in row] for row in reader]
    if not data:
        raise UsageError(f"{path}: CSV has a header but no data rows")
    return header, np.array(data)


# ---------------------------------------------------------------- config merging

_DEFAULTS = {
    "family-info": {"c": None, "C": None, "json": False},
    "solve-f": {"c": None, "C": None, "f0": 1.0, "u_span": 1.0, "u_back": 0.0, "tol": 1e-10, "out": "-"},
    "solve-kappa": {"kappa": None, "kappa_p": None, "kappa_pp": None, "u_span": 1.0, "u_back": 0.0,
                    "tol": 1e-10, "out": "-"},
    "verify": {"c": None, "C": None, "f0": 1.0, "n_samples": 100, "u_back": 2.5, "u_fwd": 10.0,
               "tol": 1e-12, "h": 1e-3, "perturb": None, "out": "-"},
    "isometry": {"c1": None, "C1": None, "c2": None, "C2": None, "numeric": False},
    "sweep": {"c_values": None, "C_values": None, "c_range": None, "C_range": None,
              "out_dir": ".", "jobs": 1},
    "plot": {"csv": None, "x": None, "y": None, "out": "-", "title": None},
}


def _merge_config(args):
    defaults = _DEFAULTS[args.command]
    config = {}
    if args.config:
        try:
            with open(args.config) as fh:
                config = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}") from exc
        if not isinstance(config, dict):
            raise UsageError("config file must hold a JSON object")
        config = {k.replace("-", "_"): v for k, v in config.items()}
        unknown = sorted(set(config) - set(defaults))
        if unknown:
            raise UsageError(f"unknown config keys for {args.command}: {', '.join(unknown)}")
    for key, default in defaults.items():
        if getattr(args, key, None) is None:
            setattr(args, key, config.get(key, default))
    return args


def _require(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        flags = ", ".join("--" + n.replace("_", "-") for n in missing)
        raise UsageError(f"missing required value(s): {flags}")


def _params(c, C):
    return FamilyParams(float(c), float(C))


# ---------------------------------------------------------------- commands

def cmd_family_info(args):
    _require(args, "c", "C")
    p = _params(args.c, args.C)
    if p.c_was_negative:
        print(f"note: c={args.c} identified with c={p.c} (isometric members)", file=sys.stderr)
    fm = f_max(p)
    info = {"c": p.c, "C": p.C, "f_max": fm, "domain": [0.0, fm],
            "K_range": [K_of_f(fm, p.c), -1.0]}
    if args.json:
        print(json.dumps(info, sort_keys=True, indent=2))
    else:
        print(f"c        = {_num(p.c)}")
        print(f"C        = {_num(p.C)}")
        print(f"f_max    = {_num(fm)}")
        print(f"domain   = (0, {_num(fm)})")
        print(f"K range  = ({_num(info['K_range'][0])}, -1)   [K at f_max, limit at f -> 0]")
    return EXIT_OK


_F_HEADER = ["u", "f", "f_prime", "f_double_prime", "K", "kappa", "first_integral_C"]


def _f_rows(prof):
    c = prof.params.c
    K = K_of_f(prof.f, c)
    kappa = 0.75 * prof.f_prime / prof.f
    Cs = first_integral_C(prof.f, prof.f_prime, c)
    return np.column_stack([prof.u, prof.f, prof.f_prime, prof.f_double_prime, K, kappa, Cs])


def cmd_solve_f(args):
    _require(args, "c", "C")
    p = _params(args.c, args.C)
    u_back = abs(float(args.u_back))
    code = EXIT_OK
    try:
        if u_back > 0:
            if args.u_span < 0:
                raise UsageError("--u-span must be non-negative when --u-back is given")
            prof = integrate_f_ode_both(p, args.f0, u_back, args.u_span, args.tol)
        else:
            prof = integrate_f_ode(p, args.f0, args.u_span, args.tol)
    except IntegrationError as exc:
        if exc.partial is None:
            raise
        print(f"error: {exc} (partial output written)", file=sys.stderr)
        prof, code = exc.partial, EXIT_NUMERIC
    footer = [("event", prof.event), ("C_drift", _num(prof.C_drift())), ("steps", prof.n_steps)]
    _atomic_write(args.out, _csv_text(_F_HEADER, _f_rows(prof), footer))
    return code


_K_HEADER = ["u", "kappa", "kappa_p", "kappa_pp", "kappa_ppp", "frakA", "frakB", "K"]


def cmd_solve_kappa(args):
    _require(args, "kappa", "kappa_p", "kappa_pp")
    k0 = (float(args.kappa), float(args.kappa_p), float(args.kappa_pp))
    u_back = abs(float(args.u_back))
    code = EXIT_OK
    try:
        if u_back > 0:
            if args.u_span < 0:
                raise UsageError("--u-span must be non-negative when --u-back is given")
            prof = integrate_kappa_ode_both(*k0, u_back, args.u_span, args.tol)
        else:
            prof = integrate_kappa_ode(*k0, args.u_span, args.tol)
    except IntegrationError as exc:
        if exc.partial is None:
            raise
        print(f"error: {exc} (partial output written)", file=sys.stderr)
        prof, code = exc.partial, EXIT_NUMERIC
    A, B = ch.frak_values(prof.kappa, prof.kappa_p, prof.kappa_pp)
    K = ch.K_from_kappa(prof.kappa, prof.kappa_p)
    rows = np.column_stack([prof.u, prof.kappa, prof.kappa_p, prof.kappa_pp, prof.kappa_ppp, A, B, K])
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        c2, C, rep = ch.recover_params(prof)
    footer = [("c_squared", _num(c2)), ("C", _num(C)),
              ("frakA_deviation", _num(rep["frakA constancy"].value)),
              ("C_deviation", _num(rep["C constancy"].value)), ("event", prof.event)]
    _atomic_write(args.out, _csv_text(_K_HEADER, rows, footer))
    return code


def _max_abs(values):
    values = np.asarray(values, dtype=float)
    return float(np.max(np.abs(values))) if values.size else 0.0


def verification_battery(p, f0=1.0, n_samples=100, u_back=2.5, u_fwd=10.0, tol=1e-12,
                         h=1e-3, perturb=None) -> ResidualReport:
    """Every residual check on one family member, reduced to max-abs values.

    ``perturb`` is ``(kind, eps)`` with kind in ``gauss``, ``codazzi``, ``pde``;
    it injects a fault for negative controls.
    """
    kind, eps = perturb if perturb else (None, 0.0)
    c, C = p.c, p.C
    prof = integrate_f_ode_both(p, f0, u_back, u_fwd, tol)
    s0 = ch.kappa_chain_from_f(f0, np.sqrt(potential_P(f0, p)), c, C)
    # the curvature ODE is singular where kappa -> 0 (the turning point of f);
    # stop its forward run once kappa has dropped by two decades
    low = np.flatnonzero((prof.u > 0) & (0.75 * prof.f_prime / prof.f < 1e-2 * s0.kappa))
    u_fwd_k = min(u_fwd, prof.u[low[0]]) if low.size else u_fwd
    kprof = integrate_kappa_ode_both(s0.kappa, s0.kappa_p, s0.kappa_pp, u_back, u_fwd_k, tol)
    rep = ResidualReport()
    rep.add("first integral drift", prof.C_drift(), 1e-8)

    # algebraic checks at every accepted step
    fund = {}
    pde, K_an, chain_res, fa, fb, inter, kk = [], [], [], [], [], [], []
    margins = [np.inf] * 5
    for f, fp, fpp in zip(prof.f, prof.f_prime, prof.f_double_prime):
        frame = None
        if kind == "gauss":
            frame = perturb_frame(f, c, "A3", 0, eps)
        elif kind == "codazzi":
            shape, B = build_frame(f, c)
            frame = (type(shape)(shape.f, shape.c, shape.A3, shape.A4, shape.p3, shape.p4 + eps), B)
        for r in fundamental_residuals(f, fp, c, frame):
            fund[r.name] = max(fund.get(r.name, 0.0), abs(r.value))
        lap = laplacian_f(f, fp, fpp) + (eps if kind == "pde" else 0.0)
        pde.append(pde_residual(f, fp, lap, c))
        K = K_of_f(f, c)
        K_an.append(gauss_curvature_analytic(f, fp, fpp) - K)
        st = ch.kappa_chain_from_f(f, fp, c, C)
        chain_res.append(ch.kappa_ode_residual(st).scaled)
        A, Bf = ch.frak_values(st.kappa, st.kappa_p, st.kappa_pp)
        fa.append((A - c * c) / (c * c))
        fb.append((Bf - f * f) / max(1.0, f * f))
        inter.append(ch.intermediate_relation(st, f))
        kk.append(ch.K_from_kappa(st.kappa, st.kappa_p) - K)
        chk = ch.conditions_check(st)
        for i, r in enumerate(chk):
            margins[i] = min(margins[i], r.value)
    for name in ("gauss", "codazzi E3", "codazzi E4", "ricci", "biconservative"):
        rep.add(name, fund[name], 1e-12)
    rep.add("pde", _max_abs(pde), 1e-9)
    rep.add("K analytic vs K_of_f", _max_abs(K_an), 1e-9)
    rep.add("kappa ode residual", _max_abs(chain_res), 1e-9)
    rep.add("frakA = c^2", _max_abs(fa), 1e-7)
    rep.add("frakB = f^2", _max_abs(fb), 1e-7)
    rep.add("intermediate relation", _max_abs(inter), 1e-9)
    rep.add("K_from_kappa vs K_of_f", _max_abs(kk), 1e-9)
    names = list(ch.CONDITION_NAMES) + ["upper bound below 2 k k'"]
    for name, m in zip(names, margins):
        rep.add_margin("condition " + name, m)

    # interpolated checks on a uniform grid inside both profiles
    lo = max(prof.u[0], kprof.u[0]) + 4 * h
    hi = min(prof.u[-1], kprof.u[-1]) - 4 * h
    # the F chart needs f at least 2h inside (0, f_max)
    fm = f_max(p)
    inside = np.flatnonzero((prof.f > 4 * h) & (prof.f < fm - 4 * h))
    if inside.size:
        lo, hi = max(lo, prof.u[inside[0]]), min(hi, prof.u[inside[-1]])
    if not hi > lo:
        raise DomainError("profiles too short for the finite-difference checks")
    circ = {}
    fd = {"U": [], "F": [], "kappa": []}
    conn = []
    for u in np.linspace(lo, hi, n_samples):
        f, fp, _ = profile_state_at(prof, u)
        K = K_of_f(f, c)
        scale = max(1.0, abs(K))
        fd["U"].append((gauss_curvature_fd(Chart.U_CHART, (u, 0.0), prof, h) - K) / scale)
        fd["kappa"].append((gauss_curvature_fd(Chart.KAPPA_CHART, (u, 0.0), kprof, h) - K) / scale)
        fd["F"].append((gauss_curvature_fd(Chart.F_CHART, (f, 0.0), p, h, local_step=True) - K) / scale)
        for r in circle_check(prof, u):
            circ[r.name] = max(circ.get(r.name, 0.0), abs(r.value))
        # frame change: nabla_E2 E2 = f^(3/2) G1_22 E1, nabla_E2 E1 = G2_12 E2
        sym = christoffel(Chart.U_CHART, (u, 0.0), prof)
        cc = ch.connection_coefficients(f, fp)
        conn += [cc.e2_e2 - f**1.5 * sym.G1_22, cc.e2_e1 - sym.G2_12]
    for chart, vals in fd.items():
        rep.add(f"K fd {chart} chart", _max_abs(vals), 1e-5)
    rep.add("circle variation", circ["variation along curve"], 1e-12)
    rep.add("circle vs 3f'/(4f)", circ["deviation from 3f'/(4f)"], 1e-9)
    rep.add("circle vs kappa(K)", circ["deviation from kappa(K)"], 1e-9)
    rep.add("connection vs christoffel", _max_abs(conn), 1e-12)

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        c2, C_rec, krep = ch.recover_params(kprof)
    rep.merge(krep, "kappa profile ")
    rep.add("recovered c^2", (c2 - c * c) / (c * c), 1e-6)
    rep.add("recovered C", (C_rec - C) / max(1.0, abs(C)), 1e-6)
    rep.notes.update(n_f_samples=len(prof), n_kappa_samples=len(kprof),
                     u_range=[lo, hi], events=[prof.meta.get("events"), kprof.event])
    return rep


def cmd_verify(args):
    _require(args, "c", "C")
    p = _params(args.c, args.C)
    perturb = None
    if args.perturb:
        kind, eps = args.perturb
        if kind not in ("gauss", "codazzi", "pde"):
            raise UsageError("--perturb kind must be gauss, codazzi or pde")
        perturb = (kind, float(eps))
    if int(args.n_samples) < 1:
        raise UsageError("--n-samples must be positive")
    rep = verification_battery(p, args.f0, int(args.n_samples), args.u_back, args.u_fwd,
                               args.tol, args.h, perturb)
    doc = {"params": {"c": p.c, "C": p.C, "f0": args.f0}, "pass": rep.passed,
           "residuals": rep.as_dict()}
    if perturb:
        doc["perturb"] = {"kind": perturb[0], "eps": perturb[1]}
    _atomic_write(args.out, json.dumps(doc, sort_keys=True, indent=2) + "\n")
    if not rep.passed:
        print("verification failed: " + ", ".join(rep.failures()), file=sys.stderr)
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_isometry(args):
    _require(args, "c1", "C1", "c2", "C2")
    p1, p2 = _params(args.c1, args.C1), _params(args.c2, args.C2)
    verdict = classify(p1, p2)
    print("ISOMETRIC (v -> ±v + b)" if verdict.isometric else "NOT ISOMETRIC")
    if args.numeric:
        profs = []
        for p in (p1, p2):
            f0 = 0.5 * f_max(p)
            profs.append(integrate_f_ode_both(p, f0, 6.0, 10.0, 1e-10))
        nv = invariant_match(profs[0], profs[1], 1e-6)
        dev = "n/a" if nv.max_deviation is None else f"{nv.max_deviation:.3e}"
        print(f"numeric kappa(K) comparison: {nv.isometric} (max deviation {dev})")
    return EXIT_OK if verdict.isometric else EXIT_FAIL


def _atlas_row(cC):
    c, C = cC
    p = FamilyParams(c, C)
    fm = f_max(p)
    return c, C, fm, K_of_f(fm, p.c)


def _grid(values, rng, name):
    if values is not None:
        return [float(v) for v in values]
    if rng is not None:
        lo, hi, n = float(rng[0]), float(rng[1]), int(rng[2])
        if n < 0:
            raise UsageError(f"{name} count must be non-negative")
        return list(np.linspace(lo, hi, n)) if n != 1 else [lo]
    raise UsageError(f"give --{name}-values or --{name}-range")


def cmd_sweep(args):
    cs = _grid(args.c_values, args.c_range, "c")
    Cs = _grid(args.C_values, args.C_range, "C")
    if not cs or not Cs:
        raise UsageError("empty grid")
    if any(c == 0 for c in cs):
        raise UsageError("c must be nonzero on every grid point")
    points = sorted({(c, C) for c in cs for C in Cs})
    if int(args.jobs) > 1:
        with ProcessPoolExecutor(max_workers=int(args.jobs)) as pool:
            rows = list(pool.map(_atlas_row, points))
    else:
        rows = [_atlas_row(pt) for pt in points]
    path = os.path.join(args.out_dir, "atlas.csv")
    _atomic_write(path, _csv_text(["c", "C", "f_max", "K_min"], rows))
    print(path)
    return EXIT_OK


_COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"]


def _ticks(lo, hi, n=5):
    return [lo + (hi - lo) * i / (n - 1) for i in range(n)]


def render_svg(x, ys, labels, xlabel, title=None, width=640, height=400):
    """Self-contained SVG line plot; one polyline per series."""
    ml, mr, mt, mb = 80, 20, 36, 50
    pw, ph = width - ml - mr, height - mt - mb
    x = np.asarray(x, dtype=float)
    ys = [np.asarray(y, dtype=float) for y in ys]
    x0, x1 = float(x.min()), float(x.max())
    y0 = min(float(y.min()) for y in ys)
    y1 = max(float(y.max()) for y in ys)
    if x1 == x0:
        x0, x1 = x0 - 0.5, x1 + 0.5
    # keep round-off from being magnified into visible wiggles
    span = max(y1 - y0, 1e-6 * max(1.0, abs(y0), abs(y1)))
    mid = 0.5 * (y0 + y1)
    y0, y1 = mid - 0.55 * span, mid + 0.55 * span

    def sx(v):
        return ml + (v - x0) / (x1 - x0) * pw

    def sy(v):
        return mt + ph - (v - y0) / (y1 - y0) * ph

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
           f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="11">',
           f'<rect width="{width}" height="{height}" fill="white"/>']
    if title:
        out.append(f'<text x="{width / 2:.1f}" y="20" text-anchor="middle" font-size="14">{_esc(title)}</text>')
    out.append(f'<rect x="{ml}" y="{mt}" width="{pw}" height="{ph}" fill="none" stroke="black"/>')
    for v in _ticks(x0, x1):
        px = sx(v)
        out.append(f'<line x1="{px:.2f}" y1="{mt + ph}" x2="{px:.2f}" y2="{mt + ph + 5}" stroke="black"/>')
        out.append(f'<text x="{px:.2f}" y="{mt + ph + 18}" text-anchor="middle">{v:.4g}</text>')
    for v in _ticks(y0, y1):
        py = sy(v)
        out.append(f'<line x1="{ml - 5}" y1="{py:.2f}" x2="{ml}" y2="{py:.2f}" stroke="black"/>')
        out.append(f'<text x="{ml - 8}" y="{py + 4:.2f}" text-anchor="end">{v:.7g}</text>')
    out.append(f'<text x="{ml + pw / 2:.1f}" y="{height - 10}" text-anchor="middle">{_esc(xlabel)}</text>')
    for i, (y, label) in enumerate(zip(ys, labels)):
        color = _COLORS[i % len(_COLORS)]
        pts = " ".join(f"{sx(a):.2f},{sy(b):.2f}" for a, b in zip(x, y))
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{pts}"/>')
        ly = mt + 14 + 16 * i
        out.append(f'<line x1="{ml + 10}" y1="{ly - 4}" x2="{ml + 30}" y2="{ly - 4}" stroke="{color}" stroke-width="2"/>')
        out.append(f'<text x="{ml + 36}" y="{ly}">{_esc(label)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _esc(s):
    return str(s).replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def cmd_plot(args):
    _require(args, "csv")
    try:
        header, data = _read_csv(args.csv)
    except OSError as exc:
        raise UsageError(f"cannot read {args.csv}: {exc}") from exc
    xcol = args.x or header[0]
    ycols = args.y or [h for h in header if h != xcol][:1]
    missing = [col for col in [xcol, *ycols] if col not in header]
    if missing:
        raise UsageError(f"missing column(s): {', '.join(missing)}")
    idx = {h: i for i, h in enumerate(header)}
    svg = render_svg(data[:, idx[xcol]], [data[:, idx[y]] for y in ycols], ycols, xcol, args.title)
    _atomic_write(args.out, svg)
    return EXIT_OK


# ---------------------------------------------------------------- parser

def _parser():
    ap = argparse.ArgumentParser(prog="bicons", description=__doc__.split("\n\n")[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def cmd(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--config", help="JSON file with defaults for this command")
        sp.set_defaults(handler=fn)
        return sp

    def family(sp):
        sp.add_argument("--c", type=float, help="nonzero A4 coefficient")
        sp.add_argument("--C", type=float, help="first-integral constant")

    sp = cmd("family-info", cmd_family_info, "f_max, K-range and domain of a member")
    family(sp)
    sp.add_argument("--json", action="store_true", default=None)

    sp = cmd("solve-f", cmd_solve_f, "integrate the profile ODE to CSV")
    family(sp)
    sp.add_argument("--f0", type=float)
    sp.add_argument("--u-span", type=float, help="end of the integration (signed)")
    sp.add_argument("--u-back", type=float, help="also integrate backward this far")
    sp.add_argument("--tol", type=float)
    sp.add_argument("--out", help="output CSV ('-' for stdout)")

    sp = cmd("solve-kappa", cmd_solve_kappa, "integrate the curvature ODE to CSV")
    sp.add_argument("--kappa", type=float)
    sp.add_argument("--kappa-p", type=float)
    sp.add_argument("--kappa-pp", type=float)
    sp.add_argument("--u-span", type=float)
    sp.add_argument("--u-back", type=float)
    sp.add_argument("--tol", type=float)
    sp.add_argument("--out")

    sp = cmd("verify", cmd_verify, "run the residual battery and write a JSON report")
    family(sp)
    sp.add_argument("--f0", type=float)
    sp.add_argument("--n-samples", type=int)
    sp.add_argument("--u-back", type=float)
    sp.add_argument("--u-fwd", type=float)
    sp.add_argument("--tol", type=float)
    sp.add_argument("--h", type=float, help="finite-difference step")
    sp.add_argument("--perturb", nargs=2, metavar=("KIND", "EPS"),
                    help="inject a fault: gauss, codazzi or pde")
    sp.add_argument("--out")

    sp = cmd("isometry", cmd_isometry, "decide whether two members are isometric")
    sp.add_argument("--c1", type=float)
    sp.add_argument("--C1", type=float)
    sp.add_argument("--c2", type=float)
    sp.add_argument("--C2", type=float)
    sp.add_argument("--numeric", action="store_true", default=None,
                    help="also compare kappa(K) numerically")

    sp = cmd("sweep", cmd_sweep, "tabulate f_max and K_min over a (c, C) grid")
    sp.add_argument("--c-values", type=float, nargs="+")
    sp.add_argument("--C-values", type=float, nargs="+")
    sp.add_argument("--c-range", nargs=3, metavar=("LO", "HI", "N"))
    sp.add_argument("--C-range", nargs=3, metavar=("LO", "HI", "N"))
    sp.add_argument("--out-dir")
    sp.add_argument("--jobs", type=int)

    sp = cmd("plot", cmd_plot, "SVG line plot of CSV columns")
    sp.add_argument("csv", nargs="?")
    sp.add_argument("--x")
    sp.add_argument("--y", nargs="+")
    sp.add_argument("--out")
    sp.add_argument("--title")
    return ap


def _setup_logging():
    level = {"quiet": logging.WARNING, "info": logging.INFO, "debug": logging.DEBUG}
    name = os.environ.get("BICONS_LOG", "quiet").lower()
    logging.basicConfig(level=level.get(name, logging.WARNING), stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")


def main(argv=None) -> int:
    _setup_logging()
    args = _parser().parse_args(argv)
    try:
        _merge_config(args)
        return args.handler(args)
    except (UsageError, DomainError, InadmissibleError, InconsistencyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except IntegrationError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


def run():
    sys.exit(main())
