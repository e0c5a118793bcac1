"""Gaussian curvature three ways and the circles formed by its level sets."""

from bicons import (Chart, FamilyParams, K_of_f, circle_check, gauss_curvature_analytic,
                    gauss_curvature_fd, integrate_f_ode_both, integrate_kappa_ode_both)
from bicons.geometry import profile_state_at

p = FamilyParams(1.0, 80 / 9)
prof = integrate_f_ode_both(p, 1.0, 2.5, 10.0, 1e-12)
kprof = integrate_kappa_ode_both(1.0, -4.0, -20.0, 2.5, 10.0, 1e-12)

print("   u        K_of_f       analytic     FD u-chart   FD f-chart   FD kappa-chart")
for u in (-2.0, -1.0, 0.0, 0.1):
    f, fp, fpp = profile_state_at(prof, u)
    row = [K_of_f(f, 1.0), gauss_curvature_analytic(f, fp, fpp),
           gauss_curvature_fd(Chart.U_CHART, (u, 0.0), prof, 1e-3),
           gauss_curvature_fd(Chart.F_CHART, (f, 0.0), p, 1e-3, local_step=True),
           gauss_curvature_fd(Chart.KAPPA_CHART, (u, 0.0), kprof, 1e-3)]
    print(f"{u:6.2f}  " + "  ".join(f"{v:11.7f}" for v in row))

print("\nEach level curve u = const is a circle of curvature 3f'/(4f):")
for u in (-1.5, 0.0):
    print(f"-- u = {u}")
    print(circle_check(prof, u))
