"""The shape operators of the immersion and the residuals of the structure equations."""

import numpy as np

from bicons import FamilyParams, integrate_f_ode_both
from bicons.extrinsic import (build_frame, first_normal_rank, fundamental_residuals, laplacian_f,
                              pde_residual, perturb_frame)

shape, B = build_frame(1.0, 1.0)
print("A3 =", shape.A3.tolist(), "  A4 =", shape.A4.tolist())
print("mean curvature components (E3, E4):", B.mean_curvature.tolist())
det, rank = first_normal_rank(1.0, 1.0)
print(f"first normal space: det={det}, rank={rank}")

p = FamilyParams(1.0, 80 / 9)
prof = integrate_f_ode_both(p, 1.0, 2.5, 10.0, 1e-12)
worst = {}
for f, fp in zip(prof.f, prof.f_prime):
    for r in fundamental_residuals(f, fp, 1.0):
        worst[r.name] = max(worst.get(r.name, 0.0), abs(r.value))
print("\nworst residual over", len(prof), "samples:")
for name, v in worst.items():
    print(f"  {name:<16s} {v:.2e}")
res = pde_residual(prof.f, prof.f_prime, laplacian_f(prof.f, prof.f_prime, prof.f_double_prime), 1.0)
print(f"  {'pde':<16s} {np.max(np.abs(res)):.2e}")

print("\nscaling one eigenvalue of A3 by 1.001 breaks the structure equations:")
print(fundamental_residuals(1.0, 4 / 3, 1.0, perturb_frame(1.0, 1.0, "A3", 0, 1e-3)))
