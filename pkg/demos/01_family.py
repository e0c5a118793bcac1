"""Walk through one member of the family: its domain, potential and curvature."""

import numpy as np

from bicons import FamilyParams, K_of_f, f_max, invert_curvature_cubic, potential_P

p = FamilyParams(1.0, 80 / 9)
fm = f_max(p)
print(f"member c={p.c}, C={p.C:.6f}")
print(f"f lives in (0, f_max) with f_max = {fm:.10f}")

print("\nThe potential P(f) = f'^2 is positive inside and changes sign once, at f_max:")
for f in (0.1, 0.5, 1.0, fm * 0.999, fm * 1.001):
    print(f"  P({f:.5f}) = {potential_P(f, p):+.6e}")

print("\nGaussian curvature depends on f alone, K = -1 - 3f^2 - c^2 f^3:")
for f in (1e-3, 0.5, 1.0, fm):
    K = K_of_f(f, p.c)
    print(f"  f={f:.4f}  K={K:+.6f}  inverse cubic gives back f={invert_curvature_cubic(K, p.c):.12f}")

print("\nSign of c does not matter: FamilyParams(-1, 80/9) canonicalizes to", FamilyParams(-1.0, 80 / 9))
print("A second member for contrast: f_max(2, 1) =", f"{f_max(FamilyParams(2.0, 1.0)):.10f}")
print("K never reaches -1:", np.all(K_of_f(np.geomspace(1e-8, fm, 50), 1.0) < -1))
