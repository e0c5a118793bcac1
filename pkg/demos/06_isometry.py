"""Which members are the same abstract surface?"""

from bicons import FamilyParams, classify, f_max, integrate_f_ode_both, invariant_match


def profile(p):
    return integrate_f_ode_both(p, 0.5 * f_max(p), 6.0, 10.0, 1e-10)


pairs = [((1.0, 2.0), (-1.0, 2.0)), ((1.0, 2.0), (1.0, 3.0)), ((1.0, 80 / 9), (1.0, 9.0))]
for a, b in pairs:
    pa, pb = FamilyParams(*a), FamilyParams(*b)
    exact = classify(pa, pb)
    numeric = invariant_match(profile(pa), profile(pb), 1e-6)
    print(f"{a} vs {b}: classify={exact.isometric}, kappa(K) comparison={numeric.isometric} "
          f"(max deviation {numeric.max_deviation:.2e})")
    if exact.note:
        print("   witness:", exact.note)
