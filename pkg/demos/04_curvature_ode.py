"""From f to the level-curve curvature kappa and back again."""

from bicons import (KappaState, conditions_check, frak_A, frak_B, integrate_kappa_ode_both,
                    kappa_chain_from_f, kappa_ode_residual, recover_params)

s = kappa_chain_from_f(1.0, 4 / 3, 1.0, 80 / 9)
print(f"chain at the reference point: kappa={s.kappa:.12f}, kappa'={s.kappa_p:.12f}, "
      f"kappa''={s.kappa_pp:.12f}, kappa'''={s.kappa_ppp:.12f}")
print(f"ODE residual {kappa_ode_residual(s).raw:.2e};  A = {frak_A(s):.12f} (c^2),  B = {frak_B(s):.12f} (f^2)")
print("\nadmissibility margins:")
print(conditions_check(s))

print("\nan inadmissible triple for contrast:")
print(conditions_check(KappaState(1.0, 0.0, 0.0)))

kp = integrate_kappa_ode_both(1.0, -4.0, -20.0, 2.5, 10.0, 1e-12)
c2, C, rep = recover_params(kp)
print(f"\nparameters recovered from the curvature profile alone: c^2={c2:.10f}, C={C:.10f}")
print(rep)
