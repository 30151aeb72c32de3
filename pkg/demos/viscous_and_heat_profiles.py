# Dissipation profiles through one radiation shock: the scalar
# viscous-only reduction, then heat conduction switched on. The
# Lyapunov quantity should climb monotonically along both.

import numpy as np

from shockscan import (FtCoefficients, make_model, radiation_eos,
                       scalar_profile_ft, shock_from_strength,
                       shoot_heteroclinic)

eos = radiation_eos()
shock = shock_from_strength(eos, q1=3.0, strength=0.5)
print(f"shock: rho {shock.rho_minus:.5f} -> {shock.rho_plus:.5f}, "
      f"strength {shock.strength}")

prof_v = scalar_profile_ft(shock, FtCoefficients(eta=1.0))
print(f"\nviscous-only: {prof_v.classification}, width {prof_v.width:.4f}")
print("  rest points:",
      {rp.label: rp.kind for rp in prof_v.rest_points})

dL = np.diff(prof_v.lyap)
print(f"  L rises from {prof_v.lyap[0]:.6f} to {prof_v.lyap[-1]:.6f}, "
      f"min step {dL.min():.2e}")

# heat conduction makes the system genuinely planar and stiff near
# the ends; LSODA handles it without drama
heat = make_model("ft-heat", eos, eta=1.0, chi=0.5)
prof_h = shoot_heteroclinic(shock, heat, method="LSODA")
print(f"\nheat-conducting (chi=0.5): {prof_h.classification}, "
      f"width {prof_h.width:.4f}")
print("  rest points:",
      {rp.label: rp.kind for rp in prof_h.rest_points})

# small chi should track the scalar profile closely
heat_small = make_model("ft-heat", eos, eta=1.0, chi=1e-3)
prof_s = shoot_heteroclinic(shock, heat_small, method="LSODA",
                            rtol=1e-9, atol=1e-11)
grid = np.linspace(-8.0, 8.0, 200)
gap = np.abs(np.interp(grid, prof_s.x, prof_s.rho)
             - np.interp(grid, prof_v.x, prof_v.rho))
print(f"\nchi=1e-3 vs scalar: sup |rho difference| = {gap.max():.2e}")

# widths blow up toward the weak end
print()
for s in (0.05, 0.2, 0.5, 0.9):
    sd = shock_from_strength(eos, 3.0, s)
    p = scalar_profile_ft(sd, FtCoefficients(eta=1.0))
    print(f"s = {s:4.2f}: width {p.width:8.3f}")
