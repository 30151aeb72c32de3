# Second-order (BDN-type) tensor on the radiation fluid: causality
# classes, the monotone/oscillatory split along the strength axis,
# and a coefficient choice whose profile hits the singular locus.

from shockscan import (BdnCoefficients, bdn_causality_class, make_model,
                       nu_bound, radiation_eos, run_scan,
                       shock_from_strength, shoot_heteroclinic)

eos = radiation_eos()

print("causality classes (eta, mu, nu):")
for triple in [(1.0, 4 / 3, 4.0), (1.0, 4 / 3, 2.0), (1.0, 30.0, 3.0),
               (1.0, 4 / 3, 8.0)]:
    label, bound = bdn_causality_class(BdnCoefficients(*triple))
    print(f"  ({triple[0]:g}, {triple[1]:g}, {triple[2]:g}): {label:16s}"
          f" (sharp bound nu = {bound:g})")

# sharply causal coefficients: weak shocks connect monotonically,
# stronger ones spiral into the downstream state
res = run_scan("radiation", "bdn", {"eta": 1.0, "mu": 4 / 3, "nu": 4.0},
               [3.0], [0.05, 0.08, 0.12, 0.3, 0.6, 0.9])
print()
for rec in res.records:
    print(f"s = {rec.strength:4.2f}: {rec.classification}")
print(f"first oscillatory strength: {res.first_oscillatory()}")

# strictly causal but with a huge bulk regulator: the orbit runs into
# the singular locus of the profile matrix before it can connect
witness = make_model("bdn", eos, eta=1.0, mu=30.0, nu=3.0)
shock = shock_from_strength(eos, 3.0, 0.98)
prof = shoot_heteroclinic(shock, witness)
print(f"\n(1, 30, 3) at s = 0.98: {prof.classification}")
print(f"  {prof.reason}")

# acausal coefficients still define an ODE, but the rest-point
# structure degrades: here neither end state is a saddle, so there
# is nothing to shoot from
acausal = make_model("bdn", eos, eta=1.0, mu=4 / 3, nu=8.0)
prof = shoot_heteroclinic(shock_from_strength(eos, 1.0, 0.9), acausal)
print(f"\nnu = 8 (acausal) at q1 = 1, s = 0.9: {prof.classification}")
print(f"  {prof.reason}")
