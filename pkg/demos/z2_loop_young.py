"""Young diagram dynamics on a Z2 loop structure, checked against the recursion."""

from fractions import Fraction

from qairy import recursion, young, zoo

s = zoo.z2_loop_airy({-1: 3, 0: 2, 1: Fraction(-1, 2)}, {(0, 0): 5}, budget=4)
print(f"support constant r = {s.certificate.young_r}")
for g, n in recursion.stable_pairs(4):
    om = young.omega(s, g, n)
    fe = {tuple(sorted(k)): v for k, v in recursion.free_energy(s, g, n).items()}
    print(f"Omega_{g},{n}: {len(om):3d} diagrams, matches F_{g},{n}: {young.evaluate(om) == fe}")

print("Omega_1,2:")
for lam, v in sorted(young.omega(s, 1, 2).items(), key=lambda kv: kv[0].columns):
    print(f"  {lam} {v}")
