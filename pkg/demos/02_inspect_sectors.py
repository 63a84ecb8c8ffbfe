"""
Inside the n=4 computation
==========================

Every twisted sector is labelled by a cycle type, a standard angle type and
a coset representative.  Here we list them and regroup by angle type.
"""

from fractions import Fraction

from stringy_symprod.combinatorics import coset_partition, reduced_representatives
from stringy_symprod.stringy import case_subtotals, stringy_E

res = stringy_E(4)

for s in res.sectors:
    theta = ",".join(str(t) for t in s.theta)
    print(f"{str(s.lam):10s} ({theta:9s})  rep={s.rep}  phi={s.phi}  age={s.age}  "
          f"E={s.e_factor.render():12s}  -> {s.polynomial().render()}")

# Subtotals per (cycle type, angle type).
print()
for (lam, theta), poly in case_subtotals(res).items():
    print(lam, tuple(str(t) for t in theta), poly.render())

# The coset decomposition behind the (2,1,1), (1/2,0,0) rows: four cosets,
# two of which are swapped by the transposition (2 3) acting on the left.
print()
theta = (Fraction(1, 2), Fraction(0), Fraction(0))
print("cosets:", [c.representative for c in coset_partition(theta)])
print("orbits:", [c.representative for c in reduced_representatives((2, 1, 1), theta)])
