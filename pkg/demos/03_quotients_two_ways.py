"""
Quotients of permutohedral varieties, two ways
==============================================

E(X(A_{r-1}) / S_mu) from the symmetric-function pairing, and again by
averaging fixed-cone traces over the group.
"""

from stringy_symprod.oracle import crosscheck_quotients, equivariant_E, toric_E
from stringy_symprod.symfun import chi_A
from stringy_symprod.toric import coxeter_fan, coxeter_matrix

# The graded character in the h-basis.
for n in range(1, 5):
    print(f"chi_{n} = {chi_A(n).render()}")

# Face counts of the hexagon fan and a 3-cycle trace.
hexagon = coxeter_fan(3).fan
print()
print("toric E, r=3:", toric_E(hexagon).render())
print("trace of (1 2 3):", equivariant_E(hexagon, coxeter_matrix((2, 3, 1))).render())

# Both routes for every Young subgroup up to r = 5.
print()
for row in crosscheck_quotients(5):
    flag = "ok" if row.match else "MISMATCH"
    print(f"r={row.r} mu={row.mu}: {row.formula.render():28s} {flag}")
