"""
Stringy E-polynomials of small relative symmetric products
==========================================================

Walk from the untwisted part to the full total for n = 2..6.
"""

from stringy_symprod.stringy import stringy_E, untwisted

# The untwisted sector is a closed form: L^(n+2) (1+L)^(n-1).
for n in range(2, 7):
    print(f"n={n}  untwisted  {untwisted(n).render()}")

print()

# Adding every twisted sector gives the stringy total.  Evaluating at L = 1
# gives the orbifold Euler number.
for n in range(2, 7):
    res = stringy_E(n)
    print(f"n={n}  {len(res.sectors):4d} sectors  total {res.total.render()}  (euler {res.total(1)})")

# Coefficient arrays are ascending in L, which is what the JSON output uses.
print()
print(stringy_E(3).to_json())
