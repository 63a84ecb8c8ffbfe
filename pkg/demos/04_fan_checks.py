"""
The small resolution as a fan
=============================

Build the fan by consecutive star subdivisions, then run the structural
checks: n! smooth chambers, no new rays, a bundle over the permutohedral
variety, and multiplicity one along the central fibre.
"""

from stringy_symprod.toric import (
    build_C2,
    build_delta_fan,
    delta_fan_report,
    fiber_product_identity,
    multiplicity_check,
    verify_bundle_structure,
)

for row in build_C2(3):
    print(" ".join(str(x) for x in row))

fan = build_delta_fan(3)
print()
print(f"{len(fan.rays)} rays, {len(fan.maximal_cones)} maximal cones, {len(fan.all_cones())} cones")
print(fan.dumps())

print()
for rep in (delta_fan_report(3), verify_bundle_structure(3), multiplicity_check(3)):
    print(rep.render())

# The cone over C2 is the iterated fibre product of the curve cone.
print()
for d, n in [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3)]:
    ok, detail = fiber_product_identity(d, n)
    print(f"d={d} n={n}: {'ok' if ok else 'FAILED'} ({detail})")
