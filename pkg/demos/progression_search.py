#!/usr/bin/env python3
"""Approximate geometric progressions: positive results and a blocker.

x is an n-approximation of a when x/n < a < x*n.  Sets with positive Banach
log density contain n-approximate geometric progressions of any length with
arbitrarily large start and ratio; this script finds some, certifies that
the squarefree numbers contain no exact 3-term geometric progression, and
shows the cubically separated block construction defeating the search.
"""

from densitylab import (
    IntegerSetSpec,
    example2_set,
    find_geo,
    find_gp3,
    find_power_ap,
    gp_free_certify,
)

sf = IntegerSetSpec.squarefree()

print("=== approximate geometric progressions in the squarefree numbers ===")
for min_ar in (10, 50, 100):
    w = find_geo(sf, 3, 2, min_ar, min_ar, 10**7)
    a, r = w.progression.a, w.progression.r
    print(f"  a, r > {min_ar:>4d}: progression {w.progression.terms} "
          f"matched to {[m for _, m in w.matches]}")

print()
print("=== yet no exact 3-term geometric progression exists ===")
print(f"  gp_free_certify(squarefree, 10^4) = {gp_free_certify(sf, 10**4)}")
print(f"  counterexample in the naturals:    {find_gp3(IntegerSetSpec.full(), 100)}")

print()
print("=== the blocking construction ===")
blocks = example2_set(2, 3)
print("  blocks [u, 2u] with u growing like (2u)^3:")
for a, b in blocks.components[:4]:
    print(f"    [{a}, {b}]")
spec = IntegerSetSpec.example2(2, 4)
# with n = 2 the blocker is m = n^3 * j = 16: no progression with
# a, r > 16 is 2-approximately inside the set, at any horizon
w = find_geo(spec, 3, 2, 16, 16, 10**8)
print(f"  find_geo(blocks, l=3, n=2, min_a=min_r=16, horizon=10^8) -> {w}")
w = find_geo(spec, 3, 2, 2, 1, 10**6)
print(f"  but with small min bounds a witness lives inside one block: "
      f"{w.progression.terms}")

print()
print("=== m-th powers of arithmetic progressions ===")
w = find_power_ap(sf, 2, 3, 3, 10, 2, 10**6)
print(f"  squares of an AP, 3-approximate in the squarefree numbers:")
print(f"    pattern {w.progression.terms} matched to {[m for _, m in w.matches]}")
