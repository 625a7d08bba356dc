#!/usr/bin/env python3
"""Tour of the density functionals on a few classic integer sets.

Counting density weighs every integer equally; logarithmic density weighs x
by 1/x and renormalizes by ln(n).  The Banach variants take the best window
anywhere, not just initial segments.  Everything here is a finite-horizon
profile: no limits, just checkpointed values with visible convergence.
"""

import math

from densitylab import (
    IntegerSetSpec,
    banach_window_sup,
    bd_estimate,
    counting_profile,
    lbd_estimate,
    log_profile,
)

H = 10**6

sets = {
    "naturals": IntegerSetSpec.full(),
    "evens": IntegerSetSpec.even(),
    "squarefree": IntegerSetSpec.squarefree(),
    "primes": IntegerSetSpec.primes(),
}

print("=== counting vs logarithmic density at n = 10^6 ===")
for name, spec in sets.items():
    c = counting_profile(spec, "upper", H, [H]).final_value
    l = log_profile(spec, H, [H]).final_value
    print(f"{name:11s} count {c:.5f}   log {l:.5f}")

print()
print("=== the log density of the naturals converges to 1 from above ===")
prof = log_profile(IntegerSetSpec.full(), H)
for n, v in prof.checkpoints[-6:]:
    print(f"  n = {n:>8d}   H_n / ln n = {v:.6f}")
print("  (the excess is the Euler-Mascheroni constant over ln n)")

print()
print("=== Banach window suprema ===")
# g(n) is the largest reciprocal sum over any window [k, k*n); dividing by
# ln n and letting n grow gives the Banach log density.
for n in (10, 100, 1000):
    g = banach_window_sup(IntegerSetSpec.even(), n, H)
    print(f"  evens: g({n:>4d}) = {g:.4f}   g/ln n = {g / math.log(n):.4f}")

print()
print("=== Banach densities: window max vs log-window estimate ===")
for name, spec in sets.items():
    bd = bd_estimate(spec, 1000, H)
    lbd = lbd_estimate(spec, 10**4, H)
    print(f"{name:11s} bd window (len 1001) {bd:.4f}   lbd grid estimate {lbd:.4f}")

print()
print("Both estimates are biased upward at finite scale; the bias shrinks")
print("like 1/ln(n_max) as the grid and horizon grow.")
