#!/usr/bin/env python3
"""The harmonic window measure and its quotient structure.

On a window [k, N*k] each point a gets mass 1/(a ln N), so an interval's
measure is close to its normalized log-length and the whole window has
measure about 1.  A ratio cut rho identifies points within a factor rho;
classes are integer intervals, and the log coordinate phi sends the window
onto [0, 1] respecting that identification.
"""

import math
from fractions import Fraction

from densitylab import (
    IntegerSetSpec,
    IntervalSet,
    RatioCut,
    Window,
    big_estimate,
    density_plus,
    equivalent,
    interval_measure,
    monad_of,
    nu,
    phi,
    scale_check,
)

w = Window(1, 10**12)
print(f"window [1, 10^12], ln N = {w.log_span:.4f}")

print()
print("=== interval measures are normalized log-lengths ===")
for a, b in ((10**3, 10**4), (10**3, 10**6), (1, 10**6)):
    exact = nu(w, IntervalSet(((a, b),))).value
    approx = interval_measure(w, a, b)
    print(f"  [{a:>7d}, {b:>9d}]   harmonic sum {exact:.6f}   log-length {approx:.6f}")

print()
print("=== the half-window split ===")
w2 = Window(10**3, 10**12)
mid = w2.k * 10**6  # k * sqrt(N)
print(f"  nu([k, k*sqrt(N)])  = {nu(w2, IntervalSet(((w2.k, mid),))).value:.6f}")
print(f"  nu([k*sqrt(N), Nk]) = {nu(w2, IntervalSet(((mid, w2.hi),))).value:.6f}")

print()
print("=== ratio-cut classes (monads) ===")
cut = RatioCut(Fraction(10))
for a in (10**4, 10**8):
    lo, hi = monad_of(w, cut, a)
    print(f"  class of {a:>9d} under rho=10: [{lo}, {hi}],  phi spread "
          f"{phi(w, hi) - phi(w, lo):.4f}")
print(f"  equivalent(rho=10, 50, 400)  = {equivalent(cut, 50, 400)}")
print(f"  equivalent(rho=10, 50, 5000) = {equivalent(cut, 50, 5000)}")

print()
print("=== scaling is measure preserving (on the quotient scale) ===")
s = IntervalSet(((10**3, 10**6),))
for scale in (7, 10**3):
    r = scale_check(w, s, scale)
    print(f"  scale {scale:>5d}: nu(S) = {r.nu_source:.6f}  nu(scale*S) = {r.nu_image:.6f}"
          f"  |diff| = {r.discrepancy:.2e} (bound {r.bound:.2e})")

print()
print("=== almost every point of a fat set is a local density point ===")
x_set = IntervalSet(((10**3, 10**11),))
print(f"  big component estimate: {big_estimate(w, x_set):.4f}")
for x in (10**4, 10**6, 10**10):
    rows = density_plus(w, cut, x_set, x, [100.0])
    print(f"  local measure of X over [x, 100x] at x = {x:>11d}: {rows[0][1]:.4f}")
print("  (the last window sticks out past X's top edge, so only half is covered)")
