"""Complex eigenvalues break the +/-omega symmetry of crossing delays.

For the normal matrix [[1, -1], [1, 1]] (eigenvalues 1 +/- i), the crossing
frequencies are omega = +/- sqrt(2) but each (eigenvalue, omega sign)
combination has its own first delay: the short one pi/(4 sqrt 2) and the long
one 3 pi/(4 sqrt 2).  The margin is the shortest of the four.
"""

import math

import numpy as np

from delaymargin import DelaySystem, MatrixSpectrum, Polynomial, operator_margin

system = DelaySystem(Polynomial([0, 1]), Polynomial([1]), MatrixSpectrum([[1, -1], [1, 1]]))
report = operator_margin(system, h_max=2.0)

w = math.sqrt(2)
print(f"crossing frequencies: +/- sqrt(2) = +/-{w:.6f}")
print()
print("first-delay table per (eigenvalue, omega):")
for r in report.per_lambda:
    for e in sorted(r.events, key=lambda e: e.omega):
        sign = "+" if e.omega > 0 else "-"
        print(f"  lambda = {r.lam:.0f},  s = {sign}i*sqrt(2):  h = {e.h:.9f}")

short = math.pi / (4 * w)
long_ = 3 * math.pi / (4 * w)
print()
print(f"short delay pi/(4 sqrt 2)   = {short:.9f}")
print(f"long delay 3 pi/(4 sqrt 2)  = {long_:.9f}")
print(f"operator margin             = {report.margin:.12f}")
assert abs(report.margin - short) < 1e-9
print()
print("note the conjugate pairing: the table for conj(lambda) is the table")
print("for lambda with omega negated, so the minimum is attained twice.")
