"""Delay margin of x'(t) + A x(t-h) = u(t) for an upper-triangular A.

The transfer function is (sI + e^{-sh}A)^{-1}, so P = s and Q = 1.  The
spectrum of the triangular matrix is its diagonal {1, 2, 2}; each eigenvalue
gets its own scalar sweep and the operator margin is the smallest one.
"""

import math

from delaymargin import DelaySystem, MatrixSpectrum, Polynomial, operator_margin

A = MatrixSpectrum([[1, 0, 0], [0, 2, 1], [0, 0, 2]])
system = DelaySystem(Polynomial([0, 1]), Polynomial([1]), A)

report = operator_margin(system, h_max=2.0)

print("spectrum treated per eigenvalue:")
for r in report.per_lambda:
    print(f"  lambda = {r.lam:.0f}")
    print(f"    delay-free RHP roots : {r.n0}")
    for e in r.events:
        print(
            f"    crossing at s = {e.omega:+.4f}i when h = {e.h:.6f} "
            f"(direction {e.direction:+d})"
        )
    print(f"    stable windows       : {[tuple(round(v, 6) for v in w) for w in r.windows]}")
    print(f"    margin               : {r.margin:.12f}")

print()
print(f"operator margin      : {report.margin:.12f}")
print(f"exact value pi/4     : {math.pi / 4:.12f}")
print(f"attained at lambda   : {report.minimizer:.0f}")
print(f"aggregate windows    : {[tuple(round(v, 6) for v in w) for w in report.aggregate_windows]}")
print()
print("every crossing direction is +1: once a root reaches the axis it keeps")
print("moving right, so the first crossing delay is the margin.")
