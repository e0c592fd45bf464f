"""Rational functions, vectors, and matrices over the complex field.

Minimal arithmetic for transfer-function style work: no GCD reduction is
attempted, degrees simply grow under + and *.  Values are immutable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import poly
from .poly import DEFAULT_TOL, Polynomial


@dataclass(frozen=True)
class RationalFunction:
    num: Polynomial
    den: Polynomial

    def __init__(self, num, den=(1.0,)):
        if not isinstance(num, Polynomial):
            num = Polynomial(num)
        if not isinstance(den, Polynomial):
            den = Polynomial(den)
        if den.is_zero:
            raise ZeroDivisionError("rational function with zero denominator")
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __call__(self, s: complex) -> complex:
        return self.num(s) / self.den(s)

    @property
    def decay_degree(self) -> float:
        """Order of decay at infinity: deg den - deg num (inf for the zero function)."""
        if self.num.is_zero:
            return math.inf
        return self.den.degree - self.num.degree

    def __mul__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(poly.mul(self.num, other.num), poly.mul(self.den, other.den))

    def __add__(self, other: "RationalFunction") -> "RationalFunction":
        n = poly.add(poly.mul(self.num, other.den), poly.mul(other.num, self.den))
        return RationalFunction(n, poly.mul(self.den, other.den))

    def scaled(self, a: complex) -> "RationalFunction":
        return RationalFunction(poly.scale(self.num, a), self.den)

    def poles(self, tol: float = DEFAULT_TOL) -> list[complex]:
        # Shared num/den factors are not cancelled; callers that build
        # functions by arithmetic should not rely on an exact pole set.
        if self.num.is_zero or self.den.degree < 1:
            return []
        return [r for r, _ in poly.roots(self.den, tol).roots]

    def limit_at_infinity(self) -> complex:
        """Value as |s| -> inf; raises for improper (growing) functions."""
        d = self.decay_degree
        if d == math.inf:
            return 0j
        if d < 0:
            raise ValueError("rational function is improper (grows at infinity)")
        if d > 0:
            return 0j
        return self.num.coeffs[-1] / self.den.coeffs[-1]

    @classmethod
    def zero(cls) -> "RationalFunction":
        return cls(Polynomial([]), Polynomial([1.0]))

    @classmethod
    def constant(cls, c: complex) -> "RationalFunction":
        return cls(Polynomial([c]), Polynomial([1.0]))


@dataclass(frozen=True)
class RationalVector:
    components: tuple[RationalFunction, ...]

    def __init__(self, components: Sequence[RationalFunction]):
        cs = tuple(components)
        if not cs:
            raise ValueError("vector must have at least one component")
        object.__setattr__(self, "components", cs)

    @property
    def dim(self) -> int:
        return len(self.components)

    def __call__(self, s: complex) -> np.ndarray:
        return np.array([f(s) for f in self.components], dtype=complex)

    def decay_degree(self) -> float:
        return min(f.decay_degree for f in self.components)

    def poles(self, tol: float = DEFAULT_TOL) -> list[complex]:
        out: list[complex] = []
        for f in self.components:
            out.extend(f.poles(tol))
        return out


@dataclass(frozen=True)
class RationalMatrix:
    rows: tuple[tuple[RationalFunction, ...], ...]

    def __init__(self, rows: Sequence[Sequence[RationalFunction]]):
        rs = tuple(tuple(row) for row in rows)
        if not rs or any(len(row) != len(rs[0]) for row in rs):
            raise ValueError("matrix rows must be nonempty and rectangular")
        object.__setattr__(self, "rows", rs)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.rows[0])

    def __call__(self, s: complex) -> np.ndarray:
        return np.array([[f(s) for f in row] for row in self.rows], dtype=complex)

    def matvec(self, v: RationalVector) -> RationalVector:
        n_rows, n_cols = self.shape
        if n_cols != v.dim:
            raise ValueError(f"shape mismatch: {self.shape} @ {v.dim}")
        out = []
        for row in self.rows:
            acc = RationalFunction.zero()
            for f, g in zip(row, v.components):
                acc = acc + (f * g)
            out.append(acc)
        return RationalVector(out)

    def poles(self, tol: float = DEFAULT_TOL) -> list[complex]:
        out: list[complex] = []
        for row in self.rows:
            for f in row:
                out.extend(f.poles(tol))
        return out

    def limit_at_infinity(self) -> np.ndarray:
        return np.array(
            [[f.limit_at_infinity() for f in row] for row in self.rows], dtype=complex
        )

    @classmethod
    def diagonal(cls, fs: Sequence[RationalFunction]) -> "RationalMatrix":
        n = len(fs)
        zero = RationalFunction.zero()
        return cls([[fs[i] if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def constant(cls, a) -> "RationalMatrix":
        a = np.atleast_2d(np.asarray(a, dtype=complex))
        return cls([[RationalFunction.constant(v) for v in row] for row in a])
