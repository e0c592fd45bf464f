"""Complex polynomial arithmetic, evaluation, and reliable root finding.

Coefficients are stored in ascending degree order: ``coeffs[k]`` multiplies
``s**k``.  All operations are pure functions over immutable values.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import NonConvergenceError, ZeroPolynomialError

DEFAULT_TOL = 1e-9
POLISH_ITER_CAP = 200
# Greedy multiplicity clustering radius (scale-aware): CLUSTER_FACTOR*tol*(1+|r|).
CLUSTER_FACTOR = 1e3


@dataclass(frozen=True)
class Polynomial:
    """Polynomial over the complex numbers, ascending coefficient order.

    Exact trailing zeros are stripped on construction, so ``degree`` is the
    index of the highest nonzero coefficient (-1 for the zero polynomial).
    """

    coeffs: tuple[complex, ...]

    def __init__(self, coeffs: Sequence[complex]):
        cs = [complex(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, s: complex) -> complex:
        return evaluate(self, s)

    @classmethod
    def from_roots(cls, roots: Sequence[complex], lead: complex = 1.0) -> "Polynomial":
        cs = np.array([lead], dtype=complex)
        for r in roots:
            cs = np.convolve(cs, np.array([-r, 1.0], dtype=complex))
        return cls(cs.tolist())

    def __repr__(self) -> str:  # compact, ascending order
        return f"Polynomial({list(self.coeffs)!r})"


@dataclass(frozen=True)
class RootSet:
    """Roots with multiplicities plus the attained backward-error bound.

    ``roots`` is sorted by (real, imag); the multiplicity sum equals the
    polynomial degree.  For every reported root r, ``|p(r)|`` is at most
    ``residual_bound`` times the local evaluation scale of p near r.
    """

    roots: tuple[tuple[complex, int], ...]
    residual_bound: float

    def expanded(self) -> list[complex]:
        """Roots repeated according to multiplicity."""
        out: list[complex] = []
        for r, m in self.roots:
            out.extend([r] * m)
        return out


def evaluate(p: Polynomial, s: complex) -> complex:
    """Horner evaluation of p at s (exact for degree <= 0)."""
    acc = 0j
    for c in reversed(p.coeffs):
        acc = acc * s + c
    return acc


def derivative(p: Polynomial) -> Polynomial:
    """Coefficient-shifted derivative; the derivative of a constant is zero."""
    return Polynomial([k * c for k, c in enumerate(p.coeffs)][1:])


def add(p: Polynomial, q: Polynomial) -> Polynomial:
    n = max(len(p.coeffs), len(q.coeffs))
    cs = [0j] * n
    for k, c in enumerate(p.coeffs):
        cs[k] += c
    for k, c in enumerate(q.coeffs):
        cs[k] += c
    return Polynomial(cs)


def scale(p: Polynomial, a: complex) -> Polynomial:
    return Polynomial([a * c for c in p.coeffs])


def mul(p: Polynomial, q: Polynomial) -> Polynomial:
    if p.is_zero or q.is_zero:
        return Polynomial([])
    cs = np.convolve(np.array(p.coeffs, dtype=complex), np.array(q.coeffs, dtype=complex))
    return Polynomial(cs.tolist())


def _local_scale(coeffs: np.ndarray, r: complex) -> float:
    powers = np.abs(r) ** np.arange(len(coeffs))
    return float(np.abs(coeffs) @ powers)


def _backward_errors(coeffs: np.ndarray, rs: np.ndarray) -> np.ndarray:
    vals = np.polyval(coeffs[::-1], rs)
    scales = np.array([_local_scale(coeffs, r) for r in rs])
    floor = np.max(np.abs(coeffs)) * np.finfo(float).tiny
    return np.abs(vals) / np.maximum(scales, floor)


def _cluster(rs: np.ndarray, tol: float) -> list[tuple[complex, int]]:
    # Single-linkage clustering at radius CLUSTER_FACTOR*tol*(1+|r|).
    n = len(rs)
    parent = list(range(n))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            radius = CLUSTER_FACTOR * tol * (1.0 + min(abs(rs[i]), abs(rs[j])))
            if abs(rs[i] - rs[j]) <= radius:
                parent[find(i)] = find(j)

    groups: dict[int, list[complex]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(complex(rs[i]))
    clusters = [(sum(g) / len(g), len(g)) for g in groups.values()]
    clusters.sort(key=lambda rm: (rm[0].real, rm[0].imag))
    return clusters


def roots(p: Polynomial, tol: float = DEFAULT_TOL, max_iter: int = POLISH_ITER_CAP) -> RootSet:
    """All complex roots with multiplicities, meeting a backward-error contract.

    Uses balanced companion-matrix eigenvalues, with Newton polishing when the
    per-root relative backward error exceeds ``tol`` (coefficients are
    max-normalized first, so the contract is scale free).  Nearby roots are
    merged into multiplicity clusters reporting their centroid.

    Raises ``ZeroPolynomialError`` for the zero polynomial and
    ``NonConvergenceError`` if the residual contract is still unmet after
    ``max_iter`` polish iterations.
    """
    if p.is_zero:
        raise ZeroPolynomialError("cannot compute roots of the zero polynomial")
    if tol <= 0:
        raise ValueError("tol must be positive")
    if p.degree == 0:
        return RootSet((), 0.0)

    coeffs = np.array(p.coeffs, dtype=complex)
    coeffs = coeffs / np.max(np.abs(coeffs))
    rs = np.roots(coeffs[::-1])

    dcoeffs = np.polyder(coeffs[::-1])
    it = 0
    errs = _backward_errors(coeffs, rs)
    while np.max(errs) > tol:
        if it >= max_iter:
            raise NonConvergenceError(
                f"root residual {np.max(errs):.3g} above tol={tol:.3g} after {max_iter} polish steps"
            )
        bad = errs > tol
        vals = np.polyval(coeffs[::-1], rs[bad])
        ders = np.polyval(dcoeffs, rs[bad])
        steps = np.where(ders != 0, vals / np.where(ders == 0, 1, ders), 0)
        rs[bad] = rs[bad] - steps
        errs = _backward_errors(coeffs, rs)
        it += 1

    clusters = _cluster(rs, tol)
    centroid_errs = _backward_errors(coeffs, np.array([c for c, _ in clusters]))
    residual = float(np.max(centroid_errs)) if len(centroid_errs) else 0.0
    if residual > tol:
        raise NonConvergenceError(
            f"clustered root residual {residual:.3g} violates tol={tol:.3g}"
        )
    return RootSet(tuple(clusters), residual)


def real_roots(p: Polynomial, tol: float = DEFAULT_TOL) -> list[tuple[float, int]]:
    """Real roots (with multiplicity) of a real-coefficient polynomial, ascending.

    Coefficients must be real to within ``tol`` (scale-aware).  Roots with
    ``|Im r| <= tol*(1+|r|)`` are snapped to the real axis; all others are
    dropped.
    """
    for c in p.coeffs:
        if abs(c.imag) > tol * (1.0 + abs(c)):
            raise ValueError(f"coefficient {c} is not real to within tol={tol}")
    preal = Polynomial([c.real for c in p.coeffs])
    if preal.is_zero:
        raise ZeroPolynomialError("cannot compute roots of the zero polynomial")
    if preal.degree == 0:
        return []
    out = []
    for r, m in roots(preal, tol).roots:
        if abs(r.imag) <= tol * (1.0 + abs(r)):
            out.append((r.real, m))
    out.sort(key=lambda rm: rm[0])
    return out
