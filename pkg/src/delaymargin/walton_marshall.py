"""Delay sweep for a single spectrum point lambda.

For the retarded quasipolynomial P(s) + lambda*Q(s)*exp(-s*h) this module
finds the delay-free right-half-plane root count, all imaginary-axis crossing
frequencies and delays, the direction each root moves across the axis, and
the resulting stability windows in h.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import poly
from .errors import (
    DegenerateCrossingError,
    IdenticallyZeroError,
    RetardedAssumptionError,
)
from .poly import DEFAULT_TOL, Polynomial

STATUS_EXACT = "exact"
STATUS_DEGENERATE = "degenerate"


@dataclass(frozen=True)
class CrossingEvent:
    """One imaginary-axis crossing: root at s = i*omega when the delay is h.

    ``direction`` is the sign of Re ds/dh (+1 moves into the right half-plane
    as h grows); ``degenerate`` marks tangential or multiple crossings, where
    the simple-crossing bookkeeping stops being reliable.
    """

    lam: complex
    omega: float
    h: float
    direction: int
    degenerate: bool


@dataclass(frozen=True)
class LambdaStabilityResult:
    """Stability sweep summary for one lambda.

    ``windows`` are disjoint [a, b) intervals of h where the closed-RHP root
    count is zero (b may be inf); ``margin`` is the supremum of the window
    containing h = 0 (0.0 if none, inf when no crossing can ever occur).
    The margin may exceed the swept range when the first crossing delay lies
    beyond h_max; it is always computed from the exact delay formula.
    """

    lam: complex
    n0: int
    events: tuple[CrossingEvent, ...]
    windows: tuple[tuple[float, float], ...]
    margin: float
    status: str


def _require_retarded(p: Polynomial, q: Polynomial) -> None:
    if p.is_zero or p.degree <= q.degree:
        raise RetardedAssumptionError(
            f"retarded system requires deg P > deg Q (got {p.degree} <= {q.degree})"
        )


def _local_scale(p: Polynomial, x: float) -> float:
    acc = 0.0
    xk = 1.0
    for c in p.coeffs:
        acc += abs(c) * xk
        xk *= abs(x)
    return acc


def modulus_squared_on_axis(p: Polynomial) -> Polynomial:
    """Real polynomial g with g(omega) = |p(i*omega)|^2 for real omega."""
    if p.is_zero:
        return Polynomial([])
    a = np.array([c * (1j ** k) for k, c in enumerate(p.coeffs)], dtype=complex)
    full = np.convolve(a, np.conjugate(a))
    return Polynomial([c.real for c in full])


def crossing_frequencies(
    p: Polynomial, q: Polynomial, mod_lambda: float, tol: float = DEFAULT_TOL
) -> list[tuple[float, bool]]:
    """All real omega with |P(i*omega)| = mod_lambda * |Q(i*omega)|.

    Solves the real polynomial |P(iw)|^2 - mod_lambda^2 |Q(iw)|^2 = 0; both
    signs of omega are returned.  The flag marks omegas where P or Q vanish
    or the root is multiple (tangential candidates).
    """
    if mod_lambda < 0:
        raise ValueError("mod_lambda must be nonnegative")
    gp = modulus_squared_on_axis(p)
    gq = modulus_squared_on_axis(q)
    f = poly.add(gp, poly.scale(gq, -mod_lambda * mod_lambda))
    scale = max(
        [abs(c) for c in gp.coeffs] + [mod_lambda * mod_lambda * abs(c) for c in gq.coeffs],
        default=0.0,
    )
    if f.is_zero or all(abs(c) <= 1e3 * np.finfo(float).eps * scale for c in f.coeffs):
        raise IdenticallyZeroError(
            "crossing polynomial vanishes identically: continuum of crossings"
        )
    out = []
    for w, mult in poly.real_roots(f, tol):
        pv = abs(p(1j * w))
        qv = abs(q(1j * w))
        flag = (
            mult > 1
            or pv <= tol * max(1.0, _local_scale(p, w))
            or qv <= tol * max(1.0, _local_scale(q, w))
        )
        out.append((w, flag))
    return out


def first_crossing_delay(
    p: Polynomial, q: Polynomial, lam: complex, omega: float, tol: float = DEFAULT_TOL
) -> float:
    """Smallest h >= 0 with a root at i*omega: start of the delay progression."""
    if omega == 0:
        raise DegenerateCrossingError("omega must be nonzero")
    if lam == 0:
        raise DegenerateCrossingError("lambda must be nonzero")
    pv = p(1j * omega)
    qv = q(1j * omega)
    if abs(qv) <= tol * max(1.0, _local_scale(q, omega)):
        raise DegenerateCrossingError(f"Q(i*omega) vanishes at omega={omega}")
    mism = abs(abs(pv) - abs(lam) * abs(qv))
    if mism > tol * (1.0 + abs(pv) + abs(lam) * abs(qv)):
        raise DegenerateCrossingError(
            f"|P| != |lambda||Q| at omega={omega} (mismatch {mism:.3g})"
        )
    zeta = -pv / (lam * qv)
    zeta /= abs(zeta)
    theta = cmath.phase(zeta)
    period = 2 * math.pi / abs(omega)
    return (-theta / omega) % period


def crossing_delays(
    p: Polynomial,
    q: Polynomial,
    lam: complex,
    omega: float,
    h_max: float,
    tol: float = DEFAULT_TOL,
) -> list[float]:
    """All h in [0, h_max] with exp(-i*omega*h) = -P(i*omega)/(lambda*Q(i*omega)).

    The solutions form the arithmetic progression h0 + 2*pi*k/|omega|.
    """
    h0 = first_crossing_delay(p, q, lam, omega, tol)
    period = 2 * math.pi / abs(omega)
    out = []
    h = h0
    while h <= h_max * (1 + 1e-12) + 1e-300:
        out.append(h)
        h += period
    return out


def crossing_direction(
    p: Polynomial, q: Polynomial, omega: float, tol: float = DEFAULT_TOL
) -> int:
    """Sign of Re ds/dh at a crossing through i*omega.

    Evaluates sgn Re (1/s)[Q'(s)/Q(s) - P'(s)/P(s)] at s = i*omega; the value
    does not depend on lambda or on which delay in the progression is taken,
    so one evaluation per omega suffices.  Returns 0 (tangential) when the
    magnitude falls below tol.
    """
    s = 1j * omega
    pv = p(s)
    qv = q(s)
    if abs(pv) <= tol * max(1.0, _local_scale(p, omega)) or abs(qv) <= tol * max(
        1.0, _local_scale(q, omega)
    ):
        raise DegenerateCrossingError(f"P or Q vanishes at omega={omega}")
    val = ((poly.derivative(q)(s) / qv - poly.derivative(p)(s) / pv) / s).real
    if abs(val) <= tol:
        return 0
    return 1 if val > 0 else -1


def _h0_count(p: Polynomial, q: Polynomial, lam: complex, tol: float) -> tuple[int, bool]:
    charpoly = poly.add(p, poly.scale(q, lam)) if not q.is_zero and lam != 0 else p
    n = 0
    boundary = False
    for r, m in poly.roots(charpoly, tol).roots:
        if r.real >= -tol:
            n += m
        if abs(r.real) <= tol * (1.0 + abs(r)):
            boundary = True
    return n, boundary


def h0_rhp_count(p: Polynomial, q: Polynomial, lam: complex, tol: float = DEFAULT_TOL) -> int:
    """Closed right-half-plane root count of P + lambda*Q (the h = 0 system).

    Roots with Re s >= -tol are counted; roots inside the tolerance band of
    the axis additionally mark the result as degenerate downstream.
    """
    _require_retarded(p, q)
    return _h0_count(p, q, lam, tol)[0]


def _persistent_boundary_result(lam: complex, n0: int) -> LambdaStabilityResult:
    # An h-independent boundary root: never strictly stable, no windows.
    return LambdaStabilityResult(lam, n0, (), (), 0.0, STATUS_DEGENERATE)


def analyze_lambda(
    p: Polynomial,
    q: Polynomial,
    lam: complex,
    h_max: float,
    tol: float = DEFAULT_TOL,
) -> LambdaStabilityResult:
    """Full delay sweep for one lambda over h in [0, h_max].

    The closed-RHP root count starts from the h = 0 polynomial and changes by
    the crossing direction at each event delay.  Crossing frequencies are
    h-independent, so "no crossing frequencies and stable at h=0" certifies
    stability for every h >= 0 (margin = inf).  On the first degenerate event
    (tangential or multiple crossing) the windows are truncated: stability up
    to that delay is still certified, beyond it nothing is claimed.
    """
    _require_retarded(p, q)
    if h_max <= 0:
        raise ValueError("h_max must be positive")
    lam = complex(lam)

    if q.is_zero or lam == 0:
        n0, boundary = _h0_count(p, q, lam, tol)
        status = STATUS_DEGENERATE if boundary else STATUS_EXACT
        if n0 == 0:
            return LambdaStabilityResult(lam, 0, (), ((0.0, math.inf),), math.inf, status)
        return LambdaStabilityResult(lam, n0, (), (), 0.0, status)

    n0, boundary = _h0_count(p, q, lam, tol)
    degenerate = boundary

    try:
        freqs = crossing_frequencies(p, q, abs(lam), tol)
    except IdenticallyZeroError:
        return LambdaStabilityResult(lam, n0, (), (), 0.0, STATUS_DEGENERATE)

    events: list[CrossingEvent] = []
    first_delays: list[float] = []
    for w, multflag in freqs:
        if abs(w) <= tol * (1.0 + _local_scale(p, 1.0)):
            # a root at omega = 0 crosses for some h only if it is h-independent
            v0 = p(0) + lam * q(0)
            if abs(v0) <= tol * max(1.0, _local_scale(p, 0.0) + abs(lam) * _local_scale(q, 0.0)):
                return _persistent_boundary_result(lam, n0)
            continue
        pv = abs(p(1j * w))
        qv = abs(q(1j * w))
        if qv <= tol * max(1.0, _local_scale(q, w)):
            if pv <= tol * max(1.0, _local_scale(p, w)):
                # common imaginary-axis zero of P and Q: root for every h
                return _persistent_boundary_result(lam, n0)
            degenerate = True  # spurious root of the crossing polynomial
            continue
        try:
            direction = crossing_direction(p, q, w, tol)
        except DegenerateCrossingError:
            direction = 0
        h0 = first_crossing_delay(p, q, lam, w, tol)
        first_delays.append(h0)
        period = 2 * math.pi / abs(w)
        h = h0
        while h <= h_max * (1 + 1e-12) + 1e-300:
            events.append(CrossingEvent(lam, w, h, direction, multflag or direction == 0))
            h += period

    events.sort(key=lambda e: (e.h, e.omega))

    windows: list[tuple[float, float]] = []
    count = n0
    t = 0.0
    truncated = False
    i = 0
    while i < len(events):
        h_i = events[i].h
        j = i
        while j < len(events) and events[j].h <= h_i + 100 * tol * (1.0 + h_i):
            j += 1
        group = events[i:j]
        if count == 0 and h_i > t:
            windows.append((t, h_i))
        if any(e.degenerate for e in group):
            degenerate = truncated = True
            break
        count += sum(e.direction for e in group)
        if count < 0:
            # bookkeeping violated: event enumeration and n0 are inconsistent
            degenerate = truncated = True
            break
        t = h_i
        i = j

    if not truncated and count == 0:
        end = math.inf if not first_delays else h_max
        if end > t:
            windows.append((t, end))

    if n0 > 0 or not windows or windows[0][0] > 0.0:
        margin = 0.0
    else:
        margin = windows[0][1]
        if margin == h_max and first_delays and not truncated:
            # the sweep saw no event; the exact first crossing may lie beyond
            margin = min(first_delays)

    status = STATUS_DEGENERATE if degenerate else STATUS_EXACT
    return LambdaStabilityResult(lam, n0, tuple(events), tuple(windows), margin, status)
