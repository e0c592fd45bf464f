"""Operator-level stability verdicts and independent boundary-norm certification.

Aggregates per-lambda delay sweeps over a spectrum descriptor into a delay
margin, sandwiches subnormal spectra between their normal-extension bounds,
and cross-checks verdicts by sampling the boundary norm of
(P(s)I + Q(s)e^{-sh}A)^{-1} out to a certified tail radius.
"""

from __future__ import annotations

import cmath
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import poly, spectrum as spec
from .errors import RetardedAssumptionError, SingularOnGridError
from .poly import DEFAULT_TOL, Polynomial
from .spectrum import (
    ARC_SAMPLES_DEFAULT,
    MatrixSpectrum,
    SpectrumDescriptor,
    Union,
    modulus_range,
    subnormal_bounds,
)
from .walton_marshall import (
    LambdaStabilityResult,
    STATUS_DEGENERATE,
    _h0_count,
    analyze_lambda,
    first_crossing_delay,
    modulus_squared_on_axis,
)


def _as_real_poly(p) -> Polynomial:
    if not isinstance(p, Polynomial):
        p = Polynomial(p)
    for c in p.coeffs:
        if c.imag != 0:
            raise ValueError("system polynomials must have real coefficients")
    return p


@dataclass(frozen=True)
class DelaySystem:
    """Retarded operator delay system (P(s)I + Q(s)e^{-sh}A)^{-1}.

    The operator enters only through its spectrum descriptor and a norm bound.
    When ``norm_a`` is omitted it defaults to the matrix 2-norm for matrix
    spectra and to the largest modulus of the descriptor otherwise (exact for
    normal operators; supply a bound explicitly for anything else).
    ``subnormal=True`` declares that the descriptor is the spectrum of the
    minimal normal extension of a subnormal operator.
    """

    p: Polynomial
    q: Polynomial
    spectrum: SpectrumDescriptor
    norm_a: float | None = None
    h: float | None = None
    subnormal: bool = False

    def __init__(self, p, q, spectrum, norm_a=None, h=None, subnormal=False):
        p = _as_real_poly(p)
        q = _as_real_poly(q)
        if p.is_zero or p.degree <= q.degree:
            raise RetardedAssumptionError(
                f"retarded system requires deg P > deg Q (got {p.degree} <= {q.degree})"
            )
        max_mod = modulus_range(spectrum).max_mod
        if norm_a is None:
            if isinstance(spectrum, MatrixSpectrum):
                norm_a = float(np.linalg.norm(spectrum.matrix.array, 2))
            else:
                norm_a = max_mod
        if norm_a < max_mod * (1 - 1e-12):
            raise ValueError(f"norm_a={norm_a} is below the spectral radius bound {max_mod}")
        if h is not None and h < 0:
            raise ValueError("delay h must be nonnegative")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "spectrum", spectrum)
        object.__setattr__(self, "norm_a", float(norm_a))
        object.__setattr__(self, "h", h)
        object.__setattr__(self, "subnormal", bool(subnormal))


@dataclass(frozen=True)
class GridConfig:
    """Boundary-norm sampling configuration."""

    n_points: int = 1025
    tol: float = 1e-6
    max_rounds: int = 80
    singular_cap: float = 1e12


@dataclass(frozen=True)
class HinfCertificate:
    """Boundary-norm evidence for one delay value.

    ``tail_radius`` is a radius beyond which the norm is at most 1 on the
    closed right half-plane, so ``sup_estimate = max(1, grid maximum)``.
    ``method`` records whether the norm used the full matrix ("svd") or the
    normality reduction to spectrum distance ("normal-spectrum").
    """

    h: float
    grid: tuple[tuple[float, float], ...]
    tail_radius: float
    sup_estimate: float
    refined: bool
    method: str
    argmax_omega: float


@dataclass(frozen=True)
class StabilityReport:
    """Aggregate stability verdict over the whole spectrum."""

    per_lambda: tuple[LambdaStabilityResult, ...]
    aggregate_windows: tuple[tuple[float, float], ...]
    margin: float
    minimizer: complex | None
    bounds: tuple[float, float] | None = None
    certificate: HinfCertificate | None = None
    warnings: tuple[str, ...] = ()


# --- tail radius ------------------------------------------------------------


def tail_radius(sys: DelaySystem, h: float = 0.0) -> float:
    """Radius R with |P(s)| > |Q(s)|*norm_a + 1 for all |s| >= R, Re s >= 0.

    Uses the coefficient bounds |P(s)| >= |p_n||s|^n - sum |p_k||s|^k and
    |Q(s)| <= sum |q_k||s|^k together with |e^{-sh}| <= 1 on the closed right
    half-plane, and returns just beyond the largest real root of the bound
    polynomial (past which it is positive for good).
    """
    if h < 0:
        raise ValueError("h must be nonnegative")
    p, q = sys.p, sys.q
    n = p.degree
    cs = [0.0] * (n + 1)
    cs[n] = abs(p.coeffs[n])
    for k in range(n):
        cs[k] -= abs(p.coeffs[k])
    for k, c in enumerate(q.coeffs):
        cs[k] -= sys.norm_a * abs(c)
    cs[0] -= 1.0
    g = Polynomial(cs)
    largest = max((r for r, _ in poly.real_roots(g, 1e-13)), default=0.0)
    return max(1.0, largest * (1 + 1e-12) + 1e-12)


# --- boundary norm ----------------------------------------------------------


def _norm_evaluator(sys: DelaySystem, h: float):
    p, q = sys.p, sys.q
    if isinstance(sys.spectrum, MatrixSpectrum):
        a = sys.spectrum.matrix.array
        eye = np.eye(a.shape[0], dtype=complex)

        def norm_at(w: float) -> float:
            m = p(1j * w) * eye + q(1j * w) * cmath.exp(-1j * w * h) * a
            smin = np.linalg.svd(m, compute_uv=False)[-1]
            return math.inf if smin == 0 else 1.0 / smin

        return norm_at, "svd"

    d = sys.spectrum

    def norm_at(w: float) -> float:
        # For normal operators the resolvent norm is the reciprocal distance
        # from 0 to {P + lambda*Q*e : lambda in spectrum}, an affine image of
        # the descriptor, so the distance is exact rather than sampled.
        pv = p(1j * w)
        qe = q(1j * w) * cmath.exp(-1j * w * h)
        if abs(qe) == 0.0:
            return math.inf if pv == 0 else 1.0 / abs(pv)
        dist = abs(qe) * spec.distance_to_set(d, -pv / qe)
        return math.inf if dist == 0 else 1.0 / dist

    return norm_at, "normal-spectrum"


def hinf_boundary_norm(
    sys: DelaySystem, h: float, grid_cfg: GridConfig | None = None
) -> HinfCertificate:
    """Estimate sup over the closed right half-plane of the system norm at delay h.

    Samples the boundary s = i*omega on [-R, R] with R = tail_radius (beyond
    which the norm is at most 1), then adaptively bisects around local maxima
    until the estimate is Cauchy within ``grid_cfg.tol``.  Grids are nested,
    so the estimate is nondecreasing under refinement.

    Raises ``SingularOnGridError`` when a sample is numerically non-invertible
    (norm beyond ``singular_cap``): evidence of a crossing at this delay.
    """
    cfg = grid_cfg or GridConfig()
    radius = tail_radius(sys, h)
    norm_at, method = _norm_evaluator(sys, h)

    omegas = list(np.linspace(-radius, radius, cfg.n_points))
    norms = [norm_at(w) for w in omegas]

    def check_singular():
        i = int(np.argmax(norms))
        if not math.isfinite(norms[i]) or norms[i] >= cfg.singular_cap:
            raise SingularOnGridError(omegas[i], norms[i], h)

    check_singular()
    refined = False
    stalls = 0
    for _ in range(cfg.max_rounds):
        sup_prev = max(norms)
        # bisect around every local maximum still near the running supremum;
        # additionally take a secant step on 1/norm around the argmax, which
        # lands on a straddled boundary zero in a couple of rounds
        inserts: set[float] = set()
        for i in range(len(omegas)):
            left = norms[i - 1] if i > 0 else -math.inf
            right = norms[i + 1] if i + 1 < len(omegas) else -math.inf
            if norms[i] >= max(left, right) and norms[i] >= 0.5 * sup_prev:
                if i > 0:
                    inserts.add(0.5 * (omegas[i - 1] + omegas[i]))
                if i + 1 < len(omegas):
                    inserts.add(0.5 * (omegas[i] + omegas[i + 1]))
        i = int(np.argmax(norms))
        for j in (i - 1, i + 1):
            if 0 <= j < len(omegas) and math.isfinite(norms[j]) and norms[j] > 0:
                gi, gj = 1.0 / norms[i], 1.0 / norms[j]
                if gj != gi:
                    w = omegas[i] - gi * (omegas[j] - omegas[i]) / (gj - gi)
                    lo, hi = min(omegas[i], omegas[j]), max(omegas[i], omegas[j])
                    if lo < w < hi:
                        inserts.add(w)
        if 0 < i < len(omegas) - 1 and all(math.isfinite(norms[k]) for k in (i - 1, i, i + 1)):
            # parabolic vertex through the argmax triple: superlinear for
            # smooth peaks, harmless otherwise
            x0, x1, x2 = omegas[i - 1], omegas[i], omegas[i + 1]
            y0, y1, y2 = norms[i - 1], norms[i], norms[i + 1]
            denom = (x1 - x0) * (y1 - y2) - (x1 - x2) * (y1 - y0)
            if denom != 0:
                w = x1 - 0.5 * (
                    (x1 - x0) ** 2 * (y1 - y2) - (x1 - x2) ** 2 * (y1 - y0)
                ) / denom
                if x0 < w < x2:
                    inserts.add(w)
        inserts.difference_update(omegas)
        if not inserts:
            refined = True
            break
        for w in inserts:
            omegas.append(w)
            norms.append(norm_at(w))
        order = np.argsort(omegas)
        omegas = [omegas[k] for k in order]
        norms = [norms[k] for k in order]
        check_singular()
        sup_new = max(norms)
        if sup_new - sup_prev <= cfg.tol * max(1.0, sup_prev):
            stalls += 1
            if stalls >= 2:
                refined = True
                break
        else:
            stalls = 0

    # final drill around the argmax: golden section on 1/norm sharpens a
    # smooth peak and runs a straddled pole down to the singular cap
    i_max = int(np.argmax(norms))
    lo = omegas[i_max - 1] if i_max > 0 else omegas[i_max]
    hi = omegas[i_max + 1] if i_max + 1 < len(omegas) else omegas[i_max]
    if hi > lo:
        def recip(w: float) -> float:
            v = norm_at(w)
            return 0.0 if not math.isfinite(v) else 1.0 / v

        w_star, _ = _golden_min(recip, lo, hi, iters=200)
        v_star = norm_at(w_star)
        if not math.isfinite(v_star) or v_star >= cfg.singular_cap:
            raise SingularOnGridError(w_star, v_star, h)
        if v_star > norms[i_max]:
            omegas.append(w_star)
            norms.append(v_star)
            order = np.argsort(omegas)
            omegas = [omegas[k] for k in order]
            norms = [norms[k] for k in order]

    i_max = int(np.argmax(norms))
    sup = max(1.0, norms[i_max])
    grid = tuple(zip([float(w) for w in omegas], [float(v) for v in norms]))
    return HinfCertificate(h, grid, radius, sup, refined, method, float(omegas[i_max]))


# --- aggregate margin -------------------------------------------------------


def _dedupe_points(pts: Sequence[complex], tol: float) -> list[complex]:
    out: list[complex] = []
    for z in sorted(pts, key=lambda w: (w.real, w.imag)):
        if not out or abs(z - out[-1]) > tol * (1.0 + abs(z)):
            out.append(z)
    return out


def _merge_windows(ws: list[tuple[float, float]]) -> tuple[tuple[float, float], ...]:
    ws = sorted(ws)
    out: list[tuple[float, float]] = []
    for lo, hi in ws:
        if out and lo <= out[-1][1]:
            out[-1] = (out[-1][0], max(out[-1][1], hi))
        else:
            out.append((lo, hi))
    return tuple(out)


def _intersect_windows(window_sets: Sequence[Sequence[tuple[float, float]]]):
    if not window_sets:
        return ()
    acc = list(window_sets[0])
    for ws in window_sets[1:]:
        nxt = []
        for a1, b1 in acc:
            for a2, b2 in ws:
                lo, hi = max(a1, a2), min(b1, b2)
                if hi > lo:
                    nxt.append((lo, hi))
        acc = nxt
        if not acc:
            break
    return _merge_windows(acc)


def _aggregate_windows(results, margin: float):
    """Intersection of reported window sets (whole half-line when nothing
    restricts it)."""
    window_sets = [r.windows for r in results]
    if not window_sets:
        return ((0.0, math.inf),) if math.isinf(margin) else ()
    return _intersect_windows(window_sets)


def _golden_min(f, a: float, b: float, iters: int = 80):
    """Golden-section minimum of f on [a, b]; returns (x, f(x))."""
    invphi = (math.sqrt(5) - 1) / 2
    x1 = b - invphi * (b - a)
    x2 = a + invphi * (b - a)
    f1, f2 = f(x1), f(x2)
    fa, fb = f(a), f(b)
    for _ in range(iters):
        if b - a < 1e-14 * (1.0 + abs(a) + abs(b)):
            break
        if f1 <= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - invphi * (b - a)
            f1 = f(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + invphi * (b - a)
            f2 = f(x2)
    candidates = [(fa, a), (f1, x1), (f2, x2), (fb, b)]
    fv, xv = min(candidates)
    return xv, fv


def _admissible_omega_intervals(p: Polynomial, q: Polynomial, mrange, tol: float):
    """Closed omega-intervals where |P(iw)|/|Q(iw)| lies in the modulus set."""
    gp = modulus_squared_on_axis(p)
    gq = modulus_squared_on_axis(q)
    bps: set[float] = set()
    for lo, hi in mrange.intervals:
        for m in (lo, hi):
            f = poly.add(gp, poly.scale(gq, -m * m))
            if not f.is_zero and f.degree >= 1:
                bps.update(w for w, _ in poly.real_roots(f, tol))
    if gq.degree >= 1:
        bps.update(w for w, _ in poly.real_roots(gq, tol))
    breaks = sorted(bps)
    if not breaks:
        return []

    def admissible(w: float) -> bool:
        qq = gq(w).real
        if qq <= 0:
            return False
        rho2 = gp(w).real / qq
        return any(lo * lo <= rho2 <= hi * hi for lo, hi in mrange.intervals)

    intervals = []
    for a, b in zip(breaks, breaks[1:]):
        if b - a > 1e-14 and admissible(0.5 * (a + b)):
            intervals.append((a, b))
    # merge adjacent intervals sharing an endpoint
    merged: list[tuple[float, float]] = []
    for iv in intervals:
        if merged and abs(iv[0] - merged[-1][1]) < 1e-14:
            merged[-1] = (merged[-1][0], iv[1])
        else:
            merged.append(iv)
    return merged


def _safe_delay(p: Polynomial, q: Polynomial, lam: complex, w: float, tol: float) -> float:
    try:
        return first_crossing_delay(p, q, lam, w, max(tol * 1e3, 1e-6))
    except Exception:
        return math.inf


def _continuum_min_delay(
    p: Polynomial,
    q: Polynomial,
    d: SpectrumDescriptor,
    tol: float,
    omega_grid: int,
):
    """Minimize the first crossing delay over lambda in a continuum descriptor.

    Two-level refinement: an omega grid over the admissible crossing band,
    with the inner minimization taken over the intersection arcs of the
    candidate circle (the first delay is linear in the arc angle, so arc
    minima sit at endpoints unless the stability precheck was violated);
    the outer level is polished by golden-section around the best grid point.
    Returns (h, lambda, omega), with h = inf when no crossing is possible.
    """
    mrange = modulus_range(d)
    intervals = _admissible_omega_intervals(p, q, mrange, tol)
    if not intervals:
        return math.inf, None, None

    best = (math.inf, None, None)

    def eval_omega(w: float):
        if abs(w) <= 1e2 * tol:
            return math.inf, None
        qv = abs(q(1j * w))
        if qv == 0.0:
            return math.inf, None
        rho = abs(p(1j * w)) / qv
        points, arcs = spec.arc_pieces(d, rho, max(tol, 1e-12) * (1.0 + rho))
        local = (math.inf, None)

        def try_lambda(lam: complex):
            nonlocal local
            if lam == 0:
                return
            try:
                h0 = first_crossing_delay(p, q, lam, w, max(tol * 1e3, 1e-6))
            except Exception:
                return
            if h0 < local[0]:
                local = (h0, lam)

        for z in points:
            try_lambda(z)
        for lo, hi in arcs:
            # endpoints carry the arc minimum for a wrap-free arc; interior
            # samples detect a wrap (possible only if h=0 stability fails)
            phis = np.linspace(lo, hi, 9)
            vals = [_safe_delay(p, q, rho * cmath.exp(1j * phi), w, tol) for phi in phis]
            k = int(np.argmin(vals))
            if 0 < k < len(phis) - 1 and vals[k] < min(vals[0], vals[-1]) - 1e-12:
                phi_star, _ = _golden_min(
                    lambda t: _safe_delay(p, q, rho * cmath.exp(1j * t), w, tol),
                    phis[max(0, k - 1)],
                    phis[min(len(phis) - 1, k + 1)],
                )
                try_lambda(rho * cmath.exp(1j * phi_star))
            else:
                try_lambda(rho * cmath.exp(1j * phis[k]))
        return local

    for a, b in intervals:
        n = max(9, omega_grid)
        ws = np.linspace(a, b, n)
        vals = []
        lams = []
        for w in ws:
            hv, lam = eval_omega(w)
            vals.append(hv)
            lams.append(lam)
        k = int(np.argmin(vals))
        if not math.isfinite(vals[k]):
            continue
        if vals[k] < best[0]:
            best = (vals[k], lams[k], float(ws[k]))
        lo = float(ws[max(0, k - 1)])
        hi = float(ws[min(n - 1, k + 1)])
        w_star, h_star = _golden_min(lambda w: eval_omega(w)[0], lo, hi)
        if h_star < best[0]:
            _, lam_star = eval_omega(w_star)
            best = (h_star, lam_star, w_star)
    return best


def _margin_over(
    p: Polynomial,
    q: Polynomial,
    d: SpectrumDescriptor,
    h_max: float,
    tol: float,
    omega_grid: int,
    precheck_samples: int,
    max_workers: int | None,
):
    """Per-lambda sweeps plus continuum minimization over one descriptor."""
    warnings: list[str] = []
    pts, cont = spec.split_discrete_continuum(d, tol)
    pts = _dedupe_points(pts, tol)

    if max_workers and max_workers > 1 and len(pts) > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as ex:
            results = list(ex.map(lambda z: analyze_lambda(p, q, z, h_max, tol), pts))
    else:
        results = [analyze_lambda(p, q, z, h_max, tol) for z in pts]

    margin = math.inf
    minimizer: complex | None = None
    for r in results:
        if r.status == STATUS_DEGENERATE:
            warnings.append(f"degenerate analysis at lambda={r.lam}")
        if r.margin < margin:
            margin, minimizer = r.margin, r.lam

    if cont:
        cd = cont[0] if len(cont) == 1 else Union(cont)
        unstable = None
        for lam in spec.sample_points(cd, precheck_samples):
            n0, _ = _h0_count(p, q, lam, tol)
            if n0 > 0:
                unstable = lam
                break
        if unstable is not None:
            warnings.append(f"unstable at h=0 for lambda={unstable} in the spectrum")
            r = analyze_lambda(p, q, unstable, h_max, tol)
            results.append(r)
            if r.margin < margin:
                margin, minimizer = r.margin, r.lam
        else:
            h_star, lam_star, _w = _continuum_min_delay(p, q, cd, tol, omega_grid)
            if lam_star is not None and math.isfinite(h_star):
                r = analyze_lambda(p, q, lam_star, h_max, tol)
                results.append(r)
                if r.status == STATUS_DEGENERATE:
                    warnings.append(f"degenerate analysis at lambda={r.lam}")
                if r.margin < margin:
                    margin, minimizer = r.margin, r.lam
            warnings.append(
                "continuum spectrum: windows beyond the margin are per-sample only"
            )

    return results, margin, minimizer, warnings


def operator_margin(
    sys: DelaySystem,
    h_max: float,
    tol: float = DEFAULT_TOL,
    omega_grid: int = 257,
    precheck_samples: int = 256,
    max_workers: int | None = None,
) -> StabilityReport:
    """Delay margin of the operator system over its whole spectrum.

    Matrix and point spectra run one exact sweep per eigenvalue; continuum
    descriptors additionally minimize the first crossing delay over the
    candidate arcs with two-level (omega grid + golden section) refinement.
    For ``subnormal`` systems the spectrum is sandwiched between the normal
    extension's spectrum and its hole-filled version, and ``bounds`` carries
    (certified margin, necessary-condition margin).
    """
    p, q = sys.p, sys.q
    if sys.subnormal:
        lower_set, upper_set = subnormal_bounds(sys.spectrum)
        res_u, margin_u, min_u, warn_u = _margin_over(
            p, q, upper_set, h_max, tol, omega_grid, precheck_samples, max_workers
        )
        res_l, margin_l, _min_l, warn_l = _margin_over(
            p, q, lower_set, h_max, tol, omega_grid, precheck_samples, max_workers
        )
        per = tuple(res_u) + tuple(res_l)
        agg = _aggregate_windows(res_u, margin_u)
        warnings = list(dict.fromkeys(warn_u + warn_l))
        warnings.append(
            "subnormal sandwich: margin certified over the hole-filled spectrum; "
            "the second bound uses only the normal extension's spectrum"
        )
        return StabilityReport(
            per_lambda=per,
            aggregate_windows=agg,
            margin=margin_u,
            minimizer=min_u,
            bounds=(margin_u, margin_l),
            warnings=tuple(warnings),
        )

    results, margin, minimizer, warnings = _margin_over(
        p, q, sys.spectrum, h_max, tol, omega_grid, precheck_samples, max_workers
    )
    agg = _aggregate_windows(results, margin)
    return StabilityReport(
        per_lambda=tuple(results),
        aggregate_windows=agg,
        margin=margin,
        minimizer=minimizer,
        warnings=tuple(warnings),
    )


# --- demonstrations ---------------------------------------------------------


def neutral_demo(n_max: int) -> list[tuple[complex, float]]:
    """Boundary blow-up of the neutral system 1/(s + 1 + s*e^{-s}).

    This system has no poles in the closed right half-plane, yet sampling at
    s_n = i[(2n+1)pi + 1/((2n+1)pi)] shows the boundary values growing without
    bound: pole freeness does not give a bounded inverse for neutral systems.
    """
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    out = []
    for n in range(1, n_max + 1):
        y = (2 * n + 1) * math.pi + 1.0 / ((2 * n + 1) * math.pi)
        s = 1j * y
        g = 1.0 / (s + 1 + s * cmath.exp(-s))
        out.append((s, abs(g)))
    return out


def unbounded_a_demo(n_trunc: int, grid_points: int = 512) -> list[tuple[int, float]]:
    """Boundary-norm growth for diagonal truncations of an unbounded operator.

    The diagonal entries are k*i + 1/k; truncation n has resolvent boundary
    sup equal to n (attained at omega = -n), so the sups grow without bound
    and no uniform half-plane bound survives the limit.
    """
    if n_trunc < 1:
        raise ValueError("n_trunc must be at least 1")
    out = []
    for n in range(1, n_trunc + 1):
        ks = np.arange(1, n + 1)
        lams = 1j * ks + 1.0 / ks
        omegas = np.concatenate(
            [-ks.astype(float), np.linspace(-(n + 2.0), 2.0, grid_points)]
        )
        dists = np.abs(1j * omegas[:, None] + lams[None, :])
        sup = float(np.max(1.0 / np.min(dists, axis=1)))
        out.append((n, sup))
    return out
