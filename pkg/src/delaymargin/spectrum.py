"""Spectrum descriptors for the operator coefficient and candidate extraction.

The operator enters the analysis only through its spectrum (plus a norm
bound), so infinite-dimensional operators are described by a small closed
algebra of descriptors: finite point sets, matrices (via eigenvalues),
circles, disks, annuli, and unions of these.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence, Union as _U

import numpy as np

from .errors import NonConvergenceError, UnsupportedDescriptorError
from .poly import DEFAULT_TOL

# Default angular resolution: samples per full circle when discretizing arcs.
ARC_SAMPLES_DEFAULT = 720


@dataclass(frozen=True)
class ComplexMatrix:
    """Square complex matrix, row-major immutable storage."""

    entries: tuple[tuple[complex, ...], ...]

    def __init__(self, entries: Sequence[Sequence[complex]]):
        rows = tuple(tuple(complex(v) for v in row) for row in entries)
        if not rows or any(len(row) != len(rows) for row in rows):
            raise ValueError("matrix must be square with n >= 1")
        for row in rows:
            for v in row:
                if not (math.isfinite(v.real) and math.isfinite(v.imag)):
                    raise ValueError("matrix entries must be finite")
        object.__setattr__(self, "entries", rows)

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def array(self) -> np.ndarray:
        return np.array(self.entries, dtype=complex)


@dataclass(frozen=True)
class Points:
    values: tuple[complex, ...]

    def __init__(self, values: Sequence[complex]):
        object.__setattr__(self, "values", tuple(complex(v) for v in values))


@dataclass(frozen=True)
class MatrixSpectrum:
    matrix: ComplexMatrix

    def __init__(self, matrix):
        if not isinstance(matrix, ComplexMatrix):
            matrix = ComplexMatrix(matrix)
        object.__setattr__(self, "matrix", matrix)


@dataclass(frozen=True)
class Disk:
    center: complex
    radius: float

    def __post_init__(self):
        if self.radius < 0:
            raise ValueError("radius must be nonnegative")


@dataclass(frozen=True)
class Circle:
    center: complex
    radius: float

    def __post_init__(self):
        if self.radius < 0:
            raise ValueError("radius must be nonnegative")


@dataclass(frozen=True)
class Annulus:
    center: complex
    r_inner: float
    r_outer: float

    def __post_init__(self):
        if not 0 <= self.r_inner <= self.r_outer:
            raise ValueError("need 0 <= r_inner <= r_outer")


@dataclass(frozen=True)
class Union:
    members: tuple["SpectrumDescriptor", ...]

    def __init__(self, members: Sequence["SpectrumDescriptor"]):
        ms = tuple(members)
        if not ms:
            raise ValueError("union must be nonempty")
        object.__setattr__(self, "members", ms)


SpectrumDescriptor = _U[Points, MatrixSpectrum, Disk, Circle, Annulus, Union]


@dataclass(frozen=True)
class ModulusRange:
    """Closed modulus interval(s) covered by a descriptor.

    ``intervals`` lists the disjoint modulus sub-intervals (possible gaps in a
    union); ``min_mod``/``max_mod`` form the interval hull.
    """

    min_mod: float
    max_mod: float
    intervals: tuple[tuple[float, float], ...]


def eigenvalues(m, tol: float = DEFAULT_TOL) -> list[complex]:
    """Eigenvalues of a square matrix, with multiplicity.

    Computed by unitary Hessenberg reduction plus shifted QR iteration
    (LAPACK); each returned value is certified to be an eigenvalue of a
    backward perturbation of size at most tol * ||m||.
    """
    if isinstance(m, ComplexMatrix):
        a = m.array
    else:
        a = np.atleast_2d(np.asarray(m, dtype=complex))
    if a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise ValueError("matrix must be square with n >= 1")
    vals = np.linalg.eigvals(a)
    scale = np.linalg.norm(a, 2)
    if scale > 0:
        for lam in vals:
            smin = np.linalg.svd(a - lam * np.eye(a.shape[0]), compute_uv=False)[-1]
            if smin > max(tol, 64 * np.finfo(float).eps) * scale:
                raise NonConvergenceError(
                    f"eigenvalue {lam} violates backward-error contract: "
                    f"sigma_min={smin:.3g} > {tol:.3g}*||m||"
                )
    return [complex(v) for v in vals]


def _merge_intervals(ivs: list[tuple[float, float]], tol: float = 0.0) -> list[tuple[float, float]]:
    ivs = sorted(ivs)
    out: list[tuple[float, float]] = []
    for lo, hi in ivs:
        if out and lo <= out[-1][1] + tol:
            out[-1] = (out[-1][0], max(out[-1][1], hi))
        else:
            out.append((lo, hi))
    return out


def _mod_intervals(d: SpectrumDescriptor) -> list[tuple[float, float]]:
    match d:
        case Points(values):
            return _merge_intervals([(abs(v), abs(v)) for v in values])
        case MatrixSpectrum(matrix):
            return _merge_intervals([(abs(v), abs(v)) for v in eigenvalues(matrix)])
        case Disk(center, radius):
            return [(max(0.0, abs(center) - radius), abs(center) + radius)]
        case Circle(center, radius):
            return [(abs(abs(center) - radius), abs(center) + radius)]
        case Annulus(center, r_inner, r_outer):
            c = abs(center)
            if c > r_outer:
                lo = c - r_outer
            elif c < r_inner:
                lo = r_inner - c
            else:
                lo = 0.0
            return [(lo, c + r_outer)]
        case Union(members):
            ivs: list[tuple[float, float]] = []
            for m in members:
                ivs.extend(_mod_intervals(m))
            return _merge_intervals(ivs)
    raise TypeError(f"not a spectrum descriptor: {d!r}")


def modulus_range(d: SpectrumDescriptor) -> ModulusRange:
    """Exact [min |z|, max |z|] over the descriptor, with union gaps recorded."""
    ivs = _mod_intervals(d)
    return ModulusRange(ivs[0][0], ivs[-1][1], tuple(ivs))


# --- circle intersections -------------------------------------------------

# Intersection pieces of the circle |z| = rho with a descriptor, expressed as
# ("point", z) or ("arc", phi_lo, phi_hi) on that circle.  A full circle is the
# arc (phi0, phi0 + 2*pi).


def _band_pieces(rho: float, center: complex, r_in: float, r_out: float, tol: float):
    """Circle |z|=rho intersected with the radial band r_in <= |z-c| <= r_out."""
    c = abs(center)
    phi0 = cmath.phase(center) if c > 0 else 0.0
    if rho == 0.0:
        if r_in - tol <= c <= r_out + tol:
            return [("point", 0j)]
        return []
    if c <= tol * (1.0 + rho):
        # concentric case
        if r_in - tol <= rho <= r_out + tol:
            return [("arc", phi0, phi0 + 2 * math.pi)]
        return []
    # Distance |z(phi)-center| grows with theta = |phi - phi0| from dmin to dmax.
    dmin, dmax = abs(rho - c), rho + c
    if dmin > r_out + tol or dmax < r_in - tol:
        return []
    if dmin > r_out:  # outer tangency, within tol
        return [("point", rho * cmath.exp(1j * phi0))]
    if dmax < r_in:  # inner tangency, within tol
        return [("point", rho * cmath.exp(1j * (phi0 + math.pi)))]

    def theta_at(r: float) -> float:
        u = (rho * rho + c * c - r * r) / (2 * rho * c)
        return math.acos(min(1.0, max(-1.0, u)))

    theta_out = math.pi if dmax <= r_out else theta_at(r_out)
    theta_in = 0.0 if dmin >= r_in else theta_at(r_in)
    if theta_out <= theta_in:
        # degenerate band (r_in == r_out): isolated intersection points
        if theta_out == 0.0:
            return [("point", rho * cmath.exp(1j * phi0))]
        if theta_out >= math.pi:
            return [("point", rho * cmath.exp(1j * (phi0 + math.pi)))]
        return [
            ("point", rho * cmath.exp(1j * (phi0 + theta_out))),
            ("point", rho * cmath.exp(1j * (phi0 - theta_out))),
        ]
    if theta_in == 0.0 and theta_out >= math.pi:
        return [("arc", phi0, phi0 + 2 * math.pi)]
    if theta_in == 0.0:
        return [("arc", phi0 - theta_out, phi0 + theta_out)]
    if theta_out >= math.pi:
        # arcs join through phi0 + pi
        return [("arc", phi0 + theta_in, phi0 + 2 * math.pi - theta_in)]
    return [
        ("arc", phi0 + theta_in, phi0 + theta_out),
        ("arc", phi0 - theta_out, phi0 - theta_in),
    ]


def _circle_pieces(d: SpectrumDescriptor, rho: float, tol: float):
    match d:
        case Points(values):
            return [("point", v) for v in values if abs(abs(v) - rho) <= tol]
        case MatrixSpectrum(matrix):
            return [("point", v) for v in eigenvalues(matrix) if abs(abs(v) - rho) <= tol]
        case Disk(center, radius):
            return _band_pieces(rho, center, 0.0, radius, tol)
        case Circle(center, radius):
            return _band_pieces(rho, center, radius, radius, tol)
        case Annulus(center, r_inner, r_outer):
            return _band_pieces(rho, center, r_inner, r_outer, tol)
        case Union(members):
            out = []
            for m in members:
                out.extend(_circle_pieces(m, rho, tol))
            return out
    raise TypeError(f"not a spectrum descriptor: {d!r}")


def candidates_for_modulus(
    d: SpectrumDescriptor,
    rho: float,
    tol: float = DEFAULT_TOL,
    arc_samples: int = ARC_SAMPLES_DEFAULT,
) -> list[complex]:
    """Finite sample of {z in d : |z| = rho}.

    Point-like descriptors contribute their members with ||z| - rho| <= tol;
    region descriptors contribute the intersection arcs of the circle
    |z| = rho, discretized at ``arc_samples`` points per full turn (endpoints
    included).  Returns an empty list when the intersection is empty.
    """
    if rho < 0:
        raise ValueError("rho must be nonnegative")
    pts: list[complex] = []
    for piece in _circle_pieces(d, rho, tol):
        if piece[0] == "point":
            pts.append(piece[1])
        else:
            _, lo, hi = piece
            span = hi - lo
            if span >= 2 * math.pi - 1e-12:
                n = max(arc_samples, 4)
                phis = lo + np.arange(n) * (2 * math.pi / n)
            else:
                n = max(2, int(math.ceil(arc_samples * span / (2 * math.pi))) + 1)
                phis = np.linspace(lo, hi, n)
            pts.extend(rho * np.exp(1j * phis))
    # dedupe within an absolute tolerance scaled to the circle
    eps = max(tol, 1e-12) * (1.0 + rho)
    out: list[complex] = []
    for z in sorted(pts, key=lambda w: (w.real, w.imag)):
        if not out or abs(z - out[-1]) > eps:
            out.append(z)
    return out


def arc_pieces(d: SpectrumDescriptor, rho: float, tol: float = DEFAULT_TOL):
    """Raw intersection pieces with the circle |z| = rho (points and arcs).

    Arcs are (phi_lo, phi_hi) angle intervals on the circle; used by the
    continuum margin optimizer, which needs interval structure rather than a
    flat sample.
    """
    points, arcs = [], []
    for piece in _circle_pieces(d, rho, tol):
        if piece[0] == "point":
            points.append(piece[1])
        else:
            arcs.append((piece[1], piece[2]))
    return points, arcs


# --- membership, distance, sampling ---------------------------------------


def distance_to_set(d: SpectrumDescriptor, z: complex) -> float:
    """Exact Euclidean distance from z to the descriptor set."""
    match d:
        case Points(values):
            return min(abs(z - v) for v in values)
        case MatrixSpectrum(matrix):
            return min(abs(z - v) for v in eigenvalues(matrix))
        case Disk(center, radius):
            return max(0.0, abs(z - center) - radius)
        case Circle(center, radius):
            return abs(abs(z - center) - radius)
        case Annulus(center, r_inner, r_outer):
            a = abs(z - center)
            return max(0.0, a - r_outer, r_inner - a)
        case Union(members):
            return min(distance_to_set(m, z) for m in members)
    raise TypeError(f"not a spectrum descriptor: {d!r}")


def contains(d: SpectrumDescriptor, z: complex, tol: float = DEFAULT_TOL) -> bool:
    return distance_to_set(d, z) <= tol


def sample_points(d: SpectrumDescriptor, n_per_curve: int = 256) -> list[complex]:
    """Representative points: all discrete members plus boundary circles.

    Region members are represented by their boundary circles (plus the disk
    center); used for stability prechecks at h = 0.
    """

    def circle_pts(c: complex, r: float) -> list[complex]:
        if r == 0:
            return [c]
        phis = np.linspace(0.0, 2 * math.pi, n_per_curve, endpoint=False)
        return list(c + r * np.exp(1j * phis))

    match d:
        case Points(values):
            return list(values)
        case MatrixSpectrum(matrix):
            return eigenvalues(matrix)
        case Disk(center, radius):
            return circle_pts(center, radius) + [center]
        case Circle(center, radius):
            return circle_pts(center, radius)
        case Annulus(center, r_inner, r_outer):
            return circle_pts(center, r_inner) + circle_pts(center, r_outer)
        case Union(members):
            out = []
            for m in members:
                out.extend(sample_points(m, n_per_curve))
            return out
    raise TypeError(f"not a spectrum descriptor: {d!r}")


def split_discrete_continuum(
    d: SpectrumDescriptor, tol: float = DEFAULT_TOL
) -> tuple[list[complex], list[SpectrumDescriptor]]:
    """Separate exactly-enumerable spectrum points from continuum members."""
    match d:
        case Points(values):
            return list(values), []
        case MatrixSpectrum(matrix):
            return eigenvalues(matrix, tol), []
        case Disk(center, radius) | Circle(center, radius):
            if radius == 0:
                return [center], []
            return [], [d]
        case Annulus(center, r_inner, r_outer):
            if r_outer == 0:
                return [center], []
            return [], [d]
        case Union(members):
            pts: list[complex] = []
            cont: list[SpectrumDescriptor] = []
            for m in members:
                p, c = split_discrete_continuum(m, tol)
                pts.extend(p)
                cont.extend(c)
            return pts, cont
    raise TypeError(f"not a spectrum descriptor: {d!r}")


# --- subnormal sandwich ----------------------------------------------------


def _radial_band(d: SpectrumDescriptor):
    """(center, r_in, r_out) view of a continuum member, None for points."""
    match d:
        case Disk(center, radius):
            return (center, 0.0, radius)
        case Circle(center, radius):
            return (center, radius, radius)
        case Annulus(center, r_inner, r_outer):
            return (center, r_inner, r_outer)
    return None


def _band_distance(b1, b2) -> float:
    (c1, i1, o1), (c2, i2, o2) = b1, b2
    dc = abs(c1 - c2)
    return max(0.0, dc - o1 - o2, i1 - (dc + o2), i2 - (dc + o1))


def _fill_member(d: SpectrumDescriptor) -> SpectrumDescriptor:
    match d:
        case Circle(center, radius):
            return Disk(center, radius)
        case Annulus(center, _r_inner, r_outer):
            return Disk(center, r_outer)
        case Points() | MatrixSpectrum() | Disk():
            return d
        case Union(members):
            return _fill_union(members)
    raise TypeError(f"not a spectrum descriptor: {d!r}")


def _fill_union(members) -> SpectrumDescriptor:
    filled = [_fill_member(m) for m in members]
    # After filling, every member is a disk or a point set.  A tree of
    # overlapping disks stays simply connected, so per-member filling is
    # complete; a cycle of touching disks can fence an extra hole that cannot
    # be derived structurally, so that case is rejected.
    disks = [(i, _radial_band(m)) for i, m in enumerate(filled) if _radial_band(m)]
    parent = {i: i for i, _ in disks}

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for a in range(len(disks)):
        for b in range(a + 1, len(disks)):
            ia, ba = disks[a]
            ib, bb = disks[b]
            if _band_distance(ba, bb) <= 0.0:
                ra, rb = find(ia), find(ib)
                if ra == rb:
                    raise UnsupportedDescriptorError(
                        "a cycle of touching regions may enclose holes that "
                        "cannot be derived structurally"
                    )
                parent[ra] = rb
    # drop disks contained in other disks
    keep = []
    for i, m in enumerate(filled):
        bi = _radial_band(m)
        contained = False
        if bi is not None:
            for j, mj in enumerate(filled):
                if i == j:
                    continue
                bj = _radial_band(mj)
                if bj is not None and abs(bi[0] - bj[0]) + bi[2] <= bj[2] and (i > j or bi != bj):
                    contained = True
                    break
        if not contained:
            keep.append(m)
    if len(keep) == 1:
        return keep[0]
    return Union(keep)


def subnormal_bounds(sigma_n: SpectrumDescriptor) -> tuple[SpectrumDescriptor, SpectrumDescriptor]:
    """Lower and upper spectrum bounds for a subnormal operator.

    Given the spectrum of the minimal normal extension, returns
    ``(sigma_n, sigma_n with bounded complement components filled)``.
    Filling is structural per member (a circle fills to its disk, an annulus
    to the full outer disk); see ``_fill_union`` for the union contract.
    """
    return sigma_n, _fill_member(sigma_n)
