import cmath
import math

import numpy as np
import pytest

import oracles
from delaymargin import (
    Circle,
    DelaySystem,
    Disk,
    GridConfig,
    MatrixSpectrum,
    Points,
    Polynomial,
    RetardedAssumptionError,
    SingularOnGridError,
    Union,
    hinf_boundary_norm,
    neutral_demo,
    operator_margin,
    tail_radius,
    unbounded_a_demo,
)

P_S = Polynomial([0, 1])
P_S1 = Polynomial([1, 1])
Q_1 = Polynomial([1])

TRIANGULAR = MatrixSpectrum([[1, 0, 0], [0, 2, 1], [0, 0, 2]])
NORMAL_2X2 = MatrixSpectrum([[1, -1], [1, 1]])


class TestDelaySystem:
    def test_rejects_neutral(self):
        with pytest.raises(RetardedAssumptionError):
            DelaySystem(P_S, Polynomial([0, 1]), Points([1.0]))

    def test_norm_default_matrix(self):
        sys = DelaySystem(P_S, Q_1, TRIANGULAR)
        a = TRIANGULAR.matrix.array
        assert abs(sys.norm_a - np.linalg.norm(a, 2)) < 1e-12

    def test_norm_default_descriptor(self):
        sys = DelaySystem(P_S1, Q_1, Disk(1.0, 1.0))
        assert sys.norm_a == 2.0

    def test_norm_below_spectral_radius_rejected(self):
        with pytest.raises(ValueError):
            DelaySystem(P_S1, Q_1, Disk(1.0, 1.0), norm_a=1.5)

    def test_rejects_complex_coefficients(self):
        with pytest.raises(ValueError):
            DelaySystem(Polynomial([1j, 1]), Q_1, Points([1.0]))


class TestTailRadius:
    def test_plain_integrator(self):
        sys = DelaySystem(P_S, Q_1, Points([2.0]))
        r = tail_radius(sys, 0.5)
        assert r > 3.0 - 1e-9
        assert r < 3.0 + 1e-6

    def test_affine(self):
        sys = DelaySystem(P_S1, Q_1, Points([2.0]))
        r = tail_radius(sys, 0.0)
        assert r <= 4.0 + 1e-6
        # validity at |s| = 4 on the axis: |s+1| >= |s|-1 = 3 > 2*1 + ...
        assert abs(4j + 1) > 3.0 - 1e-12

    def test_quadratic(self):
        sys = DelaySystem(Polynomial([0, 0, 1]), Q_1, Points([1.0]))
        r = tail_radius(sys)
        assert r > math.sqrt(2) - 1e-9

    def test_validity_random_samples(self):
        # 1000 random boundary points at |s| = R with Re s >= 0: the norm of
        # the matrix system is at most 1 out there
        rng = np.random.default_rng(17)
        sys = DelaySystem(P_S, Q_1, TRIANGULAR)
        h = 0.37
        radius = tail_radius(sys, h)
        a = TRIANGULAR.matrix.array
        eye = np.eye(3)
        for _ in range(1000):
            phi = rng.uniform(-math.pi / 2, math.pi / 2)
            s = radius * cmath.exp(1j * phi)
            m = P_S(s) * eye + Q_1(s) * cmath.exp(-s * h) * a
            smin = np.linalg.svd(m, compute_uv=False)[-1]
            assert 1.0 / smin <= 1.0 + 1e-9


class TestBoundaryNorm:
    def test_scalar_h0(self):
        sys = DelaySystem(P_S, Q_1, MatrixSpectrum([[1.0]]))
        cert = hinf_boundary_norm(sys, 0.0)
        assert abs(cert.sup_estimate - 1.0) < 1e-6
        assert cert.method == "svd"

    def test_points_at_margin_singular(self):
        sys = DelaySystem(P_S, Q_1, Points([2.0]))
        with pytest.raises(SingularOnGridError) as info:
            hinf_boundary_norm(sys, math.pi / 4)
        assert abs(abs(info.value.omega) - 2.0) < 1e-6

    def test_points_inside_window_finite(self):
        sys = DelaySystem(P_S, Q_1, Points([2.0]))
        cert = hinf_boundary_norm(sys, math.pi / 8)
        assert cert.refined
        # dense-grid oracle over omega in [-10, 10]
        ws = np.arange(-10.0, 10.0, 1e-4)
        vals = 1.0 / np.abs(1j * ws + 2.0 * np.exp(-1j * ws * math.pi / 8))
        dense = max(1.0, float(np.max(vals)))
        assert cert.sup_estimate >= dense - 1e-6
        assert cert.sup_estimate <= dense + 1e-3

    def test_cross_validation_windows(self):
        # inside the stability window the certificate is finite; past the
        # margin it is singular or explodes near the crossing frequency
        sys = DelaySystem(P_S, Q_1, TRIANGULAR)
        rep = operator_margin(sys, 2.0)
        inside = 0.5 * rep.margin
        cert = hinf_boundary_norm(sys, inside)
        assert math.isfinite(cert.sup_estimate)
        past = rep.margin + 1e-3
        try:
            cert2 = hinf_boundary_norm(sys, past)
            assert cert2.sup_estimate > 1e3
            assert abs(abs(cert2.argmax_omega) - 2.0) < 0.1
        except SingularOnGridError as exc:
            assert abs(abs(exc.omega) - 2.0) < 0.1

    def test_monotone_under_nested_refinement(self):
        sys = DelaySystem(P_S, Q_1, TRIANGULAR)
        sups = []
        for n in (129, 257, 513, 1025, 2049):
            cert = hinf_boundary_norm(sys, 0.7, GridConfig(n_points=n))
            sups.append(cert.sup_estimate)
        for a, b in zip(sups, sups[1:]):
            assert b >= a - 1e-12
        assert sups[-1] - sups[0] <= 1e-3 * max(1.0, sups[0])

    def test_normal_spectrum_method_recorded(self):
        sys = DelaySystem(P_S1, Q_1, Disk(1.0, 1.0))
        cert = hinf_boundary_norm(sys, 0.3)
        assert cert.method == "normal-spectrum"
        assert math.isfinite(cert.sup_estimate)


class TestOperatorMargin:
    def test_triangular_example(self):
        sys = DelaySystem(P_S, Q_1, TRIANGULAR)
        rep = operator_margin(sys, 2.0)
        assert abs(rep.margin - math.pi / 4) < 1e-9
        margins = {round(r.lam.real, 6): r.margin for r in rep.per_lambda}
        assert abs(margins[1.0] - math.pi / 2) < 1e-9
        assert abs(margins[2.0] - math.pi / 4) < 1e-9
        assert abs(rep.minimizer - 2.0) < 1e-9

    def test_normal_example(self):
        sys = DelaySystem(P_S, Q_1, NORMAL_2X2)
        rep = operator_margin(sys, 2.0)
        assert abs(rep.margin - math.pi / (4 * math.sqrt(2))) < 1e-9

    def test_aggregate_windows_are_intersection(self):
        sys = DelaySystem(P_S, Q_1, TRIANGULAR)
        rep = operator_margin(sys, 2.0)
        assert len(rep.aggregate_windows) == 1
        lo, hi = rep.aggregate_windows[0]
        assert lo == 0.0 and abs(hi - math.pi / 4) < 1e-9
        for r in rep.per_lambda:
            assert any(a <= lo and hi <= b + 1e-12 for a, b in r.windows)

    def test_margin_minimum_over_per_lambda(self):
        sys = DelaySystem(P_S, Q_1, NORMAL_2X2)
        rep = operator_margin(sys, 2.0)
        assert abs(rep.margin - min(r.margin for r in rep.per_lambda)) < 1e-12

    def test_schur_invariance(self):
        rng = np.random.default_rng(23)
        for _ in range(6):
            n = int(rng.integers(2, 5))
            a = rng.standard_normal((n, n)) * 0.7 + np.eye(n) * 1.5
            u = np.linalg.qr(rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))[0]
            sys1 = DelaySystem(P_S, Q_1, MatrixSpectrum(a))
            sys2 = DelaySystem(
                P_S, Q_1, MatrixSpectrum(u.conj().T @ a @ u), norm_a=sys1.norm_a
            )
            m1 = operator_margin(sys1, 3.0).margin
            m2 = operator_margin(sys2, 3.0).margin
            if math.isinf(m1) or math.isinf(m2):
                assert m1 == m2
            else:
                assert abs(m1 - m2) < 1e-8 * (1 + abs(m1))

    def test_disk_example_matches_independent_minimization(self):
        sys = DelaySystem(P_S1, Q_1, Disk(1.0, 1.0), norm_a=2.0)
        rep = operator_margin(sys, 2.0)
        h_ref, lam_ref, _ = oracles.disk_example_margin()
        assert abs(rep.margin - h_ref) < 1e-6
        assert abs(abs(rep.minimizer - 1.0) - 1.0) < 1e-6  # on the boundary circle
        assert min(abs(rep.minimizer - lam_ref), abs(rep.minimizer - lam_ref.conjugate())) < 1e-4

    def test_subnormal_circle_sandwich(self):
        sys = DelaySystem(P_S1, Q_1, Circle(1.0, 1.0), norm_a=2.0, subnormal=True)
        rep = operator_margin(sys, 2.0)
        assert rep.bounds is not None
        lo, hi = rep.bounds
        assert lo <= hi + 1e-9
        h_ref, _, _ = oracles.disk_example_margin()
        # the minimizing lambda sits on the circle, so both bounds agree here
        assert abs(lo - h_ref) < 1e-6
        assert abs(hi - h_ref) < 1e-6
        assert abs(rep.margin - lo) < 1e-12

    def test_union_of_points_and_disk(self):
        spec = Union([Points([0.5]), Disk(1.0, 1.0)])
        sys = DelaySystem(P_S1, Q_1, spec, norm_a=2.0)
        rep = operator_margin(sys, 2.0)
        h_ref, _, _ = oracles.disk_example_margin()
        assert abs(rep.margin - h_ref) < 1e-6  # the disk still dominates

    def test_continuum_unstable_at_h0(self):
        # spectrum reaching into Re lambda < -1 makes s+1+lambda unstable at h=0
        sys = DelaySystem(P_S1, Q_1, Disk(-2.0, 0.5), norm_a=2.5)
        rep = operator_margin(sys, 2.0)
        assert rep.margin == 0.0
        assert any("unstable at h=0" in w for w in rep.warnings)

    def test_stable_for_all_h(self):
        # |lambda| < min |i w + 1| = 1: no crossing frequencies at all
        sys = DelaySystem(P_S1, Q_1, Points([0.3, -0.2 + 0.1j]))
        rep = operator_margin(sys, 2.0)
        assert rep.margin == math.inf
        assert rep.aggregate_windows == ((0.0, math.inf),)

    def test_workers_match_serial(self):
        sys = DelaySystem(P_S, Q_1, TRIANGULAR)
        rep1 = operator_margin(sys, 2.0)
        rep2 = operator_margin(sys, 2.0, max_workers=4)
        assert rep1.margin == rep2.margin
        assert [r.lam for r in rep1.per_lambda] == [r.lam for r in rep2.per_lambda]


class TestDemos:
    def test_neutral_growth(self):
        vals = [v for _, v in neutral_demo(20)]
        assert all(b > a for a, b in zip(vals, vals[1:]))
        assert vals[-1] > 1e2

    def test_neutral_values_match_direct_evaluation(self):
        for n, (s, v) in enumerate(neutral_demo(5), start=1):
            y = (2 * n + 1) * math.pi + 1.0 / ((2 * n + 1) * math.pi)
            assert s == 1j * y
            direct = abs(1.0 / (s + 1 + s * cmath.exp(-s)))
            assert abs(v - direct) < 1e-12

    def test_neutral_exceeds_1e3_eventually(self):
        vals = [v for _, v in neutral_demo(90)]
        assert any(v > 1e3 for v in vals)

    def test_unbounded_sup_equals_n(self):
        for n, sup in unbounded_a_demo(10):
            assert abs(sup - n) < 1e-6

    def test_unbounded_monotone(self):
        sups = [s for _, s in unbounded_a_demo(6)]
        assert all(b > a for a, b in zip(sups, sups[1:]))
