import cmath
import math

import numpy as np
import pytest

import oracles
from delaymargin import (
    DegenerateCrossingError,
    IdenticallyZeroError,
    Polynomial,
    RetardedAssumptionError,
    analyze_lambda,
    crossing_delays,
    crossing_direction,
    crossing_frequencies,
    h0_rhp_count,
)

P_S = Polynomial([0, 1])
P_S1 = Polynomial([1, 1])
Q_1 = Polynomial([1])


class TestH0Count:
    def test_stable_lambda_two(self):
        assert h0_rhp_count(P_S, Q_1, 2.0) == 0  # root at -2

    def test_unstable_lambda_minus_one(self):
        assert h0_rhp_count(P_S, Q_1, -1.0) == 1  # root at +1

    def test_affine_stable(self):
        assert h0_rhp_count(P_S1, Q_1, 2.0) == 0  # root at -3

    def test_rejects_neutral(self):
        with pytest.raises(RetardedAssumptionError):
            h0_rhp_count(P_S, Polynomial([0, 1]), 1.0)


class TestCrossingFrequencies:
    @pytest.mark.parametrize(
        "p,mod,expected",
        [
            (P_S, 2.0, [-2.0, 2.0]),
            (P_S, 1.0, [-1.0, 1.0]),
            (P_S1, 2.0, [-math.sqrt(3), math.sqrt(3)]),
        ],
    )
    def test_examples(self, p, mod, expected):
        got = crossing_frequencies(p, Q_1, mod)
        assert len(got) == len(expected)
        for (w, flag), ref in zip(got, expected):
            assert abs(w - ref) < 1e-9
            assert not flag

    def test_no_real_crossings(self):
        # |i w + 1| = 0.5 has no real solution
        assert crossing_frequencies(P_S1, Q_1, 0.5) == []

    def test_identically_zero(self):
        # |P(iw)| == |Q(iw)| identically (neutral-like degeneracy)
        with pytest.raises(IdenticallyZeroError):
            crossing_frequencies(Polynomial([0, 1]), Polynomial([0, 1]), 1.0)


class TestCrossingDelays:
    def test_real_lambda(self):
        got = crossing_delays(P_S, Q_1, 2.0, 2.0, 1.0)
        assert len(got) == 1
        assert abs(got[0] - math.pi / 4) < 1e-12

    def test_complex_lambda_positive_omega(self):
        got = crossing_delays(P_S, Q_1, 1 + 1j, math.sqrt(2), 2.0)
        assert len(got) == 1
        assert abs(got[0] - 3 * math.pi / (4 * math.sqrt(2))) < 1e-12

    def test_complex_lambda_negative_omega(self):
        got = crossing_delays(P_S, Q_1, 1 + 1j, -math.sqrt(2), 2.0)
        assert len(got) == 1
        assert abs(got[0] - math.pi / (4 * math.sqrt(2))) < 1e-12

    def test_progression(self):
        period = 2 * math.pi / 2.0
        got = crossing_delays(P_S, Q_1, 2.0, 2.0, 8.0)
        assert len(got) == 3
        for k, h in enumerate(got):
            assert abs(h - (math.pi / 4 + k * period)) < 1e-12

    def test_modulus_precondition(self):
        with pytest.raises(DegenerateCrossingError):
            crossing_delays(P_S, Q_1, 2.0, 3.0, 1.0)  # |P(3i)| != 2


class TestCrossingDirection:
    def test_examples(self):
        assert crossing_direction(P_S, Q_1, 2.0) == 1
        assert crossing_direction(P_S, Q_1, -1.0) == 1  # Re(-1/s^2) = 1/w^2 > 0
        assert crossing_direction(P_S1, Q_1, math.sqrt(3)) == 1

    def test_lambda_independent_by_signature(self):
        # the operation does not take lambda or h: one value per omega
        import inspect

        sig = inspect.signature(crossing_direction)
        assert "lam" not in sig.parameters and "h" not in sig.parameters

    def test_inward_direction(self):
        # P = (s+1)^2, Q = 1: roots move left to right? check against the
        # finite-difference movement of the actual root
        p = Polynomial([1, 2, 1])
        lam = 2.0
        freqs = [w for w, _ in crossing_frequencies(p, Q_1, abs(lam)) if w > 0]
        w = freqs[0]
        d = crossing_direction(p, Q_1, w)
        h0 = crossing_delays(p, Q_1, lam, w, 10.0)[0]
        step = 1e-6
        def rhp_root_near(h):
            roots = np.roots([1, 2, 1 + lam * cmath.exp(-1j * w * h)])
            return min(roots, key=lambda r: abs(r - 1j * w))
        before = rhp_root_near(h0 - step).real
        after = rhp_root_near(h0 + step).real
        assert d == (1 if after > before else -1)


class TestAnalyzeLambda:
    def test_example_lambda_two(self):
        r = analyze_lambda(P_S, Q_1, 2.0, 2.0)
        assert abs(r.margin - math.pi / 4) < 1e-12
        assert r.windows[0][0] == 0.0
        assert abs(r.windows[0][1] - math.pi / 4) < 1e-12
        assert r.status == "exact"
        assert r.n0 == 0

    def test_example_conjugate(self):
        r = analyze_lambda(P_S, Q_1, 1 - 1j, 2.0)
        assert abs(r.margin - math.pi / (4 * math.sqrt(2))) < 1e-12

    def test_no_delay_term(self):
        r = analyze_lambda(Polynomial([2, 2, 1]), Polynomial([]), 5.0, 2.0)
        assert r.margin == math.inf
        assert r.windows == ((0.0, math.inf),)

    def test_lambda_zero(self):
        r = analyze_lambda(Polynomial([2, 2, 1]), Q_1, 0.0, 2.0)
        assert r.margin == math.inf

    def test_crossing_free_certifies_all_h(self):
        # |i w + 1| >= 1 > 0.5 = |lambda| |Q|: no crossings ever
        r = analyze_lambda(P_S1, Q_1, 0.5, 2.0)
        assert r.margin == math.inf
        assert r.windows == ((0.0, math.inf),)

    def test_margin_beyond_sweep_bound(self):
        r = analyze_lambda(P_S, Q_1, 2.0, 0.5)  # first event at pi/4 > 0.5
        assert abs(r.margin - math.pi / 4) < 1e-12
        assert r.events == ()
        assert r.windows == ((0.0, 0.5),)

    def test_unstable_at_zero(self):
        r = analyze_lambda(P_S, Q_1, -1.0, 2.0)
        assert r.margin == 0.0
        assert r.n0 == 1

    def test_persistent_boundary_root_degenerate(self):
        # P(0) + lam Q(0) = 0: an h-independent root on the axis
        r = analyze_lambda(P_S1, Q_1, -1.0, 2.0)
        assert r.status == "degenerate"
        assert r.windows == ()

    def test_restabilization_window(self):
        # lightly damped resonance: |P(iw)| dips below |lambda Q|, giving an
        # unstable band followed by a restabilization window
        p = Polynomial([4, 0.4, 1])
        q = Polynomial([1])
        r = analyze_lambda(p, q, 2.0, 30.0)
        assert r.n0 == 0
        assert r.status == "exact"
        freqs = crossing_frequencies(p, q, 2.0)
        dirs = {round(w, 6): crossing_direction(p, q, w) for w, _ in freqs}
        assert set(dirs.values()) == {1, -1}
        assert len(r.windows) >= 2
        for (_, b1), (a2, _) in zip(r.windows, r.windows[1:]):
            assert b1 <= a2
        # independent confirmation of both windows by contour counting
        inside1 = 0.5 * sum(r.windows[0])
        inside2 = 0.5 * sum(r.windows[1])
        between = 0.5 * (r.windows[0][1] + r.windows[1][0])
        assert oracles.rhp_zero_count([4, 0.4, 1], [1], 2.0, inside1) == 0
        assert oracles.rhp_zero_count([4, 0.4, 1], [1], 2.0, inside2) == 0
        assert oracles.rhp_zero_count([4, 0.4, 1], [1], 2.0, between) == 2

    def test_rejects_neutral_and_advanced(self):
        with pytest.raises(RetardedAssumptionError):
            analyze_lambda(P_S, Polynomial([1, 1]), 1.0, 1.0)
        with pytest.raises(RetardedAssumptionError):
            analyze_lambda(Q_1, Polynomial([0, 0, 1]), 1.0, 1.0)


class TestEventInvariants:
    def test_unit_modulus_at_events(self):
        rng = np.random.default_rng(21)
        tol = 1e-9
        for _ in range(15):
            p_arr, q_arr = oracles.random_stable_retarded(rng, 3, 1)
            p, q = Polynomial(p_arr.tolist()), Polynomial(q_arr.tolist())
            lam = complex(rng.standard_normal(), rng.standard_normal()) * 2
            if lam == 0:
                continue
            r = analyze_lambda(p, q, lam, 5.0, tol)
            for e in r.events:
                zeta = cmath.exp(-1j * e.omega * e.h) + p(1j * e.omega) / (
                    lam * q(1j * e.omega)
                )
                assert abs(zeta) <= 10 * tol * (1 + 1 / abs(lam * q(1j * e.omega)))

    def test_conjugation_symmetry(self):
        rng = np.random.default_rng(22)
        for _ in range(10):
            p_arr, q_arr = oracles.random_stable_retarded(rng, 4, 2)
            p, q = Polynomial(p_arr.tolist()), Polynomial(q_arr.tolist())
            lam = complex(rng.standard_normal(), rng.standard_normal())
            r1 = analyze_lambda(p, q, lam, 4.0)
            r2 = analyze_lambda(p, q, lam.conjugate(), 4.0)
            assert len(r1.events) == len(r2.events)
            e1 = sorted(r1.events, key=lambda e: (round(e.h, 9), e.omega))
            e2 = sorted(r2.events, key=lambda e: (round(e.h, 9), -e.omega))
            for a, b in zip(e1, e2):
                assert abs(a.h - b.h) < 1e-9 * (1 + a.h)
                assert abs(a.omega + b.omega) < 1e-9 * (1 + abs(a.omega))
                assert a.direction == b.direction
            assert len(r1.windows) == len(r2.windows)
            for w1, w2 in zip(r1.windows, r2.windows):
                assert abs(w1[0] - w2[0]) < 1e-9
                assert math.isinf(w1[1]) == math.isinf(w2[1])
                if not math.isinf(w1[1]):
                    assert abs(w1[1] - w2[1]) < 1e-9 * (1 + w1[1])

    def test_real_lambda_events_pair(self):
        r = analyze_lambda(P_S, Q_1, 2.0, 2.0)
        groups = {}
        for e in r.events:
            groups.setdefault(round(e.h, 10), []).append(e)
        for evs in groups.values():
            assert len(evs) == 2
            assert abs(evs[0].omega + evs[1].omega) < 1e-12
            assert evs[0].direction == evs[1].direction


class TestExhaustivenessOracle:
    def test_rhp_count_matches_argument_principle(self):
        # the root count predicted from events must match direct contour
        # counting of the exact quasipolynomial on a grid of delays
        rng = np.random.default_rng(33)
        systems = 0
        while systems < 25:
            deg_p = int(rng.integers(1, 5))
            deg_q = int(rng.integers(0, deg_p))
            p_arr, q_arr = oracles.random_stable_retarded(rng, deg_p, deg_q)
            p, q = Polynomial(p_arr.tolist()), Polynomial(q_arr.tolist())
            lam = complex(rng.standard_normal(), rng.standard_normal())
            if abs(lam) < 0.1:
                continue
            h_max = 3.0
            r = analyze_lambda(p, q, lam, h_max)
            if r.status != "exact":
                continue
            events = sorted(e.h for e in r.events)
            grid = np.linspace(0.02, h_max, 12)
            # keep grid points away from events
            grid = [
                h for h in grid if all(abs(h - he) > 5e-3 * (1 + he) for he in events)
            ]
            for h in grid:
                predicted = r.n0
                for e in r.events:
                    if e.h <= h:
                        predicted += e.direction
                counted = oracles.rhp_zero_count(p_arr, q_arr, lam, h)
                assert counted == predicted, (
                    f"count mismatch at h={h}: predicted {predicted}, "
                    f"contour {counted} (p={p_arr}, q={q_arr}, lam={lam})"
                )
            systems += 1
