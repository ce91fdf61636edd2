import numpy as np
import pytest

from oracles import weight_integral
from rhjacobi.cauchy import Side, cauchy_cheb
from rhjacobi.chebyshev import SQRT2, ChebKind, Interval, UNIT
from rhjacobi.errors import DomainError, ImagPartWarning, PrecisionWarning, SolverError
from rhjacobi.oracle import adaptive_oracle, discretize
from rhjacobi.pipeline import (Resolution, SolveContext, _realify, cauchy_pn,
                               orthonormal_eval, recip_approx, recurrence_pair,
                               recurrence_range, toda_evolve)
from rhjacobi.weights import WeightSpec

RES8 = Resolution(8, 10)


class TestRecurrencePair:
    @pytest.mark.parametrize("kind,a0,b0", [
        (ChebKind.U, 0.0, 0.5),
        (ChebKind.T, 0.0, 1 / SQRT2),
        (ChebKind.V, 0.5, 0.5),
        (ChebKind.W, -0.5, 0.5),
    ])
    def test_classical_kinds(self, kind, a0, b0):
        spec = WeightSpec.single(kind)
        ctx = SolveContext(spec, Resolution(16, 10))
        a, b = recurrence_pair(spec, ctx.green, ctx.hsys, 0, context=ctx)
        assert a == pytest.approx(a0, abs=1e-11)
        assert b == pytest.approx(b0, abs=1e-11)

    def test_mapped_interval_scaling(self):
        # entries scale affinely with the interval: a -> mid, b -> half/2
        spec = WeightSpec.single(ChebKind.U, (2.0, 5.0))
        ctx = SolveContext(spec, Resolution(16, 10))
        a, b = recurrence_pair(spec, ctx.green, ctx.hsys, 2, context=ctx)
        assert a == pytest.approx(3.5, abs=1e-11)
        assert b == pytest.approx(0.75, abs=1e-11)

    def test_negative_index_rejected(self, ctx_u, spec_u):
        with pytest.raises(DomainError):
            recurrence_pair(spec_u, ctx_u.green, ctx_u.hsys, -1, context=ctx_u)


class TestRecurrenceRange:
    def test_single_pair_consistency(self, spec_two_band, ctx_two_band):
        seg = recurrence_range(spec_two_band, 5, 5, context=ctx_two_band)
        a, b = recurrence_pair(spec_two_band, ctx_two_band.green, ctx_two_band.hsys,
                               5, context=ctx_two_band)
        assert seg.a[0] == a and seg.b[0] == b

    def test_matches_oracle_segment(self, spec_two_band, ctx_two_band):
        seg = recurrence_range(spec_two_band, 0, 12, context=ctx_two_band)
        ref = adaptive_oracle(spec_two_band, 13, 1e-12)
        np.testing.assert_allclose(seg.a, ref.a, atol=1e-11)
        np.testing.assert_allclose(seg.b, ref.b, atol=1e-11)
        assert not seg.meta["failures"]
        assert seg.meta["max_residual"] < 1e-9

    def test_windowed_start_matches_full(self, spec_two_band, ctx_two_band):
        win = recurrence_range(spec_two_band, 10, 12, context=ctx_two_band)
        ref = adaptive_oracle(spec_two_band, 13, 1e-12)
        np.testing.assert_allclose(win.a, ref.a[10:13], atol=1e-11)
        np.testing.assert_allclose(win.b, ref.b[10:13], atol=1e-11)

    def test_bad_range_rejected(self, spec_u):
        with pytest.raises(DomainError):
            recurrence_range(spec_u, 5, 3)


class TestRealifyPolicy:
    def test_small_imag_dropped_silently(self):
        assert _realify(1.0 + 1e-12j, "a", 0) == 1.0

    def test_moderate_imag_warns(self):
        with pytest.warns(ImagPartWarning):
            _realify(1.0 + 1e-8j, "a", 0)

    def test_large_imag_errors(self):
        with pytest.raises(SolverError):
            _realify(1.0 + 1e-5j, "a", 0)


class TestCauchyPn:
    def test_n0_matches_quadrature(self, spec_two_band, ctx_two_band):
        z = 0.5 + 0.0j  # in the gap
        got = cauchy_pn(spec_two_band, ctx_two_band.green, ctx_two_band.hsys, 0, z,
                        context=ctx_two_band)
        ref = sum(weight_integral(spec_two_band, j, lambda s: 1.0 / (s - z.real))
                  for j in range(2)) / (2j * np.pi)
        assert got == pytest.approx(ref, abs=1e-10)

    def test_n3_single_band_closed_form(self):
        # raw U weight = (pi/2) normalized one, and p_3 = U_3, so the transform
        # is (pi/2) times the closed-form kernel
        spec = WeightSpec.single(ChebKind.U)
        ctx = SolveContext(spec, Resolution(16, 10))
        z = 0.8 + 1.1j
        got = cauchy_pn(spec, ctx.green, ctx.hsys, 3, z, context=ctx)
        ref = (np.pi / 2) * cauchy_cheb(ChebKind.U, 3, UNIT, z)
        assert got == pytest.approx(ref, abs=1e-10)

    def test_orthogonality_kills_leading_order(self, spec_two_band, ctx_two_band):
        z = 1e4 + 0.0j
        for n in (1, 3):
            val = cauchy_pn(spec_two_band, ctx_two_band.green, ctx_two_band.hsys,
                            n, z, context=ctx_two_band)
            assert abs(z * val) < 1e-3

    def test_near_support_warns(self, spec_two_band, ctx_two_band):
        with pytest.warns(PrecisionWarning):
            cauchy_pn(spec_two_band, ctx_two_band.green, ctx_two_band.hsys, 0,
                      2.5 + 1e-10j, context=ctx_two_band,
                      jacobi=recurrence_range(spec_two_band, 0, 0, context=ctx_two_band))


class TestOrthonormality:
    def test_gram_matrix_identity(self, spec_two_band, ctx_two_band):
        seg = recurrence_range(spec_two_band, 0, 10, context=ctx_two_band)
        measure = discretize(spec_two_band, 512)
        x, w = measure.nodes, measure.weights / measure.mass
        P = orthonormal_eval(seg, 11, x)
        gram = (P * w) @ P.T
        assert np.max(np.abs(gram - np.eye(11))) < 1e-8

    def test_pure_u_polynomials(self, spec_u, ctx_u, rng):
        from rhjacobi.chebyshev import cheb_eval
        seg = recurrence_range(spec_u, 0, 6, context=ctx_u)
        x = rng.uniform(-1, 1, 9)
        P = orthonormal_eval(seg, 7, x)
        for k in range(7):
            np.testing.assert_allclose(P[k], cheb_eval(ChebKind.U, k, x), atol=1e-10)


class TestToda:
    def test_t0_identical_to_static(self, spec_u, ctx_u):
        traj = toda_evolve(spec_u, 5, [0.0], Resolution(16, 10))
        seg = recurrence_range(spec_u, 0, 4, Resolution(16, 10))
        np.testing.assert_array_equal(traj.segments[0].a, seg.a)
        np.testing.assert_array_equal(traj.segments[0].b, seg.b)

    def test_matches_scaled_oracle(self, spec_u):
        traj = toda_evolve(spec_u, 6, [0.5, 2.0], Resolution(20, 6))
        for t, seg in zip(traj.times, traj.segments):
            ref = adaptive_oracle(spec_u.with_exp_factor(t), 6, 1e-12)
            np.testing.assert_allclose(seg.a, ref.a, atol=1e-9)
            np.testing.assert_allclose(seg.b, ref.b, atol=1e-9)

    def test_halfspeed_flow_identities(self, spec_u):
        # d/dt of J(w e^{tx}) equals half the tridiagonal commutator flow
        dt = 1e-4
        traj = toda_evolve(spec_u, 8, [1.0 - dt, 1.0, 1.0 + dt], Resolution(20, 6))
        am, a0, ap = (s.a for s in traj.segments)
        bm, b0, bp = (s.b for s in traj.segments)
        adot = (ap - am) / (2 * dt)
        bdot = (bp - bm) / (2 * dt)
        bsq_prev = np.concatenate([[0.0], b0[:-1] ** 2])
        np.testing.assert_allclose(adot, b0 ** 2 - bsq_prev, atol=1e-6)
        np.testing.assert_allclose(bdot[:-1], 0.5 * b0[:-1] * (a0[1:] - a0[:-1]), atol=1e-6)

    def test_horizon_warning(self, spec_u):
        with pytest.warns(PrecisionWarning):
            toda_evolve(spec_u, 2, [15.0], Resolution(20, 6))

    def test_no_warning_at_moderate_time(self, spec_u, recwarn):
        import warnings as _w
        with _w.catch_warnings():
            _w.simplefilter("error", PrecisionWarning)
            toda_evolve(spec_u, 2, [2.0], Resolution(20, 6))


class TestRecip:
    def test_first_term_is_definition(self, spec_two_band, ctx_two_band):
        approx = recip_approx(spec_two_band, 1, context=ctx_two_band)
        eta = sum(weight_integral(spec_two_band, j) for j in range(2))
        c0 = cauchy_pn(spec_two_band, ctx_two_band.green, ctx_two_band.hsys, 0,
                       0.0, context=ctx_two_band)
        kappa0 = complex(2j * np.pi * c0 / eta)
        assert approx.coeffs[0] == pytest.approx(kappa0.real, abs=1e-10)
        ref_err = np.max(np.abs(kappa0.real - 1.0 / approx.grid))
        assert approx.max_errors[0] == pytest.approx(ref_err, rel=1e-12)

    def test_zero_inside_support_rejected(self):
        spec = WeightSpec.single(ChebKind.U)
        with pytest.raises(DomainError):
            recip_approx(spec, 3, resolution=RES8)

    def test_error_decreases(self, spec_two_band, ctx_two_band):
        approx = recip_approx(spec_two_band, 12, context=ctx_two_band)
        assert approx.max_errors[-1] < approx.max_errors[0] * 1e-3
        assert 0.0 < approx.rate < 1.0
