import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ringspectra.charpoly import macro_polynomial
from ringspectra.consensus import (
    FrequencyVariable,
    absolute_velocity,
    criterion_curve,
    criterion_points,
    criterion_spectrum,
    critical_gain,
    first_order,
    in_omega,
    max_consensus_N,
    nonminimum_phase,
    omega_boundary,
    pursuit_spectrum,
    reflect_scale,
    relative_velocity,
)
from ringspectra.errors import BracketError, DomainError, NoSpanningTreeError


class TestFrequencyVariable:
    def test_requires_monic(self):
        with pytest.raises(DomainError):
            FrequencyVariable((0.0, 2.0), (1.0,))

    def test_requires_proper_degree(self):
        with pytest.raises(DomainError):
            FrequencyVariable((0.0, 1.0), (1.0, 1.0))

    def test_rejects_common_roots(self):
        # a = s(s+1), b = s+1
        with pytest.raises(DomainError):
            FrequencyVariable((0.0, 1.0, 1.0), (1.0, 1.0))

    def test_from_ratio_scales_monic(self):
        fv = FrequencyVariable.from_ratio((0.0, 1.0, 2.0), (1.0, -2.0))
        assert fv.a == (0.0, 0.5, 1.0)
        assert fv.b == (0.5, -1.0)

    def test_factories(self):
        assert first_order().a == (0.0, 1.0)
        assert absolute_velocity(2.0).a == (0.0, 2.0, 1.0)
        assert relative_velocity(3.4).b == (1.0, 3.4)
        fv = nonminimum_phase(2.0)
        assert fv.a == (0.0, 0.5, 1.0)
        assert fv.b == (0.5, -1.0)

    def test_phi(self):
        fv = relative_velocity(1.0)
        assert fv.phi(1j) == pytest.approx((1j) ** 2 / (1 + 1j), abs=1e-15)


class TestInOmega:
    def test_first_order_left_half_plane(self):
        fv = first_order()
        assert in_omega(fv, -1.0 + 0j).inside
        assert not in_omega(fv, 0.5 + 0j).inside
        assert in_omega(fv, -0.1 + 5j).inside

    def test_parabola_interior_point(self):
        # y^2 < gamma^2 * (-x): 1 < 4 at lambda = -1 + j for gamma = 2
        assert in_omega(absolute_velocity(2.0), -1 + 1j).inside

    def test_origin_is_boundary(self):
        v = in_omega(absolute_velocity(2.0), 0j)
        assert not v.inside
        assert v.on_boundary

    def test_matches_parabola_inequality_on_grid(self):
        gamma = 1.5
        fv = absolute_velocity(gamma)
        rng = np.random.default_rng(11)
        xs = rng.uniform(-4, 0.5, 10_000)
        ys = rng.uniform(-3, 3, 10_000)
        band = 1e-6
        for x, y in zip(xs, ys):
            margin = y * y + gamma ** 2 * x  # negative strictly inside
            if abs(margin) < band:
                continue
            assert in_omega(fv, complex(x, y)).inside == (margin < 0)

    @given(st.complex_numbers(max_magnitude=5.0, allow_nan=False, allow_infinity=False))
    @settings(max_examples=80, deadline=None)
    def test_conjugation_invariance(self, lam):
        fv = relative_velocity(2.0)
        assert in_omega(fv, lam).inside == in_omega(fv, np.conj(lam)).inside


class TestOmegaBoundary:
    def test_parabola_formula(self):
        pts = omega_boundary(absolute_velocity(1.0), [1.0])
        assert pts[0] == pytest.approx(-1 + 1j, abs=1e-12)

    def test_relative_velocity_formula(self):
        pts = omega_boundary(relative_velocity(1.0), [1.0])
        assert pts[0] == pytest.approx(-0.5 + 0.5j, abs=1e-12)

    def test_origin_when_a0_zero(self):
        pts = omega_boundary(absolute_velocity(2.0), [0.0])
        assert pts[0] == 0

    def test_pole_skipped_with_warning(self):
        # b(s) = s vanishes at s = j*0; that grid point is dropped
        fv = FrequencyVariable((1.0, 0.0, 1.0), (0.0, 1.0))
        with pytest.warns(UserWarning):
            out = omega_boundary(fv, [0.0, 1.0])
        assert len(out) == 1


class TestCriterionSpectrum:
    def test_first_order_pursuit(self):
        assert criterion_spectrum(first_order(), pursuit_spectrum(4))

    def test_absolute_velocity_thresholds(self):
        fv = absolute_velocity(1.0)
        # r/gamma^2 = 1 is above the all-N threshold 1/2, yet N = 3 still
        # passes: its eigenvalue angles stay far enough from the origin.
        assert criterion_spectrum(fv, pursuit_spectrum(3, 1.0))
        for N in range(4, 65):
            assert not criterion_spectrum(fv, pursuit_spectrum(N, 1.0))

    def test_absolute_velocity_below_threshold(self):
        fv = absolute_velocity(2.0)  # r/gamma^2 = 0.25
        for N in range(3, 65):
            assert criterion_spectrum(fv, pursuit_spectrum(N, 1.0))

    def test_requires_zero_eigenvalue(self):
        with pytest.raises(DomainError):
            criterion_spectrum(first_order(), [-1.0 + 0j, -2.0 + 0j])

    def test_repeated_zero_raises(self):
        with pytest.raises(NoSpanningTreeError):
            criterion_spectrum(first_order(), [0j, 0j, -1.0 + 0j])


class TestCriterionCurve:
    def test_absolute_circle_threshold(self):
        fv = absolute_velocity(1.0)
        circle = macro_polynomial((1,))
        assert criterion_curve(fv, circle, 0.4)
        assert not criterion_curve(fv, circle, 0.6)

    def test_absolute_cassini_threshold(self):
        fv = absolute_velocity(1.0)
        cassini = macro_polynomial((2, 1))
        assert criterion_curve(fv, cassini, 1.0)
        assert not criterion_curve(fv, cassini, 1.3)

    def test_relative_velocity_always_fails(self):
        circle = macro_polynomial((1,))
        for gamma in (0.5, 2.0):
            for r in (0.1, 1.0):
                assert not criterion_curve(relative_velocity(gamma), circle, r)

    def test_curve_failure_implies_finite_spectrum_failure(self):
        # just above the circle threshold the violation shows up at some N <= 200
        fv = absolute_velocity(1.0)
        r = 0.51
        assert not criterion_curve(fv, macro_polynomial((1,)), r)
        failed = [N for N in range(3, 201)
                  if not criterion_spectrum(fv, pursuit_spectrum(N, r))]
        assert failed, "sampled-curve failure must be visible at finite N"

    def test_sample_floor(self):
        with pytest.raises(DomainError):
            criterion_curve(absolute_velocity(1.0), macro_polynomial((1,)), 0.4, samples=100)


class TestCriticalGain:
    def test_parabola_circle(self):
        for gamma in (1.0, 2.0):
            fv = absolute_velocity(gamma)
            r = critical_gain(fv, macro_polynomial((1,)), 0.1 * gamma ** 2, 2.0 * gamma ** 2)
            assert r / gamma ** 2 == pytest.approx(0.5, abs=1e-3)

    def test_parabola_cassini(self):
        fv = absolute_velocity(1.0)
        r = critical_gain(fv, macro_polynomial((2, 1)), 0.5, 2.0)
        assert r == pytest.approx(7.0 / 6.0, abs=1e-3)

    def test_exotic_circle(self):
        for gamma in (1.0, 2.0):
            fv = nonminimum_phase(gamma)
            r = critical_gain(fv, macro_polynomial((1,)), 0.05 / gamma, 1.0 / gamma)
            assert r * gamma == pytest.approx(0.25, abs=1e-3)

    def test_bad_bracket(self):
        fv = absolute_velocity(1.0)
        with pytest.raises(BracketError):
            critical_gain(fv, macro_polynomial((1,)), 0.1, 0.2)


class TestMaxConsensusN:
    def test_relative_velocity_thresholds(self):
        assert max_consensus_N(relative_velocity(3.4), 0.15, n_max=16) == 6
        assert max_consensus_N(relative_velocity(4.0), 0.15, n_max=16) == 7

    def test_first_order_never_fails(self):
        assert max_consensus_N(first_order(), 1.0, n_max=32) == 32


class TestReflectScale:
    def test_sign_convention(self):
        out = reflect_scale([1 + 1j, 2.0], 0.5)
        assert np.allclose(out, [-0.5 - 0.5j, -1.0])

    def test_rejects_nonpositive(self):
        with pytest.raises(DomainError):
            reflect_scale([1.0], 0.0)


class TestNoLocusRescuesRelativeVelocity:
    LOCI = [(1,), (2, 1), (1, 2, 1), (2, 2, 1)]

    def test_relative_velocity_fails_on_every_curve(self):
        for gamma in (0.5, 1.0, 2.0):
            fv = relative_velocity(gamma)
            for necklace in self.LOCI:
                for r in (0.1, 0.3, 1.0):
                    assert not criterion_curve(fv, macro_polynomial(necklace), r,
                                               samples=720)

    def test_relative_velocity_fails_on_drop_boundary(self):
        from ringspectra.weighted import drop_boundary

        xs = np.linspace(0.0, 4.0, 400)
        pts = np.array([complex(x, s * drop_boundary(x)) for x in xs for s in (1, -1)])
        for gamma in (0.5, 1.0, 2.0):
            fv = relative_velocity(gamma)
            for r in (0.1, 0.3, 1.0):
                assert not criterion_points(fv, reflect_scale(pts, r))
