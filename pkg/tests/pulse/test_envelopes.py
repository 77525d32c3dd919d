import math
from types import SimpleNamespace

import numpy as np
import pytest
from scipy.integrate import trapezoid
from scipy.special import erf

from src.exceptions import DomainError
from src.pulse import (
    DragPulse,
    GaussianSquarePulse,
    ceil_duration,
    drag_area,
    envelope_area,
    envelope_at,
    gs_area,
    gs_with_area,
    pulse_from_dict,
    pulse_to_dict,
    quantize_duration,
)
from src.pulse.envelopes import SQRT_2PI, sample_envelope


class TestPulseValidation:
    """Test suite for pulse parameter checks"""

    @pytest.mark.unit
    def test_drag_pulse_accepts_vendor_x(self):
        """A 160 dt DRAG pulse with sigma 40 is valid"""
        pulse = DragPulse(0.1199, 160, 40.0, -0.35)
        assert pulse.duration == 160
        assert pulse.with_amplitude(0.05).amplitude == 0.05

    @pytest.mark.unit
    @pytest.mark.parametrize('kwargs', [
        {'amplitude': 1.2, 'duration': 160, 'sigma': 40.0},
        {'amplitude': -0.1, 'duration': 160, 'sigma': 40.0},
        {'amplitude': 0.1, 'duration': 150, 'sigma': 40.0},
        {'amplitude': 0.1, 'duration': 0, 'sigma': 40.0},
        {'amplitude': 0.1, 'duration': 160, 'sigma': 0.0},
    ])
    def test_drag_pulse_rejects_bad_parameters(self, kwargs):
        """Amplitude outside [0, 1], off-grid duration and non-positive sigma are rejected"""
        with pytest.raises(DomainError):
            DragPulse(**kwargs)

    @pytest.mark.unit
    def test_gaussian_square_phase_carries_sign(self, base_cr_pulse):
        """Phase pi flips the sign and negated() toggles it back"""
        flipped = base_cr_pulse.negated()
        assert flipped.phase == math.pi
        assert flipped.sign == -1.0
        assert flipped.signed_amplitude == pytest.approx(-0.3)
        assert flipped.negated() == base_cr_pulse

    @pytest.mark.unit
    def test_gaussian_square_rejects_other_phases(self):
        """Only 0 and pi are accepted as phases"""
        with pytest.raises(DomainError):
            GaussianSquarePulse(0.3, 400.0, 464, 16.0, phase=1.0)

    @pytest.mark.unit
    def test_gaussian_square_rejects_width_beyond_duration(self):
        """The flat top cannot outlast the pulse"""
        with pytest.raises(DomainError):
            GaussianSquarePulse(0.3, 480.0, 464, 16.0)

    @pytest.mark.unit
    def test_n_sigma(self, base_cr_pulse):
        """(d - w) / sigma"""
        assert base_cr_pulse.n_sigma == pytest.approx(4.0)


class TestPulseAreas:
    """Test suite for closed-form pulse areas"""

    @pytest.mark.unit
    def test_gs_area_nominal_formula(self, base_cr_pulse):
        """|A| [w + sqrt(2 pi) sigma erf(n_sigma)]"""
        expected = 0.3 * (400.0 + SQRT_2PI * 16.0 * float(erf(4.0)))
        assert gs_area(base_cr_pulse) == pytest.approx(expected, rel=1e-12)

    @pytest.mark.unit
    def test_gs_area_ignores_phase(self, base_cr_pulse):
        """Area is a magnitude"""
        assert gs_area(base_cr_pulse.negated()) == pytest.approx(gs_area(base_cr_pulse))

    @pytest.mark.unit
    def test_gs_area_formula_example(self):
        """A=0.3, w=100, d=164, sigma=16 evaluates the closed form with n_sigma = 4"""
        off_grid = SimpleNamespace(amplitude=0.3, width=100.0, sigma=16.0, n_sigma=(164 - 100) / 16.0)
        expected = 0.3 * (100.0 + SQRT_2PI * 16.0 * float(erf(4.0)))
        assert gs_area(off_grid) == pytest.approx(expected, rel=1e-12)

    @pytest.mark.unit
    def test_gs_area_is_linear_in_amplitude(self, base_cr_pulse):
        """Doubling A doubles the area"""
        doubled = GaussianSquarePulse(0.6, 400.0, 464, 16.0)
        assert gs_area(doubled) == pytest.approx(2.0 * gs_area(base_cr_pulse))

    @pytest.mark.unit
    @pytest.mark.parametrize('params', [
        (0.3, 400.0, 464, 16.0),
        (0.3, 96.0, 160, 16.0),
        (0.25, 272.0, 528, 64.0),
        (0.6, 0.0, 48, 16.0),
        (0.45, 183.7, 240, 16.0),
        (1.0, 10.0, 64, 16.0),
    ])
    def test_gs_envelope_integrates_to_gs_area(self, params):
        """Trapezoid integration of the sampled envelope reproduces the closed-form area"""
        pulse = GaussianSquarePulse(*params)
        times, values = sample_envelope(pulse, points=200001)
        numeric = trapezoid(np.abs(values), times)
        assert numeric == pytest.approx(gs_area(pulse), rel=1e-6)
        assert envelope_area(pulse) == gs_area(pulse)

    @pytest.mark.unit
    def test_gs_envelope_stays_below_flat_top(self, base_cr_pulse):
        """The flanks never exceed the flat-top amplitude and the top sits at A"""
        times, values = sample_envelope(base_cr_pulse, points=4001)
        assert np.abs(values).max() == pytest.approx(0.3)
        assert envelope_at(base_cr_pulse, 232.0).real == pytest.approx(0.3)

    @pytest.mark.unit
    @pytest.mark.parametrize('fraction', [0.05, 0.5, 2.0])
    def test_targeted_pulses_integrate_to_their_area(self, base_cr_pulse, fraction):
        """Pulses solved by gs_with_area also satisfy the trapezoid check"""
        pulse = gs_with_area(base_cr_pulse, fraction * gs_area(base_cr_pulse))
        times, values = sample_envelope(pulse, points=200001)
        assert trapezoid(np.abs(values), times) == pytest.approx(gs_area(pulse), rel=1e-6)

    @pytest.mark.unit
    @pytest.mark.parametrize('params', [(0.3, 440.0, 464, 16.0), (0.3, 159.0, 160, 16.0)])
    def test_gs_rejects_flanks_too_short_for_their_area(self, params):
        """Flanks shorter than about 2.5 sigma cannot hold sqrt(2 pi) sigma erf(n_sigma) below the flat top"""
        with pytest.raises(DomainError):
            GaussianSquarePulse(*params)

    @pytest.mark.unit
    def test_gs_without_flanks_is_a_rectangle(self):
        """w = d leaves only the flat top"""
        pulse = GaussianSquarePulse(0.2, 64.0, 64, 16.0)
        assert pulse.flank_sigma is None
        assert gs_area(pulse) == pytest.approx(0.2 * 64.0)
        assert envelope_at(pulse, 0.0).real == pytest.approx(0.2)

    @pytest.mark.unit
    def test_drag_area_matches_numeric_integral(self):
        """The derivative quadrature does not contribute to the area"""
        pulse = DragPulse(0.14, 160, 40.0, -0.35)
        times, values = sample_envelope(pulse, points=20001)
        assert drag_area(pulse) == pytest.approx(trapezoid(values.real, times), rel=1e-5)
        assert trapezoid(values.imag, times) == pytest.approx(0.0, abs=1e-6)

    @pytest.mark.unit
    def test_drag_area_is_linear_in_amplitude(self):
        """Half the amplitude gives half the area"""
        pulse = DragPulse(0.2, 96, 24.0)
        assert drag_area(pulse.with_amplitude(0.1)) == pytest.approx(drag_area(pulse) / 2)

    @pytest.mark.unit
    def test_drag_envelope_vanishes_at_edges(self):
        """The lifted Gaussian starts and ends at zero"""
        pulse = DragPulse(0.5, 64, 16.0)
        assert envelope_at(pulse, 0.0).real == pytest.approx(0.0, abs=1e-12)
        assert envelope_at(pulse, 64.0).real == pytest.approx(0.0, abs=1e-12)
        assert envelope_at(pulse, 32.0).real == pytest.approx(0.5)

    @pytest.mark.unit
    def test_envelope_at_outside_pulse(self, base_cr_pulse):
        """Times outside [0, d] are rejected"""
        with pytest.raises(DomainError):
            envelope_at(base_cr_pulse, 465.0)


class TestDurationGrid:
    """Test suite for the 16 dt duration grid"""

    @pytest.mark.unit
    @pytest.mark.parametrize('raw, expected', [
        (243.95, 240), (240.0, 240), (5.0, 16), (16.0, 16), (32.0 - 1e-12, 32), (47.9, 32),
    ])
    def test_quantize_duration_floors(self, raw, expected):
        """Floor to a multiple of 16, never below 16"""
        assert quantize_duration(raw) == expected

    @pytest.mark.unit
    def test_quantize_duration_rejects_non_positive(self):
        """Zero duration has no grid point"""
        with pytest.raises(DomainError):
            quantize_duration(0.0)

    @pytest.mark.unit
    @pytest.mark.parametrize('raw, expected', [(17.0, 32), (32.0, 32), (1.0, 16), (64.0 + 1e-12, 64)])
    def test_ceil_duration(self, raw, expected):
        """Smallest multiple of 16 holding the raw duration"""
        assert ceil_duration(raw) == expected


class TestAreaTargeting:
    """Test suite for gs_with_area"""

    @pytest.mark.unit
    @pytest.mark.parametrize('fraction', [0.5, 1.0, 1.7, 2.0])
    def test_hits_target_area_exactly(self, base_cr_pulse, fraction):
        """Width is solved so the exact area equals the target"""
        target = fraction * envelope_area(base_cr_pulse)
        pulse = gs_with_area(base_cr_pulse, target)
        assert envelope_area(pulse) == pytest.approx(target, rel=1e-9)
        assert pulse.duration % 16 == 0
        assert pulse.amplitude == pytest.approx(0.3)
        assert pulse.sigma == base_cr_pulse.sigma

    @pytest.mark.unit
    def test_small_target_scales_amplitude(self, base_cr_pulse):
        """Below the flanks-only area the width stays zero and the amplitude shrinks"""
        target = 0.05 * envelope_area(base_cr_pulse)
        pulse = gs_with_area(base_cr_pulse, target)
        assert pulse.width == 0.0
        assert pulse.amplitude < base_cr_pulse.amplitude
        assert envelope_area(pulse) == pytest.approx(target, rel=1e-9)

    @pytest.mark.unit
    def test_phase_override(self, base_cr_pulse):
        """The requested phase is applied"""
        pulse = gs_with_area(base_cr_pulse, envelope_area(base_cr_pulse), phase=math.pi)
        assert pulse.sign == -1.0

    @pytest.mark.unit
    def test_negative_target_rejected(self, base_cr_pulse):
        """Areas are magnitudes"""
        with pytest.raises(DomainError):
            gs_with_area(base_cr_pulse, -1.0)


class TestPulseSerialization:
    """Test suite for tagged pulse dicts"""

    @pytest.mark.unit
    def test_tags(self, base_cr_pulse):
        """DRAG pulses are tagged drag and GaussianSquare pulses gs"""
        assert pulse_to_dict(DragPulse(0.1, 160, 40.0))['type'] == 'drag'
        assert pulse_to_dict(base_cr_pulse)['type'] == 'gs'

    @pytest.mark.unit
    def test_restores_equal_pulse(self, base_cr_pulse):
        """A tagged dict rebuilds the same pulse"""
        assert pulse_from_dict(pulse_to_dict(base_cr_pulse.negated())) == base_cr_pulse.negated()

    @pytest.mark.unit
    def test_unknown_tag(self):
        """Unknown pulse types are rejected"""
        with pytest.raises(DomainError):
            pulse_from_dict({'type': 'square', 'params': {}})
