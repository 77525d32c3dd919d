import math

import pytest

from src.benchmarks import tomography_sweep
from src.benchmarks.tomography import mean_error, sweep_frame
from src.exceptions import DomainError

ANGLES = [0.0, math.pi / 3, math.pi / 2, math.pi]


class TestTomographySweep:
    """Test suite for gate tomography sweeps"""

    @pytest.mark.integration
    @pytest.mark.benchmark
    @pytest.mark.parametrize('mode', ['baseline', 'gokhale', 'squeeze'])
    def test_rx_is_exact_without_noise(self, lima_backend, ideal_library, mode):
        """Exact pulses on the noiseless model leave no error in any basis"""
        results = tomography_sweep('rx', lima_backend, ideal_library, mode, ANGLES, noiseless=True)
        assert set(results) == {'X', 'Y', 'Z'}
        for result in results.values():
            assert max(result.errors) < 1e-6

    @pytest.mark.integration
    @pytest.mark.benchmark
    def test_rzx_is_exact_without_noise(self, lima_backend, ideal_library):
        """All four preparations of the pair match the exact Rzx"""
        results = tomography_sweep('rzx', lima_backend, ideal_library, 'squeeze', [0.4, math.pi / 2],
                                   qubits=(0, 1), bases=('Z', 'X'), noiseless=True)
        assert mean_error(results) < 1e-6

    @pytest.mark.unit
    @pytest.mark.benchmark
    def test_ideal_distributions(self, lima_backend, ideal_library):
        """Rx(pi) flips the Z readout; Rx(pi/2) splits it evenly"""
        result = tomography_sweep('rx', lima_backend, ideal_library, 'squeeze', [math.pi / 2, math.pi],
                                  bases=('Z',), noiseless=True)['Z']
        assert result.ideal[0] == pytest.approx({'0': 0.5, '1': 0.5})
        assert result.ideal[1] == pytest.approx({'1': 1.0})
        assert result.measured[1]['1'] == pytest.approx(1.0, abs=1e-6)

    @pytest.mark.integration
    @pytest.mark.benchmark
    def test_shorter_pulses_have_less_error(self, noisy_backend):
        """Under per-dt noise the fast Rx beats the two-pulse decomposition"""
        from src.simulator.oracle import ideal_pulse_library

        library = ideal_pulse_library(noisy_backend.device)
        squeeze = tomography_sweep('rx', noisy_backend, library, 'squeeze', ANGLES[1:])
        baseline = tomography_sweep('rx', noisy_backend, library, 'baseline', ANGLES[1:])
        assert 0.0 < mean_error(squeeze) < mean_error(baseline)

    @pytest.mark.integration
    @pytest.mark.benchmark
    def test_sampled_sweep_and_frame(self, lima_backend, ideal_library):
        """Sampled sweeps produce one row per angle and basis"""
        results = tomography_sweep('rx', lima_backend, ideal_library, 'squeeze', ANGLES, shots=200,
                                   noiseless=True)
        frame = sweep_frame(results)
        assert len(frame) == 3 * len(ANGLES)
        assert list(frame.columns) == ['family', 'basis', 'theta', 'error']
        z = frame[frame['basis'] == 'Z'].set_index('theta')['error']
        assert z.loc[0.0] == pytest.approx(0.0)
        assert z.loc[math.pi] == pytest.approx(0.0)

    @pytest.mark.unit
    @pytest.mark.benchmark
    @pytest.mark.parametrize('family, kwargs', [
        ('cx', {}),
        ('rzx', {'qubits': (0,)}),
        ('rx', {'bases': ('W',)}),
    ])
    def test_bad_requests(self, lima_backend, ideal_library, family, kwargs):
        """Unknown families, wrong qubit counts and unknown bases are refused"""
        with pytest.raises(DomainError):
            tomography_sweep(family, lima_backend, ideal_library, 'squeeze', [0.1], noiseless=True, **kwargs)
