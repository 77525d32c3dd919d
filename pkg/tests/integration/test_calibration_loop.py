"""
End-to-end runs: daemon -> query server -> transpiler -> simulator.
"""

import math

import numpy as np
import pytest
from fastapi.testclient import TestClient
from scipy.stats import binomtest

from src.benchmarks import run_benchmark, tomography_sweep
from src.circuit import Circuit, Gate
from src.daemon import CalibrationDaemon, DaemonConfig
from src.query_server import QueryClient, create_app
from src.query_server.store import ParamStore
from src.simulator.backend import SimulatedBackend
from src.simulator.models.device import DriftConfig, line_config
from src.transpiler import PulseLibrary


def rotation_circuit(theta):
    return Circuit(2, (Gate('rx', (0,), (theta,)), Gate('x', (1,)), Gate('measure', (0,)), Gate('measure', (1,))))


@pytest.fixture
def query_client(data_dir):
    """Query client talking to an in-process server backed by a file store"""
    store = ParamStore(data_dir / 'query')
    client = QueryClient('http://testserver', client=TestClient(create_app(store)))
    yield client
    client.close()
    store.close()


def daemon_config(data_dir, **overrides):
    values = dict(backend='line', data_dir=data_dir / 'calib', enable_zx=False, sweep_shots=500,
                  sample_shots=1000, validation_shots=4000, window_s=1800.0, seed=2)
    values.update(overrides)
    return DaemonConfig(**values)


class TestCalibrationLoop:
    """Test suite for served calibrations feeding compilation"""

    @pytest.mark.integration
    @pytest.mark.calibration
    @pytest.mark.service
    def test_posted_calibrations_drive_compilation(self, line_backend, data_dir, query_client):
        """On a drifted device the fresh fits beat the vendor pulses and compile to short, accurate pulses"""
        line_backend.device.set_drive_gain(0, 0.95)
        line_backend.device.set_drive_gain(1, 1.05)
        daemon = CalibrationDaemon(daemon_config(data_dir), line_backend, client=query_client)
        report = daemon.run_cycle()
        assert {a.action for a in report.actions} == {'posted'}
        assert query_client.get('rx', 0)['version'] == 1

        library = query_client.library(line_backend.defaults())
        assert set(library.rx) == {0, 1}
        error, duration = run_benchmark(rotation_circuit(math.pi / 2), line_backend, library, 'squeeze',
                                        noiseless=True)
        _, baseline = run_benchmark(rotation_circuit(math.pi / 2), line_backend, library, 'baseline',
                                    noiseless=True)
        assert error < 0.02
        assert duration < baseline

    @pytest.mark.integration
    @pytest.mark.calibration
    @pytest.mark.slow
    def test_recalibration_recovers_from_drift(self, line_backend, data_dir):
        """A stale library mis-rotates after drift; the next cycle corrects it"""
        line_backend.device.set_drive_gain(0, 0.95)
        daemon = CalibrationDaemon(daemon_config(data_dir, qubits=[0]), line_backend)
        daemon.run_cycle()
        stale = daemon.library()

        line_backend.device.set_drive_gain(0, 1.05)
        line_backend.advance_time(3600.0)
        circuit = rotation_circuit(math.pi / 2)
        stale_error, _ = run_benchmark(circuit, line_backend, stale, 'squeeze', noiseless=True)

        daemon.run_cycle()
        fresh_error, _ = run_benchmark(circuit, line_backend, daemon.library(), 'squeeze', noiseless=True)
        assert stale_error > 0.05
        assert fresh_error < 0.02

    @pytest.mark.integration
    @pytest.mark.calibration
    def test_restart_keeps_served_state(self, line_backend, data_dir, query_client):
        """A new daemon reads back accepted fits and does not need to repost them"""
        line_backend.device.set_drive_gain(1, 1.05)
        first = CalibrationDaemon(daemon_config(data_dir, qubits=[1]), line_backend, client=query_client)
        first.run_cycle()
        second = CalibrationDaemon(daemon_config(data_dir, qubits=[1]), line_backend, client=query_client)
        assert second.rx[1].t0 == first.rx[1].t0
        assert second.rx[1].a0 == pytest.approx(first.rx[1].a0)
        assert second.rx[1].fit.a1 == pytest.approx(first.rx[1].fit.a1)


class TestDriftTracking:
    """Test suite for calibration cycles tracking stochastic drive drift"""

    ANGLES = tuple(np.linspace(math.pi / 8, math.pi, 8))

    def rx_error(self, backend, library, mode, qubit):
        results = tomography_sweep('rx', backend, library, mode, self.ANGLES, qubits=(qubit,), bases=('Z',),
                                   noiseless=True)
        return results['Z'].mean_error

    def compare_after_two_cycles(self, seed, data_dir):
        """(squeeze error, frozen baseline error) summed over both qubits of a drifting line device"""
        drift = DriftConfig(sigma_drive=0.03, sigma_cr=0.0)
        backend = SimulatedBackend(line_config(2, drift=drift, seed=seed))
        try:
            frozen = PulseLibrary.from_defaults(backend.defaults())
            backend.advance_time(2 * 24 * 3600.0)
            config = daemon_config(data_dir / f'seed{seed}', seed=seed, cadence_s=7200.0)
            daemon = CalibrationDaemon(config, backend)
            daemon.run_cycle()
            backend.advance_time(config.cadence_s)
            daemon.run_cycle()

            library = daemon.library()
            squeeze = baseline = 0.0
            for qubit in range(2):
                # a qubit whose fit never validated compiles as baseline
                mode = 'squeeze' if qubit in library.rx else 'baseline'
                squeeze += self.rx_error(backend, library, mode, qubit)
                baseline += self.rx_error(backend, frozen, 'baseline', qubit)
            return squeeze, baseline
        finally:
            backend.close()

    @pytest.mark.integration
    @pytest.mark.calibration
    @pytest.mark.slow
    def test_squeeze_beats_frozen_baseline_under_drift(self, data_dir):
        """Across seeded drift paths the recalibrated pulses win a one-sided sign test"""
        seeds = range(12)
        outcomes = [self.compare_after_two_cycles(seed, data_dir) for seed in seeds]
        wins = sum(squeeze < baseline for squeeze, baseline in outcomes)
        assert binomtest(wins, len(outcomes), alternative='greater').pvalue < 0.05
