import pytest

from src.simulator.backend import SimulatedBackend
from src.simulator.models.device import DeviceModel, lima_config, line_config
from src.simulator.oracle import ideal_pulse_library


@pytest.fixture
def lima_device():
    """Noiseless five-qubit truth model"""
    return DeviceModel(lima_config())


@pytest.fixture
def lima_backend():
    """Noiseless simulated lima backend, closed after the test"""
    backend = SimulatedBackend(lima_config())
    yield backend
    backend.close()


@pytest.fixture
def noisy_backend():
    """Lima backend with depolarizing noise on every pulse"""
    backend = SimulatedBackend(lima_config(depolarizing_rate=2e-5))
    yield backend
    backend.close()


@pytest.fixture
def line_backend():
    """Two-qubit chain; small enough for full calibration cycles"""
    backend = SimulatedBackend(line_config(2, seed=3))
    yield backend
    backend.close()


@pytest.fixture
def ideal_library(lima_backend):
    """Exact pulse library for the lima truth model"""
    return ideal_pulse_library(lima_backend.device)


@pytest.fixture
def base_cr_pulse():
    """Reference CR(pi/4) pulse: A=0.3, w=400, d=464, sigma=16"""
    from src.pulse import GaussianSquarePulse
    return GaussianSquarePulse(0.3, 400.0, 464, 16.0)


@pytest.fixture
def data_dir(tmp_path):
    """Scratch data directory for stores and calibration records"""
    path = tmp_path / 'data'
    path.mkdir()
    return path
