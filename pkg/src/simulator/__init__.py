"""Simulated transmon backend"""

from src.simulator.backend import Backend, SimulatedBackend, run_schedules
from src.simulator.engine import EvolvedState, evolve, sample, schedule_unitary
from src.simulator.models import (
    MAX_SCHEDULES_PER_JOB,
    PRESETS,
    DeviceConfig,
    DeviceDefaults,
    DeviceModel,
    DriftConfig,
    JobRequest,
    JobResult,
    lima_config,
    line_config,
    load_device_config,
    nairobi_config,
)
