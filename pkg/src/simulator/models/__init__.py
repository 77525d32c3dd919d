from src.simulator.models.device import (
    PRESETS,
    DeviceConfig,
    DeviceDefaults,
    DeviceModel,
    DriftConfig,
    lima_config,
    line_config,
    load_device_config,
    nairobi_config,
)
from src.simulator.models.jobs import MAX_SCHEDULES_PER_JOB, JobRequest, JobResult
