"""
In-process simulated backend.

All device access goes through a single worker thread, so concurrent callers
are served strictly in submission order.
"""

import itertools
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Protocol

from src.exceptions import BatchLimitError
from src.simulator.engine import evolve, measured_qubits, sample, schedule_unitary
from src.simulator.models.device import DeviceModel
from src.simulator.models.jobs import MAX_SCHEDULES_PER_JOB, JobRequest, JobResult

logger = logging.getLogger(__name__)


class Backend(Protocol):
    """Anything the calibration code and benchmarks can submit schedules to"""

    def submit(self, request: JobRequest) -> JobResult: ...

    def defaults(self): ...

    def clock(self) -> float: ...

    def advance_time(self, seconds: float) -> float: ...


class SimulatedBackend:
    """Owns a ``DeviceModel`` and executes jobs FIFO on one worker"""

    def __init__(self, device, max_batch=MAX_SCHEDULES_PER_JOB):
        """Initialize the backend around a device model or config"""
        self.device = device if isinstance(device, DeviceModel) else DeviceModel(device)
        self.max_batch = max_batch
        self._executor = ThreadPoolExecutor(max_workers=1, thread_name_prefix='sim-backend')
        self._job_counter = itertools.count(1)

    @property
    def name(self):
        return self.device.config.name

    def submit_async(self, request):
        if len(request.schedules) > self.max_batch:
            raise BatchLimitError(f"{len(request.schedules)} schedules exceed the limit of {self.max_batch} per job")
        if request.shots <= 0:
            raise ValueError(f"shots must be positive, got {request.shots}")
        return self._executor.submit(self._run, request)

    def submit(self, request):
        return self.submit_async(request).result()

    def _run(self, request):
        device = self.device
        counts = []
        for schedule in request.schedules:
            state = evolve(schedule, device, noiseless=request.noiseless)
            measure = measured_qubits(schedule, device)
            confusion = [(0.0, 0.0) if request.noiseless else device.confusion[q] for q in measure]
            probs = state.probabilities(measure)
            counts.append(sample(probs, request.shots, confusion, device.shot_rng))
        device.clock += device.queue_delay_s
        job_id = f"{self.name}-{next(self._job_counter)}"
        logger.debug("job %s: %d schedule(s), %d shots", job_id, len(request.schedules), request.shots)
        return JobResult(counts, device.clock, job_id)

    def probabilities(self, schedule, noiseless=False):
        """Exact outcome distribution of one schedule as {bitstring: probability}"""
        def run():
            state = evolve(schedule, self.device, noiseless=noiseless)
            measure = measured_qubits(schedule, self.device)
            probs = state.probabilities(measure)
            width = len(measure)
            return {format(i, f'0{width}b'): float(p) for i, p in enumerate(probs)}
        return self._executor.submit(run).result()

    def unitary(self, schedule, qubits=None):
        return self._executor.submit(schedule_unitary, schedule, self.device, qubits).result()

    def defaults(self):
        return self._executor.submit(self.device.defaults).result()

    def clock(self):
        return self.device.clock

    def advance_time(self, seconds):
        return self._executor.submit(lambda: self.device.advance_time(seconds).clock).result()

    def close(self):
        self._executor.shutdown(wait=True)

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()


def run_schedules(backend, schedules, shots, noiseless=False):
    """Submit any number of schedules in batches the backend accepts; counts in input order"""
    schedules = list(schedules)
    counts = []
    for start in range(0, len(schedules), MAX_SCHEDULES_PER_JOB):
        chunk = schedules[start:start + MAX_SCHEDULES_PER_JOB]
        counts.extend(backend.submit(JobRequest(tuple(chunk), shots, noiseless)).counts)
    return counts
