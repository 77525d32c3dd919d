"""
JSON-over-HTTP access to a simulated backend.

``create_backend_app`` exposes a ``SimulatedBackend``; ``RemoteBackend`` is the
matching client and satisfies the same ``Backend`` protocol.
"""

import logging

import httpx
from fastapi import Body, FastAPI, HTTPException

from src.exceptions import BackendUnavailableError, BatchLimitError, DeviceError, SchemaError
from src.pulse import schedule_from_dict, schedule_to_dict
from src.simulator.backend import SimulatedBackend
from src.simulator.models.device import DeviceDefaults, load_device_config
from src.simulator.models.jobs import JobRequest, JobResult

logger = logging.getLogger(__name__)


def create_backend_app(backend):
    app = FastAPI(title='pulse-squeeze simulated backend', version='1.0.0')

    @app.post('/v1/jobs')
    def submit(payload: dict = Body(...)):
        try:
            request = JobRequest.from_dict(payload)
        except (SchemaError, KeyError, TypeError, ValueError) as exc:
            raise HTTPException(status_code=400, detail=f"malformed job: {exc}")
        try:
            return backend.submit(request).to_dict()
        except BatchLimitError as exc:
            raise HTTPException(status_code=413, detail=str(exc))
        except DeviceError as exc:
            raise HTTPException(status_code=422, detail=str(exc))

    @app.post('/v1/probabilities')
    def probabilities(payload: dict = Body(...)):
        schedule = schedule_from_dict(payload['schedule'])
        return backend.probabilities(schedule, noiseless=bool(payload.get('noiseless', False)))

    @app.get('/v1/defaults')
    def defaults():
        return backend.defaults().to_dict()

    @app.get('/v1/clock')
    def clock():
        return {'clock': backend.clock()}

    @app.post('/v1/advance')
    def advance(payload: dict = Body(...)):
        seconds = float(payload.get('seconds', 0.0))
        if seconds < 0:
            raise HTTPException(status_code=400, detail='seconds must be non-negative')
        return {'clock': backend.advance_time(seconds)}

    @app.get('/v1/health')
    def health():
        return {'status': 'ok', 'device': backend.name, 'clock': backend.clock()}

    return app


class RemoteBackend:
    """httpx client for a backend served by ``create_backend_app``"""

    def __init__(self, base_url, timeout=30.0, client=None):
        self.base_url = base_url.rstrip('/')
        self._client = client or httpx.Client(base_url=self.base_url, timeout=timeout)

    def _call(self, method, path, **kwargs):
        try:
            response = self._client.request(method, path, **kwargs)
        except httpx.TransportError as exc:
            raise BackendUnavailableError(f"backend at {self.base_url} unreachable: {exc}") from exc
        if response.status_code == 413:
            raise BatchLimitError(response.json().get('detail', 'batch limit exceeded'))
        if response.status_code == 422:
            raise DeviceError(response.json().get('detail', 'device error'))
        if response.status_code >= 400:
            raise BackendUnavailableError(f"backend error {response.status_code}: {response.text}")
        return response.json()

    def submit(self, request):
        return JobResult.from_dict(self._call('POST', '/v1/jobs', json=request.to_dict()))

    def probabilities(self, schedule, noiseless=False):
        return self._call('POST', '/v1/probabilities',
                          json={'schedule': schedule_to_dict(schedule), 'noiseless': noiseless})

    def defaults(self):
        return DeviceDefaults.from_dict(self._call('GET', '/v1/defaults'))

    def clock(self):
        return float(self._call('GET', '/v1/clock')['clock'])

    def advance_time(self, seconds):
        return float(self._call('POST', '/v1/advance', json={'seconds': seconds})['clock'])

    def close(self):
        self._client.close()


def open_backend(target, timeout=30.0):
    """``http(s)://`` URL -> RemoteBackend; preset name or device JSON path -> SimulatedBackend"""
    if str(target).startswith(('http://', 'https://')):
        return RemoteBackend(str(target), timeout=timeout)
    return SimulatedBackend(load_device_config(target))
