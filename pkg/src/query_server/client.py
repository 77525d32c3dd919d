"""
HTTP client for the query server with retry and exponential backoff.
"""

import logging
import time

import httpx

from src.exceptions import BackendUnavailableError, NotFoundError, SchemaError
from src.transpiler.library import PulseLibrary, pair_key

logger = logging.getLogger(__name__)


class QueryClient:
    """Reads and writes pulse parameters; transport failures are retried"""

    def __init__(self, base_url, timeout=10.0, retries=3, backoff_s=0.5, max_backoff_s=30.0,
                 client=None, sleep=time.sleep):
        self.base_url = base_url.rstrip('/')
        self.retries = retries
        self.backoff_s = backoff_s
        self.max_backoff_s = max_backoff_s
        self._sleep = sleep
        self._client = client or httpx.Client(base_url=self.base_url, timeout=timeout)

    def _request(self, method, path, **kwargs):
        delay = self.backoff_s
        for attempt in range(self.retries + 1):
            try:
                response = self._client.request(method, path, **kwargs)
            except httpx.TransportError as exc:
                if attempt == self.retries:
                    raise BackendUnavailableError(f"query server at {self.base_url} unreachable: {exc}") from exc
                logger.warning("⚠️ query server unreachable (attempt %d/%d), retrying in %.1fs",
                               attempt + 1, self.retries + 1, delay)
                self._sleep(delay)
                delay = min(delay * 2, self.max_backoff_s)
                continue
            if response.status_code == 404:
                raise NotFoundError(response.json().get('detail', path))
            if response.status_code == 400:
                raise SchemaError(response.json().get('detail', 'rejected payload'))
            response.raise_for_status()
            return response.json()

    def put(self, kind, key, payload):
        if isinstance(key, tuple):
            key = pair_key(key)
        return self._request('PUT', f'/v1/params/{kind}/{key}', json=payload)['version']

    def get(self, kind, key):
        if isinstance(key, tuple):
            key = pair_key(key)
        return self._request('GET', f'/v1/params/{kind}/{key}')

    def snapshot(self):
        return self._request('GET', '/v1/snapshot')

    def health(self):
        return self._request('GET', '/v1/health')

    def library(self, defaults):
        """Device defaults overlaid with the current snapshot"""
        return PulseLibrary.from_defaults(defaults).merge_snapshot(self.snapshot())

    def close(self):
        self._client.close()
