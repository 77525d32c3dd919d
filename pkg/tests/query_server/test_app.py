import httpx
import pytest
from fastapi.testclient import TestClient

from src.calibration import CrCalibration, RxCalibration, SinFit
from src.exceptions import BackendUnavailableError, NotFoundError, SchemaError
from src.query_server import QueryClient, create_app
from src.query_server.cli import main
from src.query_server.store import ParamStore


def rx_payload(a0=0.3):
    return RxCalibration(0, 64, a0, SinFit.ideal(a0), 16.0, -0.35).to_payload()


@pytest.fixture
def store():
    """In-memory parameter store"""
    store = ParamStore()
    yield store
    store.close()


@pytest.fixture
def http(store):
    """Test client for the query server"""
    return TestClient(create_app(store))


class TestQueryServerApi:
    """Test suite for the HTTP endpoints"""

    @pytest.mark.integration
    @pytest.mark.service
    def test_put_then_get(self, http):
        """PUT answers with the version; GET serves the record"""
        response = http.put('/v1/params/rx/0', json=rx_payload())
        assert response.status_code == 200
        assert response.json() == {'kind': 'rx', 'key': '0', 'version': 1}
        record = http.get('/v1/params/rx/0').json()
        assert record['version'] == 1
        assert record['payload']['t0'] == 64

    @pytest.mark.integration
    @pytest.mark.service
    def test_error_statuses(self, http):
        """Missing records are 404; bad kinds and payloads are 400"""
        assert http.get('/v1/params/rx/4').status_code == 404
        assert http.get('/v1/params/cx/0').status_code == 400
        assert http.put('/v1/params/rx/0', json={'a0': 2.0}).status_code == 400
        assert http.put('/v1/params/zx/0_0', json={}).status_code == 400

    @pytest.mark.integration
    @pytest.mark.service
    def test_snapshot_and_health(self, http):
        """Snapshot and health reflect stored records"""
        http.put('/v1/params/rx/1', json=rx_payload())
        assert http.get('/v1/snapshot').json()['versions']['rx'] == {'1': 1}
        health = http.get('/v1/health').json()
        assert health['status'] == 'ok'
        assert health['records']['rx'] == 1


class TestQueryClient:
    """Test suite for the retrying client"""

    @pytest.fixture
    def client(self, http):
        """QueryClient over the in-process app"""
        client = QueryClient('http://testserver', client=http)
        yield client
        client.close()

    @pytest.mark.integration
    @pytest.mark.service
    def test_put_get_with_pair_keys(self, client, lima_device):
        """Tuple keys are encoded as control_target"""
        payload = CrCalibration.from_defaults(lima_device.defaults(), (1, 0)).to_payload()
        assert client.put('zx', (1, 0), payload) == 1
        assert client.get('zx', (1, 0))['key'] == '1_0'

    @pytest.mark.integration
    @pytest.mark.service
    def test_errors_map_to_exceptions(self, client):
        """404 and 400 become NotFoundError and SchemaError"""
        with pytest.raises(NotFoundError):
            client.get('rx', 3)
        with pytest.raises(SchemaError):
            client.put('rx', 0, {'a0': 0.2})

    @pytest.mark.integration
    @pytest.mark.service
    def test_library_overlays_snapshot(self, client, lima_device):
        """Stored calibrations appear in the pulse library; unknown qubits are ignored"""
        client.put('rx', 0, rx_payload())
        client.put('rx', 9, rx_payload())
        library = client.library(lima_device.defaults())
        assert set(library.rx) == {0}
        assert library.rx_calibration(0).t0 == 64

    @pytest.mark.unit
    @pytest.mark.service
    def test_retries_with_backoff(self):
        """Transport errors are retried with doubling delays, then reported"""
        def refuse(request):
            raise httpx.ConnectError('connection refused', request=request)

        delays = []
        transport = httpx.Client(base_url='http://query', transport=httpx.MockTransport(refuse))
        client = QueryClient('http://query', client=transport, sleep=delays.append)
        with pytest.raises(BackendUnavailableError):
            client.health()
        assert delays == [0.5, 1.0, 2.0]

    @pytest.mark.unit
    @pytest.mark.service
    def test_backoff_is_capped(self):
        """Delays never exceed the configured maximum"""
        def refuse(request):
            raise httpx.ConnectError('connection refused', request=request)

        delays = []
        transport = httpx.Client(base_url='http://query', transport=httpx.MockTransport(refuse))
        client = QueryClient('http://query', client=transport, retries=5, backoff_s=1.0, max_backoff_s=3.0,
                             sleep=delays.append)
        with pytest.raises(BackendUnavailableError):
            client.snapshot()
        assert delays == [1.0, 2.0, 3.0, 3.0, 3.0]

    @pytest.mark.unit
    @pytest.mark.service
    def test_recovers_after_transient_failure(self):
        """A success after a failure returns normally"""
        attempts = []

        def flaky(request):
            attempts.append(request.url.path)
            if len(attempts) == 1:
                raise httpx.ConnectError('connection refused', request=request)
            return httpx.Response(200, json={'status': 'ok'})

        transport = httpx.Client(base_url='http://query', transport=httpx.MockTransport(flaky))
        client = QueryClient('http://query', client=transport, sleep=lambda _: None)
        assert client.health() == {'status': 'ok'}
        assert attempts == ['/v1/health', '/v1/health']


class TestQueryServerCli:
    """Test suite for the query-server entry point"""

    @pytest.mark.unit
    @pytest.mark.service
    def test_serves_store(self, fresh_settings, mocker, tmp_path):
        """The store directory is created and handed to uvicorn"""
        run = mocker.patch('src.query_server.cli.uvicorn.run')
        assert main(['--data-dir', str(tmp_path / 'qs'), '--port', '8199']) == 0
        assert (tmp_path / 'qs' / 'params.sqlite').exists()
        assert run.call_args.kwargs['port'] == 8199
