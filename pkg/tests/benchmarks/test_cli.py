import math

import pandas as pd
import pytest

from src.benchmarks import plots
from src.benchmarks.cli import main
from src.benchmarks.durations import single_qubit_table, speedup_summary
from src.benchmarks.rb import RbFit, RbSeries
from src.exceptions import BackendUnavailableError
from src.transpiler import PulseLibrary


class TestPlots:
    """Test suite for static figures"""

    @pytest.mark.unit
    @pytest.mark.benchmark
    def test_tomography_figure(self, tmp_path):
        """Error curves are written as SVG"""
        frame = pd.DataFrame({
            'family': 'rx', 'basis': ['Z', 'Z', 'X', 'X'], 'theta': [0.0, math.pi] * 2,
            'error': [0.0, 0.02, 0.01, 0.03], 'mode': 'squeeze',
        })
        path = plots.plot_tomography(frame, tmp_path / 'figs' / 'tomo.svg')
        assert path.exists() and path.stat().st_size > 0

    @pytest.mark.unit
    @pytest.mark.benchmark
    def test_rb_figure(self, tmp_path):
        """Decay curves with fits are written as PNG"""
        depths = [1, 2, 4, 8]
        series = RbSeries('su2', 'squeeze', 1, depths, [0.5 * 0.99 ** k + 0.5 for k in depths],
                          [0.001] * 4, RbFit(0.5, 0.5, 0.99, 0.005))
        path = plots.plot_rb({'squeeze': series}, tmp_path / 'rb.png')
        assert path.stat().st_size > 0

    @pytest.mark.unit
    @pytest.mark.benchmark
    def test_duration_figure(self, tmp_path):
        """Mean durations per mode are written as bars"""
        path = plots.plot_durations(speedup_summary(single_qubit_table()), tmp_path / 'durations.svg')
        assert path.exists()


class TestBenchCli:
    """Test suite for the bench entry point"""

    @pytest.mark.integration
    @pytest.mark.benchmark
    def test_durations(self, fresh_settings, tmp_path):
        """Duration tables for U3, X and Rzx go to one CSV"""
        csv = tmp_path / 'out' / 'durations.csv'
        assert main(['durations', '--csv', str(csv), '--plot', str(tmp_path / 'durations.svg')]) == 0
        table = pd.read_csv(csv)
        assert set(table['gate']) == {'u3', 'x', 'rzx'}
        assert (table['gate'] == 'u3').sum() == 27
        assert (table['gate'] == 'rzx').sum() == 20
        assert (tmp_path / 'durations.svg').exists()

    @pytest.mark.integration
    @pytest.mark.benchmark
    def test_algo_exact(self, fresh_settings, tmp_path):
        """With zero shots and no noise every mode reproduces the ideal output"""
        csv = tmp_path / 'algo.csv'
        argv = ['algo', '--name', 'bv', '--size', '2', '--shots', '0', '--noiseless',
                '--mode', 'baseline', '--mode', 'squeeze', '--csv', str(csv)]
        assert main(argv) == 0
        table = pd.read_csv(csv)
        assert list(table['mode']) == ['baseline', 'squeeze']
        assert (table['error'] < 1e-6).all()
        assert table.set_index('mode').loc['squeeze', 'duration_dt'] < table.set_index('mode').loc['baseline',
                                                                                                     'duration_dt']

    @pytest.mark.integration
    @pytest.mark.benchmark
    def test_squeeze_falls_back_without_calibrations(self, fresh_settings, tmp_path, lima_device):
        """An offline library without Rx fits runs squeeze as baseline"""
        offline = tmp_path / 'library.json'
        PulseLibrary.from_defaults(lima_device.defaults()).save(offline)
        csv = tmp_path / 'algo.csv'
        argv = ['algo', '--name', 'bv', '--size', '2', '--shots', '0', '--noiseless', '--offline', str(offline),
                '--mode', 'baseline', '--mode', 'squeeze', '--csv', str(csv)]
        assert main(argv) == 0
        durations = pd.read_csv(csv).set_index('mode')['duration_dt']
        assert durations['squeeze'] == durations['baseline']

    @pytest.mark.integration
    @pytest.mark.benchmark
    def test_unreachable_query_server(self, fresh_settings, tmp_path, mocker):
        """Served calibrations are optional; the simulator's own library is used instead"""
        client = mocker.patch('src.benchmarks.cli.QueryClient')
        client.return_value.library.side_effect = BackendUnavailableError('query server down')
        argv = ['algo', '--name', 'bv', '--size', '1', '--shots', '0', '--noiseless', '--mode', 'squeeze',
                '--query-url', 'http://127.0.0.1:9', '--csv', str(tmp_path / 'algo.csv')]
        assert main(argv) == 0
        client.return_value.close.assert_called_once()

    @pytest.mark.integration
    @pytest.mark.benchmark
    def test_tomography_with_plot(self, fresh_settings, tmp_path):
        """Tomography rows carry the mode; the figure is written"""
        csv, figure = tmp_path / 'tomo.csv', tmp_path / 'tomo.svg'
        argv = ['tomography', '--family', 'rx', '--angles', '3', '--shots', '0', '--noiseless',
                '--mode', 'squeeze', '--csv', str(csv), '--plot', str(figure)]
        assert main(argv) == 0
        table = pd.read_csv(csv)
        assert len(table) == 9
        assert set(table['mode']) == {'squeeze'}
        assert figure.exists()

    @pytest.mark.integration
    @pytest.mark.benchmark
    @pytest.mark.slow
    def test_rb_with_noise(self, fresh_settings, tmp_path):
        """RB on a noisy preset writes survival per depth and the fitted error"""
        csv = tmp_path / 'rb.csv'
        argv = ['rb', '--depths', '1,2,4,8', '--sequences', '2', '--shots', '0', '--mode', 'squeeze',
                '--depolarizing-rate', '2e-5', '--csv', str(csv)]
        assert main(argv) == 0
        table = pd.read_csv(csv)
        assert list(table['depth']) == [1, 2, 4, 8]
        assert (table['epsilon'] > 0).all()

    @pytest.mark.unit
    @pytest.mark.benchmark
    def test_unknown_backend(self, fresh_settings, tmp_path):
        """A backend that is neither a preset nor a file exits with 1"""
        assert main(['algo', '--backend', str(tmp_path / 'nowhere.json')]) == 1
