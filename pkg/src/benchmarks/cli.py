"""
``bench`` entry point: tomography, randomized benchmarking, algorithm circuits
and duration tables.
"""

import argparse
import math
import sys
from pathlib import Path

import numpy as np
import pandas as pd

from src.benchmarks import plots
from src.benchmarks.algorithms import BENCHMARKS, make_benchmark, run_benchmark
from src.benchmarks.durations import (
    load_appendix,
    rzx_duration_table,
    single_qubit_table,
    speedup_summary,
)
from src.benchmarks.rb import rb_run
from src.benchmarks.tomography import sweep_frame, tomography_sweep
from src.circuit import Gate
from src.config import get_settings
from src.exceptions import BackendUnavailableError, CalibrationMissingError, SqueezeError
from src.logging_config import setup_logging
from src.query_server.client import QueryClient
from src.simulator.backend import SimulatedBackend
from src.simulator.models.device import load_device_config
from src.simulator.oracle import ideal_pulse_library
from src.simulator.remote import RemoteBackend
from src.transpiler.equivalence import MODES
from src.transpiler.library import PulseLibrary


def _int_list(text):
    return [int(v) for v in text.split(',') if v.strip()]


def build_parser():
    settings = get_settings()
    parser = argparse.ArgumentParser(description='Benchmarks for pulse-level compilation')
    parser.add_argument('command', choices=('tomography', 'rb', 'algo', 'durations'))
    parser.add_argument('--mode', action='append', choices=MODES, default=None,
                        help='compilation mode; repeat for several (default: all)')
    parser.add_argument('--backend', default=settings.backend_url or 'lima',
                        help='device preset, device JSON or backend URL')
    parser.add_argument('--shots', type=int, default=settings.default_shots,
                        help='shots per schedule; 0 reads exact probabilities')
    parser.add_argument('--seed', type=int, default=0)
    parser.add_argument('--csv', default=None, help='write the result table here')
    parser.add_argument('--plot', default=None, help='write a figure here (.svg or .png)')
    parser.add_argument('--query-url', default=settings.query_url)
    parser.add_argument('--offline', default=None, help='pulse library JSON')
    parser.add_argument('--noiseless', action='store_true')
    parser.add_argument('--depolarizing-rate', type=float, default=None,
                        help='override the simulated device depolarizing rate (per dt)')

    parser.add_argument('--family', default=None, help='rx|rzx for tomography, su2|su4 for rb')
    parser.add_argument('--qubits', type=_int_list, default=None, help='physical qubits, comma separated')
    parser.add_argument('--angles', type=int, default=20, help='number of tomography angles in [0, pi]')
    parser.add_argument('--depths', type=_int_list, default=[1, 2, 4, 8, 16, 32])
    parser.add_argument('--sequences', type=int, default=5)
    parser.add_argument('--name', choices=BENCHMARKS, default='bv')
    parser.add_argument('--size', type=int, default=3)
    parser.add_argument('--appendix', default=None, help='appendix durations CSV')
    parser.add_argument('--pair', type=_int_list, default=[0, 1])
    parser.add_argument('--log-level', default=settings.log_level)
    return parser


def open_bench_backend(args):
    if str(args.backend).startswith(('http://', 'https://')):
        return RemoteBackend(args.backend, timeout=get_settings().http_timeout_s)
    config = load_device_config(args.backend)
    if args.depolarizing_rate is not None:
        config = config.model_copy(update={'depolarizing_rate': args.depolarizing_rate})
    return SimulatedBackend(config)


def load_library(args, backend, logger):
    """Offline file, then the query server, then the simulator's own truth model"""
    if args.offline:
        return PulseLibrary.load(args.offline)
    defaults = backend.defaults()
    if args.query_url:
        client = QueryClient(args.query_url, timeout=get_settings().http_timeout_s)
        try:
            return client.library(defaults)
        except BackendUnavailableError as exc:
            logger.warning("⚠️ %s; continuing without served calibrations", exc)
        finally:
            client.close()
    if isinstance(backend, SimulatedBackend):
        return ideal_pulse_library(backend.device)
    return PulseLibrary.from_defaults(defaults)


def _per_mode(modes, logger, run):
    """run(mode) for every mode; squeeze falls back to baseline when calibrations are missing"""
    results = {}
    for mode in modes:
        try:
            results[mode] = run(mode)
        except CalibrationMissingError as exc:
            if mode != 'squeeze':
                raise
            logger.warning("⚠️ %s; running squeeze as baseline", exc)
            results[mode] = run('baseline')
    return results


def cmd_tomography(args, backend, library, modes, logger):
    family = args.family or 'rx'
    angles = np.linspace(0.0, math.pi, args.angles)
    shots = args.shots or None
    sweeps = _per_mode(modes, logger, lambda mode: tomography_sweep(
        family, backend, library, mode, angles, qubits=args.qubits, shots=shots, noiseless=args.noiseless))
    frame = pd.concat([sweep_frame(s).assign(mode=mode) for mode, s in sweeps.items()], ignore_index=True)
    for (mode, basis), group in frame.groupby(['mode', 'basis']):
        logger.info("📊 %s %s basis: mean error %.4g", mode, basis, group['error'].mean())
    if args.plot:
        plots.plot_tomography(frame, args.plot)
    return frame


def cmd_rb(args, backend, library, modes, logger):
    family = args.family or 'su2'
    shots = args.shots or None
    series = _per_mode(modes, logger, lambda mode: rb_run(
        backend, library, mode, family, args.depths, args.sequences, qubits=args.qubits,
        seed=args.seed, shots=shots, noiseless=args.noiseless))
    for mode, s in series.items():
        logger.info("📊 %s: p=%.5f, error per gate %.3e ± %.1e", mode, s.fit.p, s.epsilon, s.epsilon_stderr)
    if args.plot:
        plots.plot_rb(series, args.plot)
    return pd.concat([s.to_frame().assign(p=s.fit.p, epsilon=s.epsilon) for s in series.values()],
                     ignore_index=True)


def cmd_algo(args, backend, library, modes, logger):
    circuit = make_benchmark(args.name, args.size, seed=args.seed)
    shots = args.shots or None
    results = _per_mode(modes, logger, lambda mode: run_benchmark(
        circuit, backend, library, mode, shots=shots, noiseless=args.noiseless))
    rows = [{'benchmark': args.name, 'size': args.size, 'mode': mode, 'error': err, 'duration_dt': dur}
            for mode, (err, dur) in results.items()]
    for row in rows:
        logger.info("📊 %s(%d) %s: 1-norm error %.4g, %d dt", args.name, args.size, row['mode'],
                    row['error'], row['duration_dt'])
    return pd.DataFrame(rows)


def cmd_durations(args, backend, library, modes, logger):
    appendix = load_appendix(args.appendix)
    single_modes = [m for m in modes if m != 'earnest'] or ['baseline', 'gokhale', 'squeeze']
    u3 = single_qubit_table(appendix, modes=single_modes)
    x = single_qubit_table(appendix, gate=Gate('x', (0,)), modes=single_modes)
    reference = 'baseline' if 'baseline' in single_modes else single_modes[0]
    for label, table in (('U3', u3), ('X', x)):
        summary = speedup_summary(table, single_modes, reference)
        for mode, row in summary.iterrows():
            logger.info("📊 %s %s: %.2f ± %.2f dt (%.2fx)", label, mode, row['mean_dt'], row['std_dt'], row['speedup'])
    if args.plot:
        plots.plot_durations(speedup_summary(u3, single_modes, reference), args.plot)

    frames = [u3.assign(gate='u3'), x.assign(gate='x')]
    pair = tuple(args.pair)
    if pair in library.defaults.cr_pulses:
        rzx = rzx_duration_table(library, pair, modes=modes)
        for mode in modes:
            logger.info("📊 Rzx on %s %s: mean %.1f dt", pair, mode, rzx[mode].mean())
        frames.append(rzx.assign(gate='rzx', pair=f"{pair[0]}_{pair[1]}"))
    return pd.concat(frames, ignore_index=True)


COMMANDS = {
    'tomography': cmd_tomography,
    'rb': cmd_rb,
    'algo': cmd_algo,
    'durations': cmd_durations,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    logger = setup_logging('bench', args.log_level, get_settings().log_dir)
    modes = args.mode or list(MODES)
    backend = None
    try:
        backend = open_bench_backend(args)
        library = load_library(args, backend, logger)
        logger.info("🚀 bench %s on %s, modes %s", args.command, args.backend, ', '.join(modes))
        table = COMMANDS[args.command](args, backend, library, modes, logger)
    except (SqueezeError, OSError, ValueError) as exc:
        logger.error("❌ bench %s failed: %s", args.command, exc)
        return 1
    finally:
        if backend is not None:
            backend.close()
    if args.csv:
        Path(args.csv).parent.mkdir(parents=True, exist_ok=True)
        table.to_csv(args.csv, index=False)
        logger.info("✅ wrote %d row(s) to %s", len(table), args.csv)
    return 0


if __name__ == '__main__':
    sys.exit(main())
