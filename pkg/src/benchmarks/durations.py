"""
Schedule duration accounting.

Every number here comes straight from pulse parameters through the
transpiler; nothing is sampled.
"""

import logging
import math
from pathlib import Path

import numpy as np
import pandas as pd

from src.calibration.rx import RxCalibration, SinFit
from src.circuit import Circuit, Gate
from src.exceptions import SqueezeError
from src.pulse import DragPulse
from src.simulator.models.device import DeviceDefaults
from src.transpiler.equivalence import basis_for_mode
from src.transpiler.library import PulseLibrary
from src.transpiler.pass_manager import transpile

logger = logging.getLogger(__name__)

APPENDIX_PATH = Path(__file__).resolve().parents[2] / 'data' / 'appendix_durations.csv'
SINGLE_QUBIT_MODES = ('baseline', 'gokhale', 'squeeze')
U3_SAMPLE = (1.1, 0.4, -0.7)
DEFAULT_X_DURATION = 160
DEFAULT_X_SIGMA = 40.0


def load_appendix(path=None):
    """Per-qubit default X amplitude and fastest calibrated Rx duration"""
    frame = pd.read_csv(path or APPENDIX_PATH)
    missing = {'device', 'qubit', 'x_amplitude', 'fastest_duration'} - set(frame.columns)
    if missing:
        raise ValueError(f"appendix table lacks column(s) {sorted(missing)}")
    return frame


def single_qubit_library(x_amplitude, fastest_duration):
    """One-qubit library with the vendor X pulse and an exact Rx fit at ``fastest_duration``"""
    x_pulse = DragPulse(float(x_amplitude), DEFAULT_X_DURATION, DEFAULT_X_SIGMA, 0.0)
    t0 = int(fastest_duration)
    a0 = min(float(x_amplitude) * DEFAULT_X_DURATION / t0, 1.0)
    calibration = RxCalibration(0, t0, a0, SinFit.ideal(a0), t0 / 4.0)
    return PulseLibrary.from_defaults(DeviceDefaults(1, {0: x_pulse}, {})).with_rx(calibration)


def _single_gate_duration(gate, library, mode):
    circuit = Circuit(library.n_qubits, (gate,))
    return transpile(circuit, library, mode).duration


def single_qubit_table(appendix=None, gate=None, modes=SINGLE_QUBIT_MODES):
    """Duration of one single-qubit gate per listed qubit and mode"""
    appendix = load_appendix() if appendix is None else appendix
    gate = gate or Gate('u3', (0,), U3_SAMPLE)
    rows = []
    for record in appendix.itertuples(index=False):
        library = single_qubit_library(record.x_amplitude, record.fastest_duration)
        row = {'device': record.device, 'qubit': int(record.qubit)}
        for mode in modes:
            row[mode] = _single_gate_duration(gate, library, mode)
        rows.append(row)
    return pd.DataFrame(rows)


def speedup_summary(table, modes=SINGLE_QUBIT_MODES, reference='baseline'):
    """Mean, standard deviation and speed-up against ``reference`` for each mode column"""
    summary = pd.DataFrame({
        'mean_dt': [table[m].mean() for m in modes],
        'std_dt': [table[m].std(ddof=0) for m in modes],
    }, index=list(modes))
    summary['speedup'] = summary.loc[reference, 'mean_dt'] / summary['mean_dt']
    return summary


def interaction_circuit(theta, pair, mode, n_qubits):
    """The ZX-type interaction a mode compiles natively.

    Rzx and Rzz differ only by Hadamards on the target, which fold into
    neighbouring single-qubit gates in real circuits; CNOT-basis modes are
    charged for the two-CNOT Rzz core.
    """
    kind = 'rzx' if 'rzx' in basis_for_mode(mode) else 'rzz'
    return Circuit(n_qubits, (Gate(kind, tuple(pair), (theta,)),))


def rzx_duration_table(library, pair, thetas=None, modes=('baseline', 'gokhale', 'earnest', 'squeeze')):
    """Duration of the two-qubit interaction per angle and mode for one directed pair"""
    thetas = np.linspace(math.pi / 20, math.pi, 20) if thetas is None else thetas
    rows = []
    for theta in thetas:
        row = {'theta': float(theta)}
        for mode in modes:
            circuit = interaction_circuit(float(theta), pair, mode, library.n_qubits)
            row[mode] = transpile(circuit, library, mode).duration
        rows.append(row)
    return pd.DataFrame(rows)


def duration_report(circuits, modes, library):
    """Long table of (circuit, mode, duration_dt, error); a failing cell keeps its error text"""
    rows = []
    for name, circuit in circuits.items():
        for mode in modes:
            try:
                duration, error = transpile(circuit, library, mode).duration, None
            except SqueezeError as exc:
                logger.warning("⚠️ %s in %s mode failed: %s", name, mode, exc)
                duration, error = float('nan'), str(exc)
            rows.append({'circuit': name, 'mode': mode, 'duration_dt': duration, 'error': error})
    return pd.DataFrame(rows)
