"""
Calibration results database.

One append-only JSON-lines file per qubit or pair under
``<data_dir>/calibration/``. Every line is ``{timestamp, kind, params, score}``.
The daemon appends to it during a cycle and replays it after a restart.
"""

import json
import logging
import threading
from collections import defaultdict
from pathlib import Path

import pandas as pd

from src.calibration.particles import Particle
from src.calibration.rx import CalibSample

logger = logging.getLogger(__name__)

RX_SAMPLE = 'rx_sample'
RX_SWEEP = 'rx_sweep'
RX_FIT = 'rx_fit'
ZX_GENERATION = 'zx_generation'
KINDS = (RX_SAMPLE, RX_SWEEP, RX_FIT, ZX_GENERATION)


def qubit_key(qubit):
    return f"rx_{qubit}"


def pair_key(pair):
    return f"zx_{pair[0]}_{pair[1]}"


class CalibrationDB:
    """Append-only per-key record files with pandas views for analysis"""

    def __init__(self, data_dir):
        """Initialize the database directory"""
        self.root = Path(data_dir) / 'calibration'
        self.root.mkdir(parents=True, exist_ok=True)
        self._locks = defaultdict(threading.Lock)

    def _path(self, key):
        return self.root / f"{key}.jsonl"

    def append(self, key, kind, params, timestamp, score=None):
        if kind not in KINDS:
            raise ValueError(f"unknown record kind {kind!r}")
        line = json.dumps({'timestamp': float(timestamp), 'kind': kind, 'params': params, 'score': score})
        with self._locks[key]:
            with self._path(key).open('a', encoding='utf-8') as handle:
                handle.write(line + '\n')

    def append_many(self, key, kind, rows, timestamp):
        lines = [json.dumps({'timestamp': float(timestamp), 'kind': kind, 'params': row, 'score': None})
                 for row in rows]
        with self._locks[key]:
            with self._path(key).open('a', encoding='utf-8') as handle:
                handle.write(''.join(line + '\n' for line in lines))

    def records(self, key, kind=None):
        path = self._path(key)
        if not path.exists():
            return []
        out = []
        with self._locks[key]:
            lines = path.read_text(encoding='utf-8').splitlines()
        for number, line in enumerate(lines, 1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError:
                logger.warning("⚠️ skipping corrupt line %d in %s", number, path.name)
                continue
            if kind is None or record.get('kind') == kind:
                out.append(record)
        return out

    def latest(self, key, kind):
        records = self.records(key, kind)
        return records[-1] if records else None

    def frame(self, key, kind=None):
        """All records of a key as a flat DataFrame"""
        records = self.records(key, kind)
        if not records:
            return pd.DataFrame(columns=['timestamp', 'kind', 'score'])
        return pd.json_normalize(records)

    def keys(self):
        return sorted(path.stem for path in self.root.glob('*.jsonl'))

    # Rx helpers

    def append_samples(self, qubit, samples):
        by_stamp = defaultdict(list)
        for s in samples:
            by_stamp[s.timestamp].append({'amplitude': s.amplitude, 'p1': s.p1, 'shots': s.shots})
        for stamp, rows in by_stamp.items():
            self.append_many(qubit_key(qubit), RX_SAMPLE, rows, stamp)

    def samples(self, qubit):
        return [CalibSample(r['timestamp'], r['params']['amplitude'], r['params']['p1'], r['params']['shots'])
                for r in self.records(qubit_key(qubit), RX_SAMPLE)]

    def samples_frame(self, qubit):
        rows = [{'timestamp': r['timestamp'], **r['params']} for r in self.records(qubit_key(qubit), RX_SAMPLE)]
        return pd.DataFrame(rows, columns=['timestamp', 'amplitude', 'p1', 'shots'])

    def last_sweep(self, qubit):
        """(A0, t0) of the most recent fastest-X sweep, or None"""
        record = self.latest(qubit_key(qubit), RX_SWEEP)
        if record is None:
            return None
        return record['params']['a0'], int(record['params']['t0'])

    # CR helpers

    def append_generation(self, pair, cal, timestamp):
        params = {
            'round': cal.round_index,
            'rounds_since_reset': cal.rounds_since_reset,
            'resets': cal.resets,
            'best': cal.best.to_dict(),
            'particles': [p.to_dict() for p in cal.generation],
        }
        self.append(pair_key(pair), ZX_GENERATION, params, timestamp, score=cal.best.score)

    def replay_generation(self, pair):
        """Latest filter state for a pair: dict with round counters, best and particles, or None"""
        record = self.latest(pair_key(pair), ZX_GENERATION)
        if record is None:
            return None
        params = record['params']
        return {
            'round': int(params['round']),
            'rounds_since_reset': int(params['rounds_since_reset']),
            'resets': int(params.get('resets', 0)),
            'best': Particle.from_dict(params['best']),
            'particles': [Particle.from_dict(p) for p in params['particles']],
            'timestamp': record['timestamp'],
        }
