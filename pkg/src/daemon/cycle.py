"""
One calibration cycle.

Qubits are visited round-robin (sweep when due, collect, clean, fit,
validate, post) and then every pair runs one particle-filter round. Failures
stay local to the key they happened on.
"""

import json
import logging
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import List, Optional

import numpy as np

from src.calibration.cr import CrCalibration, calibrate_cr_round
from src.calibration.rx import ScaledDefaultRx, calibrate_rx, collect_rx_samples, sweep_fastest_x, validate_rx
from src.database.calibration_db import RX_FIT, RX_SWEEP, CalibrationDB, qubit_key
from src.exceptions import BackendUnavailableError, SqueezeError
from src.logging_config import get_logger
from src.transpiler.library import PulseLibrary, pair_key

logger = logging.getLogger(__name__)
events = get_logger(__name__)


@dataclass
class KeyAction:
    kind: str
    key: str
    action: str
    detail: str = ''
    score: Optional[float] = None


@dataclass
class CycleReport:
    cycle: int
    started_at: float
    finished_at: float = 0.0
    skipped: bool = False
    actions: List[KeyAction] = field(default_factory=list)
    pending: List[str] = field(default_factory=list)

    @property
    def posted(self):
        return [a for a in self.actions if a.action == 'posted']

    def to_dict(self):
        return asdict(self)

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True)


def write_report(report, data_dir, stream=None):
    """One JSON line to ``stream`` (if given) and to ``<data_dir>/reports.jsonl``"""
    line = report.to_json()
    if stream is not None:
        print(line, file=stream, flush=True)
    path = Path(data_dir)
    path.mkdir(parents=True, exist_ok=True)
    with (path / 'reports.jsonl').open('a', encoding='utf-8') as handle:
        handle.write(line + '\n')


class CalibrationDaemon:
    """Holds the accepted calibrations and runs cycles against one backend"""

    def __init__(self, config, backend, db=None, client=None):
        """Initialize from config; replays the calibration database for pair state"""
        self.config = config
        self.backend = backend
        self.db = db or CalibrationDB(config.data_dir)
        self.client = client
        self.defaults = backend.defaults()
        self.cycle_index = 0
        self.rx = {}
        self.zx = {}
        self.pending = {}
        self._restore()

    @property
    def qubits(self):
        if self.config.qubits is not None:
            return list(self.config.qubits)
        return sorted(self.defaults.x_pulses)

    @property
    def pairs(self):
        if self.config.pairs is not None:
            return [tuple(p) for p in self.config.pairs]
        return sorted(self.defaults.cr_pulses)

    def _restore(self):
        for pair in self.pairs:
            state = self.db.replay_generation(pair)
            if state is None:
                continue
            cal = CrCalibration.from_defaults(self.defaults, pair)
            cal.best = state['best']
            cal.generation = state['particles']
            cal.round_index = state['round']
            cal.rounds_since_reset = state['rounds_since_reset']
            cal.resets = state['resets']
            cal.timestamp = state['timestamp']
            self.zx[pair] = cal
            logger.info("🔁 pair %s resumes at filter round %d", pair, cal.round_index)
        if self.client is not None:
            try:
                library = self.client.library(self.defaults)
            except BackendUnavailableError as exc:
                logger.warning("⚠️ could not read posted parameters: %s", exc)
            else:
                self.rx.update(library.rx)

    def library(self):
        """Pulse library of everything this daemon has accepted"""
        library = PulseLibrary.from_defaults(self.defaults)
        for cal in self.rx.values():
            library = library.with_rx(cal)
        for pair, cal in self.zx.items():
            if not cal.best.is_baseline:
                library = library.with_zx(cal)
        return library

    def _post(self, kind, key, payload):
        if self.client is None:
            return 'posted'
        try:
            self.client.put(kind, key, payload)
        except BackendUnavailableError as exc:
            logger.warning("⚠️ could not post %s/%s, keeping it pending: %s", kind, key, exc)
            self.pending[(kind, key)] = payload
            return 'pending'
        self.pending.pop((kind, key), None)
        return 'posted'

    def flush_pending(self):
        for (kind, key), payload in list(self.pending.items()):
            self._post(kind, key, payload)

    def calibrate_qubit(self, qubit):
        cfg, db = self.config, self.db
        now = self.backend.clock()
        sweep = db.last_sweep(qubit)
        if sweep is None or self.cycle_index % cfg.resweep_every == 0:
            a0, t0 = sweep_fastest_x(self.backend, qubit, shots=cfg.sweep_shots)
            db.append(qubit_key(qubit), RX_SWEEP, {'a0': a0, 't0': t0}, now)
        else:
            a0, t0 = sweep

        beta = self.defaults.x_pulses[qubit].beta
        samples = collect_rx_samples(self.backend, qubit, t0, a0, points=cfg.sample_points,
                                     repeats=cfg.sample_repeats, shots=cfg.sample_shots, beta=beta)
        db.append_samples(qubit, samples)
        now = self.backend.clock()
        candidate = calibrate_rx(db.samples(qubit), qubit, t0, a0, now=now, window=cfg.window_s, beta=beta)
        db.append(qubit_key(qubit), RX_FIT, candidate.to_payload(), now)

        incumbent = self.rx.get(qubit)
        baseline = incumbent or ScaledDefaultRx(self.defaults.x_pulses[qubit])
        outcome = validate_rx(candidate, baseline, self.backend, qubit, shots=cfg.validation_shots)
        events.info('rx_validation', qubit=qubit, accept=outcome.accept,
                    candidate_error=outcome.candidate_error, baseline_error=outcome.baseline_error)
        if not outcome.accept:
            return KeyAction('rx', str(qubit), 'rejected', f"candidate {outcome.candidate_error:.4f} "
                             f"vs incumbent {outcome.baseline_error:.4f}")
        self.rx[qubit] = candidate
        action = self._post('rx', str(qubit), candidate.to_payload())
        return KeyAction('rx', str(qubit), action, f"t0={t0} A0={a0:.3f}", 1.0 - outcome.candidate_error / 2)

    def calibrate_pair(self, pair):
        cal = self.zx.get(pair) or CrCalibration.from_defaults(self.defaults, pair)
        rng = np.random.default_rng([self.config.seed, cal.round_index, *pair])
        cal, outcome = calibrate_cr_round(cal, self.backend, rng, shots=self.config.cr_shots)
        self.zx[pair] = cal
        self.db.append_generation(pair, cal, cal.timestamp)
        events.info('zx_round', pair=list(pair), round=cal.round_index, reset=outcome.reset,
                    resets=cal.resets, c=cal.best.c, k=cal.best.k, score=cal.best.score)

        key = pair_key(pair)
        if outcome.reset or cal.best.is_baseline:
            return KeyAction('zx', key, 'rejected', 'baseline is best', cal.best.score)
        action = self._post('zx', key, cal.to_payload())
        return KeyAction('zx', key, action, f"c={cal.best.c:.3f} k={cal.best.k:.4f}", cal.best.score)

    def run_cycle(self):
        """Calibrate every enabled qubit and pair once"""
        self.cycle_index += 1
        try:
            started = self.backend.clock()
        except BackendUnavailableError as exc:
            logger.error("❌ backend unreachable, skipping cycle %d: %s", self.cycle_index, exc)
            return CycleReport(self.cycle_index, 0.0, skipped=True, actions=[KeyAction('*', '*', 'skipped', str(exc))])

        report = CycleReport(self.cycle_index, started)
        self.flush_pending()
        jobs = []
        if self.config.enable_rx:
            jobs += [('rx', str(q), lambda q=q: self.calibrate_qubit(q)) for q in self.qubits]
        if self.config.enable_zx:
            jobs += [('zx', pair_key(p), lambda p=p: self.calibrate_pair(p)) for p in self.pairs]

        for kind, key, job in jobs:
            try:
                report.actions.append(job())
            except SqueezeError as exc:
                logger.warning("⚠️ %s %s failed: %s", kind, key, exc)
                report.actions.append(KeyAction(kind, key, 'failed', f"{type(exc).__name__}: {exc}"))

        report.pending = sorted(f"{kind}/{key}" for kind, key in self.pending)
        report.finished_at = self.backend.clock()
        logger.info("📊 cycle %d: %d posted, %d pending", report.cycle, len(report.posted), len(report.pending))
        return report
