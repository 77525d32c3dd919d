"""
Simulated transmon device: configuration, truth model and calibration drift.

The device maps pulse areas linearly onto rotation angles. Each drive gain and
cross-resonance gain wanders as an Ornstein-Uhlenbeck process around 1.
"""

import json
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, Field, field_validator, model_validator

from src.circuit import CouplingMap
from src.exceptions import DeviceError
from src.pulse import DragPulse, GaussianSquarePulse, envelope_area, pulse_to_dict

logger = logging.getLogger(__name__)

MIN_GAIN = 0.05


class DriftConfig(BaseModel):
    sigma_drive: float = Field(0.01, ge=0)
    sigma_cr: float = Field(0.01, ge=0)
    reversion_time_s: float = Field(12 * 3600.0, gt=0)
    step_s: float = Field(60.0, gt=0)


class DragSpec(BaseModel):
    amplitude: float
    duration: int = 160
    sigma: float = 40.0
    beta: float = 0.0

    def to_pulse(self):
        return DragPulse(self.amplitude, self.duration, self.sigma, self.beta)


class GaussianSquareSpec(BaseModel):
    amplitude: float
    width: float
    duration: int
    sigma: float = 64.0

    def to_pulse(self):
        return GaussianSquarePulse(self.amplitude, self.width, self.duration, self.sigma)


class QubitConfig(BaseModel):
    index: int = Field(ge=0)
    x_pulse: DragSpec
    gain: float = Field(1.0, gt=0)
    readout_p01: float = Field(0.0, ge=0, lt=0.5)
    readout_p10: float = Field(0.0, ge=0, lt=0.5)


class PairConfig(BaseModel):
    control: int = Field(ge=0)
    target: int = Field(ge=0)
    cr_pulse: GaussianSquareSpec
    gain: float = Field(1.0, gt=0)


class DeviceConfig(BaseModel):
    """JSON-serializable description of a simulated device"""

    name: str = 'simulated'
    n_qubits: int = Field(gt=0)
    qubits: List[QubitConfig]
    pairs: List[PairConfig] = []
    depolarizing_rate: float = Field(0.0, ge=0)
    drift: DriftConfig = DriftConfig()
    seed: int = 0
    queue_delay_s: float = Field(0.0, ge=0)

    @field_validator('qubits')
    @classmethod
    def _sorted_qubits(cls, qubits):
        return sorted(qubits, key=lambda q: q.index)

    @model_validator(mode='after')
    def _check_indices(self):
        indices = [q.index for q in self.qubits]
        if indices != list(range(self.n_qubits)):
            raise ValueError(f"qubit entries must cover 0..{self.n_qubits - 1} exactly once")
        for pair in self.pairs:
            if pair.control == pair.target or max(pair.control, pair.target) >= self.n_qubits:
                raise ValueError(f"invalid pair ({pair.control}, {pair.target})")
        return self

    def coupling_map(self):
        return CouplingMap.from_pairs([(p.control, p.target) for p in self.pairs], self.n_qubits)

    @classmethod
    def from_file(cls, path):
        return cls.model_validate_json(Path(path).read_text())

    def to_file(self, path):
        Path(path).write_text(self.model_dump_json(indent=2))


@dataclass
class DeviceDefaults:
    """What a vendor publishes: topology and one calibrated X / CR(pi/4) pulse each"""

    n_qubits: int
    x_pulses: Dict[int, DragPulse]
    cr_pulses: Dict[Tuple[int, int], GaussianSquarePulse]

    @property
    def coupling(self):
        return CouplingMap.from_pairs(self.cr_pulses.keys(), self.n_qubits)

    def to_dict(self):
        return {
            'n_qubits': self.n_qubits,
            'x_pulses': {str(q): pulse_to_dict(p)['params'] for q, p in self.x_pulses.items()},
            'cr_pulses': [{'pair': list(pair), **pulse_to_dict(p)['params']} for pair, p in self.cr_pulses.items()],
        }

    @classmethod
    def from_dict(cls, data):
        x_pulses = {int(q): DragPulse(**p) for q, p in data['x_pulses'].items()}
        cr_pulses = {}
        for entry in data['cr_pulses']:
            params = dict(entry)
            pair = tuple(params.pop('pair'))
            cr_pulses[pair] = GaussianSquarePulse(**params)
        return cls(int(data['n_qubits']), x_pulses, cr_pulses)


class DeviceModel:
    """Truth model of the simulated device; owned by exactly one backend"""

    def __init__(self, config):
        """Initialize gains, reference areas and random streams from a config"""
        self.config = config
        self.n_qubits = config.n_qubits
        self.coupling = config.coupling_map()
        self.x_pulses = {q.index: q.x_pulse.to_pulse() for q in config.qubits}
        self.cr_pulses = {(p.control, p.target): p.cr_pulse.to_pulse() for p in config.pairs}

        self.ref_area = {q: envelope_area(p) for q, p in self.x_pulses.items()}
        self.cref_area = {pair: envelope_area(p) for pair, p in self.cr_pulses.items()}
        self.drive_gain = {q.index: q.gain for q in config.qubits}
        self.cr_gain = {(p.control, p.target): p.gain for p in config.pairs}
        self.confusion = {q.index: (q.readout_p01, q.readout_p10) for q in config.qubits}
        self.depolarizing_rate = config.depolarizing_rate
        self.drift = config.drift
        self.queue_delay_s = config.queue_delay_s
        self.clock = 0.0

        drift_seq, shot_seq = np.random.SeedSequence(config.seed).spawn(2)
        self.drift_rng = np.random.default_rng(drift_seq)
        self.shot_rng = np.random.default_rng(shot_seq)

    @classmethod
    def from_file(cls, path):
        return cls(DeviceConfig.from_file(path))

    def defaults(self):
        return DeviceDefaults(self.n_qubits, dict(self.x_pulses), dict(self.cr_pulses))

    def check_qubit(self, qubit):
        if not 0 <= qubit < self.n_qubits:
            raise DeviceError(f"qubit {qubit} does not exist on {self.config.name}")

    def check_pair(self, pair):
        if pair not in self.cref_area:
            raise DeviceError(f"no control channel for pair {pair} on {self.config.name}")

    def drive_angle(self, qubit, area):
        """Rx angle produced by a drive pulse of the given area"""
        self.check_qubit(qubit)
        return math.pi * self.drive_gain[qubit] * area / self.ref_area[qubit]

    def cr_angle(self, pair, signed_area):
        """Rzx angle produced by a cross-resonance pulse of the given signed area"""
        self.check_pair(pair)
        return (math.pi / 4) * self.cr_gain[pair] * signed_area / self.cref_area[pair]

    def set_drive_gain(self, qubit, gain):
        self.check_qubit(qubit)
        self.drive_gain[qubit] = max(float(gain), MIN_GAIN)

    def set_cr_gain(self, pair, gain):
        self.check_pair(pair)
        self.cr_gain[pair] = max(float(gain), MIN_GAIN)

    def _ou_step(self, gains, sigma, dt):
        if sigma == 0 or not gains:
            return
        decay = math.exp(-dt / self.drift.reversion_time_s)
        spread = sigma * math.sqrt(1.0 - decay ** 2)
        keys = list(gains)
        values = np.array([gains[k] for k in keys])
        values = 1.0 + (values - 1.0) * decay + spread * self.drift_rng.standard_normal(len(keys))
        for key, value in zip(keys, np.maximum(values, MIN_GAIN)):
            gains[key] = float(value)

    def advance_time(self, seconds):
        """Run the drift process forward and move the clock"""
        if seconds < 0:
            raise ValueError(f"cannot move the clock backwards ({seconds} s)")
        step = self.drift.step_s
        full_steps, remainder = divmod(seconds, step)
        for dt in [step] * int(full_steps) + ([remainder] if remainder > 1e-12 else []):
            self._ou_step(self.drive_gain, self.drift.sigma_drive, dt)
            self._ou_step(self.cr_gain, self.drift.sigma_cr, dt)
        self.clock += seconds
        return self


def _qubit(index, x_amplitude, beta=-0.35, p01=0.0, p10=0.0):
    return QubitConfig(index=index, x_pulse=DragSpec(amplitude=x_amplitude, beta=beta),
                       readout_p01=p01, readout_p10=p10)


def _pairs(durations, amplitude=0.25, sigma=64.0, n_sigma=4.0):
    """Both directions of each coupled pair, CR(pi/4) pulse of the given total duration"""
    pairs = []
    for (a, b), duration in durations.items():
        width = duration - n_sigma * sigma
        for control, target in ((a, b), (b, a)):
            pairs.append(PairConfig(control=control, target=target, cr_pulse=GaussianSquareSpec(
                amplitude=amplitude, width=width, duration=duration, sigma=sigma)))
    return pairs


def lima_config(depolarizing_rate=0.0, drift=None, seed=0, readout=(0.0, 0.0)):
    """Five-qubit T-shaped device (0-1, 1-2, 1-3, 3-4)"""
    amplitudes = [0.1199, 0.1465, 0.1373, 0.1262, 0.1261]
    cr = {(0, 1): 528, (2, 1): 512, (3, 1): 880, (4, 3): 928}
    return DeviceConfig(
        name='lima', n_qubits=5,
        qubits=[_qubit(i, a, p01=readout[0], p10=readout[1]) for i, a in enumerate(amplitudes)],
        pairs=_pairs(cr), depolarizing_rate=depolarizing_rate,
        drift=drift or DriftConfig(sigma_drive=0.0, sigma_cr=0.0), seed=seed,
    )


def line_config(n_qubits=3, depolarizing_rate=0.0, drift=None, seed=0, readout=(0.0, 0.0)):
    """Linear chain with identical qubits"""
    cr = {(i, i + 1): 512 for i in range(n_qubits - 1)}
    return DeviceConfig(
        name=f'line{n_qubits}', n_qubits=n_qubits,
        qubits=[_qubit(i, 0.13, p01=readout[0], p10=readout[1]) for i in range(n_qubits)],
        pairs=_pairs(cr), depolarizing_rate=depolarizing_rate,
        drift=drift or DriftConfig(sigma_drive=0.0, sigma_cr=0.0), seed=seed,
    )


def nairobi_config(depolarizing_rate=0.0, drift=None, seed=0, readout=(0.0, 0.0)):
    """Seven-qubit H-shaped device (0-1, 1-2, 1-3, 3-5, 4-5, 5-6)"""
    amplitudes = [0.1396, 0.1630, 0.2077, 0.1984, 0.2061, 0.1994, 0.1976]
    cr = {(0, 1): 400, (1, 3): 448, (2, 1): 720, (5, 3): 384, (5, 4): 464, (6, 5): 528}
    return DeviceConfig(
        name='nairobi', n_qubits=7,
        qubits=[_qubit(i, a, p01=readout[0], p10=readout[1]) for i, a in enumerate(amplitudes)],
        pairs=_pairs(cr), depolarizing_rate=depolarizing_rate,
        drift=drift or DriftConfig(sigma_drive=0.0, sigma_cr=0.0), seed=seed,
    )


PRESETS = {'lima': lima_config, 'line': line_config, 'nairobi': nairobi_config}


def load_device_config(source):
    """Preset name or path to a device JSON file"""
    if source in PRESETS:
        return PRESETS[source]()
    return DeviceConfig.from_file(source)
