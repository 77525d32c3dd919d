"""
Channels, timed instructions and schedules.

Schedules are immutable. ``ScheduleBuilder`` places instructions as soon as
every qubit they touch is free; a control channel occupies both of its qubits.
"""

import json
from dataclasses import dataclass, field
from typing import Optional, Tuple, Union

from src.exceptions import DomainError, SchemaError
from src.pulse.envelopes import DT_NS, DragPulse, GaussianSquarePulse, pulse_from_dict, pulse_to_dict


@dataclass(frozen=True, order=True)
class Channel:
    """Drive channel of one qubit or control channel of an ordered pair"""

    kind: str
    qubits: Tuple[int, ...]

    def __post_init__(self):
        expected = {'drive': 1, 'control': 2}.get(self.kind)
        if expected is None:
            raise DomainError(f"unknown channel kind {self.kind!r}")
        if len(self.qubits) != expected:
            raise DomainError(f"{self.kind} channel needs {expected} qubit(s), got {self.qubits}")
        object.__setattr__(self, 'qubits', tuple(int(q) for q in self.qubits))

    @classmethod
    def drive(cls, qubit):
        return cls('drive', (qubit,))

    @classmethod
    def control(cls, control, target):
        return cls('control', (control, target))

    @property
    def name(self):
        if self.kind == 'drive':
            return f"d{self.qubits[0]}"
        return f"u{self.qubits[0]}_{self.qubits[1]}"

    def to_dict(self):
        if self.kind == 'drive':
            return {'kind': 'drive', 'index': self.qubits[0]}
        return {'kind': 'control', 'pair': list(self.qubits)}

    @classmethod
    def from_dict(cls, data):
        if data.get('kind') == 'drive':
            return cls.drive(data['index'])
        if data.get('kind') == 'control':
            return cls.control(*data['pair'])
        raise SchemaError(f"bad channel entry {data}")


Pulse = Union[DragPulse, GaussianSquarePulse]


@dataclass(frozen=True)
class Play:
    channel: Channel
    t0: int
    pulse: Pulse

    @property
    def duration(self):
        return self.pulse.duration

    @property
    def qubits(self):
        return self.channel.qubits


@dataclass(frozen=True)
class FrameChange:
    """Virtual Rz on the drive frame of a qubit; zero duration"""

    channel: Channel
    t0: int
    angle: float

    duration = 0

    @property
    def qubits(self):
        return self.channel.qubits


@dataclass(frozen=True)
class Barrier:
    qubits: Tuple[int, ...]
    t0: int

    duration = 0
    channel = None


Instruction = Union[Play, FrameChange, Barrier]


@dataclass(frozen=True)
class Schedule:
    """Timed instructions plus the qubits read out at the end, in bitstring order"""

    instructions: Tuple[Instruction, ...] = ()
    measure: Tuple[int, ...] = ()
    metadata: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        object.__setattr__(self, 'instructions', tuple(self.instructions))
        object.__setattr__(self, 'measure', tuple(int(q) for q in self.measure))
        busy = {}
        for inst in self.instructions:
            if inst.t0 < 0:
                raise DomainError(f"negative start time {inst.t0}")
            if isinstance(inst, Play):
                busy.setdefault(inst.channel, []).append((inst.t0, inst.t0 + inst.duration))
        for channel, spans in busy.items():
            spans.sort()
            for (_, end), (start, _) in zip(spans, spans[1:]):
                if start < end:
                    raise DomainError(f"overlapping pulses on channel {channel.name}")

    @property
    def duration(self):
        return schedule_duration(self)

    @property
    def channels(self):
        return sorted({inst.channel for inst in self.instructions if inst.channel is not None})

    @property
    def qubits(self):
        used = set(self.measure)
        for inst in self.instructions:
            used.update(inst.qubits)
        return tuple(sorted(used))

    def plays(self):
        return [inst for inst in self.instructions if isinstance(inst, Play)]

    def ordered(self):
        """Instructions in execution order: start time, then insertion order"""
        indexed = sorted(enumerate(self.instructions), key=lambda item: (item[1].t0, item[0]))
        return [inst for _, inst in indexed]


def schedule_duration(schedule):
    """Wall duration in dt; frame changes and barriers contribute nothing"""
    ends = [inst.t0 + inst.duration for inst in schedule.instructions if isinstance(inst, Play)]
    return int(max(ends, default=0))


class ScheduleBuilder:
    """Appends instructions as early as the qubits they touch allow"""

    def __init__(self):
        self._instructions = []
        self._free_at = {}

    def _start(self, qubits):
        return max((self._free_at.get(q, 0) for q in qubits), default=0)

    def play(self, channel, pulse, companions=()):
        """Place ``pulse`` plus any (channel, pulse) companions at one common start"""
        plays = [(channel, pulse)] + list(companions)
        qubits = {q for ch, _ in plays for q in ch.qubits}
        start = self._start(qubits)
        for ch, p in plays:
            self._instructions.append(Play(ch, start, p))
            for q in ch.qubits:
                self._free_at[q] = max(self._free_at.get(q, 0), start + p.duration)
        return self

    def frame_change(self, qubit, angle):
        start = self._start((qubit,))
        self._instructions.append(FrameChange(Channel.drive(qubit), start, float(angle)))
        return self

    def barrier(self, *qubits):
        start = self._start(qubits)
        self._instructions.append(Barrier(tuple(qubits), start))
        for q in qubits:
            self._free_at[q] = start
        return self

    @property
    def duration(self):
        return max(self._free_at.values(), default=0)

    def build(self, measure=(), **metadata):
        return Schedule(tuple(self._instructions), tuple(measure), dict(metadata))


def schedule_to_dict(schedule):
    channels = schedule.channels
    drive_only = {inst.channel for inst in schedule.instructions if isinstance(inst, FrameChange)}
    channels = sorted(set(channels) | drive_only)
    index = {ch: i for i, ch in enumerate(channels)}

    instructions = []
    for inst in schedule.instructions:
        if isinstance(inst, Play):
            instructions.append({'channel': index[inst.channel], 't0': inst.t0, **pulse_to_dict(inst.pulse)})
        elif isinstance(inst, FrameChange):
            instructions.append({'channel': index[inst.channel], 't0': inst.t0, 'type': 'fc',
                                 'params': {'angle': inst.angle}})
        else:
            instructions.append({'channel': None, 't0': inst.t0, 'type': 'barrier',
                                 'params': {'qubits': list(inst.qubits)}})

    return {
        'channels': [ch.to_dict() for ch in channels],
        'instructions': instructions,
        'duration': schedule.duration,
        'measure': list(schedule.measure),
        'metadata': {'dt_ns': DT_NS, **schedule.metadata},
    }


def schedule_from_dict(data):
    try:
        channels = [Channel.from_dict(ch) for ch in data['channels']]
        instructions = []
        for entry in data['instructions']:
            kind, params, t0 = entry['type'], entry['params'], int(entry['t0'])
            if kind in ('drag', 'gs'):
                instructions.append(Play(channels[entry['channel']], t0, pulse_from_dict(entry)))
            elif kind == 'fc':
                instructions.append(FrameChange(channels[entry['channel']], t0, float(params['angle'])))
            elif kind == 'barrier':
                instructions.append(Barrier(tuple(params['qubits']), t0))
            else:
                raise SchemaError(f"unknown instruction type {kind!r}")
        metadata = {k: v for k, v in data.get('metadata', {}).items() if k != 'dt_ns'}
        return Schedule(tuple(instructions), tuple(data.get('measure', ())), metadata)
    except SchemaError:
        raise
    except (KeyError, IndexError, TypeError, ValueError) as exc:
        raise SchemaError(f"malformed schedule document: {exc}") from exc


def schedule_to_json(schedule, indent=None):
    return json.dumps(schedule_to_dict(schedule), indent=indent)


def schedule_from_json(text):
    return schedule_from_dict(json.loads(text))
