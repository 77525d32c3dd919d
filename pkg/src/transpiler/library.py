"""
Pulse library: the pulse parameters a compilation run attaches to basis gates.

A library starts from the device defaults (one X pulse per qubit, one CR(pi/4)
pulse per directed pair) and is overlaid with the latest accepted Rx and Rzx
calibrations served by the query server.
"""

import json
import logging
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Dict, Tuple

from src.calibration.cr import CrCalibration
from src.calibration.rx import RxCalibration, ScaledDefaultRx
from src.exceptions import CalibrationMissingError, SchemaError
from src.simulator.models.device import DeviceDefaults

logger = logging.getLogger(__name__)


def pair_key(pair):
    return f"{pair[0]}_{pair[1]}"


def parse_pair_key(key):
    try:
        control, target = (int(part) for part in str(key).split('_'))
    except ValueError as exc:
        raise SchemaError(f"bad pair key {key!r}; expected '<control>_<target>'") from exc
    return control, target


@dataclass(frozen=True)
class PulseLibrary:
    """Immutable snapshot of defaults plus calibrations"""

    defaults: DeviceDefaults
    rx: Dict[int, RxCalibration] = field(default_factory=dict)
    zx: Dict[Tuple[int, int], CrCalibration] = field(default_factory=dict)

    @classmethod
    def from_defaults(cls, defaults):
        return cls(defaults)

    @property
    def n_qubits(self):
        return self.defaults.n_qubits

    @property
    def coupling(self):
        return self.defaults.coupling

    def with_rx(self, calibration):
        self._check_qubit(calibration.qubit)
        return replace(self, rx={**self.rx, calibration.qubit: calibration})

    def with_zx(self, calibration):
        self.cr_base(calibration.pair)
        return replace(self, zx={**self.zx, tuple(calibration.pair): calibration})

    def _check_qubit(self, qubit):
        if qubit not in self.defaults.x_pulses:
            raise CalibrationMissingError(qubit, f"qubit {qubit} has no default X pulse")

    def x_pulse(self, qubit):
        self._check_qubit(qubit)
        return self.defaults.x_pulses[qubit]

    def sx_pulse(self, qubit):
        x = self.x_pulse(qubit)
        return x.with_amplitude(x.amplitude / 2)

    def scaled_default(self, qubit):
        return ScaledDefaultRx(self.x_pulse(qubit))

    def rx_calibration(self, qubit):
        try:
            return self.rx[qubit]
        except KeyError:
            raise CalibrationMissingError(qubit, f"no Rx calibration for qubit {qubit}") from None

    def cr_base(self, pair):
        pair = tuple(pair)
        try:
            return self.defaults.cr_pulses[pair]
        except KeyError:
            raise CalibrationMissingError(pair, f"no CR pulse for pair {pair}") from None

    def zx_calibration(self, pair):
        pair = tuple(pair)
        try:
            return self.zx[pair]
        except KeyError:
            raise CalibrationMissingError(pair, f"no Rzx calibration for pair {pair}") from None

    def quarter_pulse(self, pair, scaled):
        """CR(pi/4) pulse for a pair: best-particle scaled, or the unscaled default"""
        if scaled:
            return self.zx_calibration(pair).scaled_pulse()
        return self.cr_base(pair)

    def merge_snapshot(self, snapshot):
        """Overlay a query-server snapshot ({'rx': {q: payload}, 'zx': {pair_key: payload}})"""
        library = self
        for qubit, payload in (snapshot.get('rx') or {}).items():
            qubit = int(qubit)
            if qubit not in self.defaults.x_pulses:
                logger.warning("⚠️ ignoring Rx entry for qubit %s not on this device", qubit)
                continue
            library = library.with_rx(RxCalibration.from_payload(qubit, payload))
        for key, payload in (snapshot.get('zx') or {}).items():
            pair = parse_pair_key(key)
            if pair not in self.defaults.cr_pulses:
                logger.warning("⚠️ ignoring Rzx entry for pair %s not on this device", key)
                continue
            library = library.with_zx(CrCalibration.from_payload({**payload, 'pair': list(pair)}))
        return library

    def to_dict(self):
        return {
            'defaults': self.defaults.to_dict(),
            'rx': {str(q): cal.to_payload() for q, cal in self.rx.items()},
            'zx': {pair_key(pair): cal.to_payload() for pair, cal in self.zx.items()},
        }

    @classmethod
    def from_dict(cls, data):
        try:
            library = cls(DeviceDefaults.from_dict(data['defaults']))
        except (KeyError, TypeError) as exc:
            raise SchemaError(f"malformed pulse library: {exc}") from exc
        return library.merge_snapshot(data)

    def save(self, path):
        Path(path).write_text(json.dumps(self.to_dict(), indent=2))

    @classmethod
    def load(cls, path):
        return cls.from_dict(json.loads(Path(path).read_text()))
