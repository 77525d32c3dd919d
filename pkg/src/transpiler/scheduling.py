"""
Pulse attachment: turn a hardware-compliant basis circuit into a Schedule.

Rz becomes a frame change. Rx becomes one or two DRAG pulses depending on the
mode. Rzx and CNOT become echoed cross-resonance sequences.
"""

import logging
import math

from src.calibration.cr import append_cnot, append_echo
from src.exceptions import RangeError, UnsupportedGateError
from src.pulse import Channel, ScheduleBuilder
from src.transpiler.decompositions import decompose_u3_baseline
from src.transpiler.equivalence import check_mode

logger = logging.getLogger(__name__)

ANGLE_TOL = 1e-12


def rx_pulses(library, mode, qubit, theta):
    """(kind, value) steps realizing Rx(theta) for 0 < theta <= pi: ('fc', angle) or ('play', pulse)"""
    if not 0.0 < theta <= math.pi + ANGLE_TOL:
        raise RangeError(f"Rx angle must lie in (0, pi] after unrolling, got {theta}")

    if mode == 'squeeze':
        return [('play', library.rx_calibration(qubit).pulse_for(min(theta, math.pi)))]
    if mode == 'gokhale':
        return [('play', library.scaled_default(qubit).pulse_for(theta))]

    if abs(theta - math.pi) < ANGLE_TOL:
        return [('play', library.x_pulse(qubit))]
    if abs(theta - math.pi / 2) < ANGLE_TOL:
        return [('play', library.sx_pulse(qubit))]
    steps = []
    for gate in decompose_u3_baseline(theta, -math.pi / 2, math.pi / 2).gates:
        if gate.kind == 'rz':
            steps.append(('fc', gate.theta))
        else:
            steps.append(('play', library.sx_pulse(qubit)))
    return steps


def _emit_rx(builder, library, mode, qubit, theta):
    for kind, value in rx_pulses(library, mode, qubit, theta):
        if kind == 'fc':
            builder.frame_change(qubit, value)
        else:
            builder.play(Channel.drive(qubit), value)


def _half_pi_pulse(library, mode, qubit):
    steps = rx_pulses(library, mode, qubit, math.pi / 2)
    if len(steps) != 1:
        raise UnsupportedGateError('rx', f"Rx(pi/2) on qubit {qubit} is not a single pulse in {mode} mode")
    return steps[0][1]


def attach_pulses(circuit, library, mode='squeeze'):
    """Schedule for a basis circuit; deterministic in (circuit, library, mode)"""
    check_mode(mode)
    scaled = mode == 'squeeze'
    builder = ScheduleBuilder()
    measure = []

    for gate in circuit.gates:
        if gate.kind == 'rz':
            builder.frame_change(gate.qubits[0], gate.theta)
        elif gate.kind == 'rx':
            _emit_rx(builder, library, mode, gate.qubits[0], gate.theta)
        elif gate.kind == 'rzx':
            theta = gate.theta
            if not 0.0 <= theta <= math.pi + ANGLE_TOL:
                raise RangeError(f"Rzx angle must lie in [0, pi] after unrolling, got {theta}")
            control, _ = gate.qubits
            append_echo(builder, gate.qubits, library.quarter_pulse(gate.qubits, scaled),
                        library.x_pulse(control), theta / 2)
        elif gate.kind == 'cnot':
            control, target = gate.qubits
            append_cnot(builder, gate.qubits, library.quarter_pulse(gate.qubits, scaled),
                        library.x_pulse(control), _half_pi_pulse(library, mode, target))
        elif gate.kind == 'measure':
            measure.append(gate.qubits[0])
        else:
            raise UnsupportedGateError(gate.kind, f"{gate.kind} is not a basis gate; unroll the circuit first")

    schedule = builder.build(measure=measure, mode=mode)
    logger.debug("attached %d instruction(s) in %s mode, duration %d dt",
                 len(schedule.instructions), mode, schedule.duration)
    return schedule
