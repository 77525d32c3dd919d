"""
Gate decompositions onto the Rx/Rz/Rzx/CNOT basis.

Each function returns a ``Circuit`` over local qubits 0..k-1; equivalence rules
remap them onto the operands of the gate being replaced. All identities hold up
to global phase.
"""

import math

from src.circuit import Circuit, Gate
from src.exceptions import RangeError, UnsupportedGateError

PI = math.pi


def rx(theta, q=0):
    return Gate('rx', (q,), (theta,))


def rz(theta, q=0):
    return Gate('rz', (q,), (theta,))


def rzx(theta, control=0, target=1):
    return Gate('rzx', (control, target), (theta,))


def cnot(control=0, target=1):
    return Gate('cnot', (control, target))


def h(q=0):
    return Gate('h', (q,))


def decompose_u3_baseline(theta, phi, lam):
    """Five-gate form with two physical sqrt(X) pulses"""
    sx = Gate('sqrtx', (0,))
    return Circuit(1, (rz(lam), sx, rz(theta + PI), sx, rz(phi + 3 * PI)))


def decompose_u3_gokhale(theta, phi, lam):
    """One direct Rx(theta) between frame changes, run as a scaled 160 dt pulse"""
    return Circuit(1, (rz(lam - PI / 2), rx(theta), rz(phi + PI / 2)))


def decompose_u3_squeeze(theta, phi, lam):
    """One Rx(theta) between frame changes, run as a calibrated fastest pulse"""
    return Circuit(1, (rz(lam - PI / 2), rx(theta), rz(phi + PI / 2)))


def negative_rx(theta):
    """Rx(-theta) from a positive rotation conjugated by Rz(pi) frames"""
    if not 0 < theta <= PI:
        raise RangeError(f"negative_rx expects 0 < theta <= pi, got {theta}")
    return Circuit(1, (rz(PI), rx(theta), rz(PI)))


def decompose_two_qubit_rotation(kind, theta):
    """Rxx/Ryy/Rzz/CPhase as one Rzx plus single-qubit basis changes"""
    if kind == 'rxx':
        gates = (h(0), rzx(theta), h(0))
    elif kind == 'ryy':
        gates = (rx(PI / 2, 0), rz(-PI / 2, 1), rzx(theta), rx(-PI / 2, 0), rz(PI / 2, 1))
    elif kind == 'rzz':
        gates = (h(1), rzx(theta), h(1))
    elif kind == 'cphase':
        gates = (rz(theta / 2, 0), rz(theta / 2, 1), h(1), rzx(-theta / 2), h(1))
    else:
        raise UnsupportedGateError(kind, f"no single-Rzx decomposition for {kind}")
    return Circuit(2, gates)


def decompose_two_qubit_rotation_cnot(kind, theta):
    """Two-CNOT forms of the same rotations"""
    if kind == 'rxx':
        gates = (h(0), h(1), cnot(), rz(theta, 1), cnot(), h(0), h(1))
    elif kind == 'ryy':
        gates = (rx(PI / 2, 0), rx(PI / 2, 1), cnot(), rz(theta, 1), cnot(), rx(-PI / 2, 0), rx(-PI / 2, 1))
    elif kind == 'rzz':
        gates = (cnot(), rz(theta, 1), cnot())
    elif kind == 'cphase':
        gates = (rz(theta / 2, 0), cnot(), rz(-theta / 2, 1), cnot(), rz(theta / 2, 1))
    elif kind == 'rzx':
        gates = (h(1), cnot(), rz(theta, 1), cnot(), h(1))
    else:
        raise UnsupportedGateError(kind, f"no two-CNOT decomposition for {kind}")
    return Circuit(2, gates)


def decompose_csx(theta):
    """Controlled X**(theta/pi): one Rzx, an Rx on the target and a free Rz on the control.

    theta = pi/2 gives controlled sqrt(X); theta = pi gives CNOT.
    """
    return Circuit(2, (rx(theta / 2, 1), rzx(-theta / 2), rz(theta / 2, 0)))


def decompose_toffoli(variant='A'):
    """Five two-qubit-gate Toffoli on controls 0, 1 and target 2.

    Variant B swaps the final two gates, which commute.
    """
    csx = Gate('csx', (1, 2))
    head = (
        csx,
        cnot(0, 1),
        Gate('z', (2,)),
        Gate('sdg', (1,)),
        csx,
        Gate('z', (2,)),
    )
    tail = (cnot(0, 1), Gate('csx', (0, 2)))
    if variant == 'A':
        return Circuit(3, head + tail)
    if variant == 'B':
        return Circuit(3, head + tail[::-1])
    raise UnsupportedGateError('toffoli', f"unknown Toffoli variant {variant!r}")


def decompose_toffoli_cnot():
    """Six-CNOT Toffoli with T/Tdg phases"""
    t, tdg = (lambda q: Gate('t', (q,))), (lambda q: Gate('tdg', (q,)))
    return Circuit(3, (
        h(2), cnot(1, 2), tdg(2), cnot(0, 2), t(2), cnot(1, 2), tdg(2), cnot(0, 2),
        t(1), t(2), h(2), cnot(0, 1), t(0), tdg(1), cnot(0, 1),
    ))
