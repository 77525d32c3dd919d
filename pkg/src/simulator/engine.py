"""
Schedule execution on the device truth model.

Noiseless runs evolve a state vector. Noisy runs evolve the density matrix over
the active qubits, which is the exact average of the per-pulse stochastic
depolarizing events.
"""

import math

import numpy as np

from src.circuit import Gate, gate_unitary
from src.circuit.gates import PAULI
from src.circuit.linalg import apply_matrix
from src.pulse import FrameChange, GaussianSquarePulse, Play, envelope_area


def measured_qubits(schedule, device):
    return schedule.measure or tuple(range(device.n_qubits))


def active_qubits(schedule, device):
    return tuple(sorted(set(schedule.qubits) | set(measured_qubits(schedule, device))))


def instruction_operation(inst, device):
    """(unitary, qubits, active duration) for one instruction; None when it does nothing"""
    if isinstance(inst, FrameChange):
        qubit = inst.channel.qubits[0]
        device.check_qubit(qubit)
        return gate_unitary(Gate('rz', (0,), (inst.angle,))), (qubit,), 0
    if not isinstance(inst, Play):
        return None

    pulse = inst.pulse
    for q in inst.channel.qubits:
        device.check_qubit(q)
    if pulse.amplitude == 0:
        return None
    sign = pulse.sign if isinstance(pulse, GaussianSquarePulse) else 1.0
    area = sign * envelope_area(pulse)

    if inst.channel.kind == 'drive':
        qubit = inst.channel.qubits[0]
        angle = device.drive_angle(qubit, area)
        return gate_unitary(Gate('rx', (0,), (angle,))), (qubit,), pulse.duration

    pair = inst.channel.qubits
    angle = device.cr_angle(pair, area)
    return gate_unitary(Gate('rzx', (0, 1), (angle,))), pair, pulse.duration


class EvolvedState:
    """State over ``qubits`` after running a schedule; vector or density tensor"""

    def __init__(self, qubits, vector=None, density=None):
        self.qubits = tuple(qubits)
        self.vector = vector
        self.density = density

    @property
    def n(self):
        return len(self.qubits)

    def full_probabilities(self):
        if self.vector is not None:
            probs = np.abs(self.vector) ** 2
        else:
            dim = 2 ** self.n
            probs = np.real(np.diagonal(self.density.reshape(dim, dim))).reshape((2,) * self.n)
        probs = np.clip(probs, 0.0, 1.0)
        return probs / probs.sum()

    def probabilities(self, measure):
        """Marginal distribution over ``measure`` with measure[0] as the leftmost bit"""
        probs = self.full_probabilities()
        positions = [self.qubits.index(q) for q in measure]
        others = tuple(i for i in range(self.n) if i not in positions)
        marginal = probs.sum(axis=others) if others else probs
        kept = sorted(positions)
        order = [kept.index(p) for p in positions]
        return np.transpose(marginal, order).reshape(-1)


def _depolarize(rho, pos, n, p):
    if p <= 0:
        return rho
    mixed = (1.0 - 0.75 * p) * rho
    for pauli in ('x', 'y', 'z'):
        m = PAULI[pauli]
        term = apply_matrix(rho, m, [pos])
        term = apply_matrix(term, m.conj(), [n + pos])
        mixed = mixed + 0.25 * p * term
    return mixed


def evolve(schedule, device, noiseless=False):
    """Run a schedule from |0...0> over its active qubits"""
    qubits = active_qubits(schedule, device)
    n = len(qubits)
    index = {q: i for i, q in enumerate(qubits)}
    ops = [op for op in (instruction_operation(inst, device) for inst in schedule.ordered()) if op is not None]

    rate = 0.0 if noiseless else device.depolarizing_rate
    if rate == 0.0:
        vector = np.zeros((2,) * n, dtype=complex)
        vector[(0,) * n] = 1.0
        for matrix, op_qubits, _ in ops:
            vector = apply_matrix(vector, matrix, [index[q] for q in op_qubits])
        return EvolvedState(qubits, vector=vector)

    rho = np.zeros((2,) * (2 * n), dtype=complex)
    rho[(0,) * (2 * n)] = 1.0
    for matrix, op_qubits, duration in ops:
        positions = [index[q] for q in op_qubits]
        rho = apply_matrix(rho, matrix, positions)
        rho = apply_matrix(rho, matrix.conj(), [n + p for p in positions])
        if duration:
            p = 1.0 - math.exp(-rate * duration)
            for pos in positions:
                rho = _depolarize(rho, pos, n, p)
    return EvolvedState(qubits, density=rho)


def schedule_unitary(schedule, device, qubits=None):
    """Noiseless unitary implemented by a schedule on ``qubits`` (qubit order = tensor order)"""
    qubits = tuple(qubits) if qubits is not None else tuple(sorted(set(schedule.qubits)))
    n = len(qubits)
    index = {q: i for i, q in enumerate(qubits)}
    dim = 2 ** n
    tensor = np.eye(dim, dtype=complex).reshape((2,) * n + (dim,))
    for inst in schedule.ordered():
        op = instruction_operation(inst, device)
        if op is None:
            continue
        matrix, op_qubits, _ = op
        tensor = apply_matrix(tensor, matrix, [index[q] for q in op_qubits])
    return tensor.reshape(dim, dim)


def sample(probabilities, shots, confusion, rng):
    """Multinomial shot counts with per-qubit readout flips.

    ``confusion[i]`` is (P(read 1 | 0), P(read 0 | 1)) for the i-th measured bit.
    """
    if shots <= 0:
        raise ValueError(f"shots must be positive, got {shots}")
    probs = np.clip(np.asarray(probabilities, dtype=float), 0.0, None)
    probs = probs / probs.sum()
    width = int(round(math.log2(len(probs)))) if len(probs) > 1 else 0
    hits = rng.multinomial(shots, probs)

    if width == 0:
        return {'': int(shots)}

    if any(p01 > 0 or p10 > 0 for p01, p10 in confusion):
        outcomes = np.repeat(np.arange(len(probs)), hits)
        bits = (outcomes[:, None] >> np.arange(width - 1, -1, -1)) & 1
        p01 = np.array([c[0] for c in confusion])
        p10 = np.array([c[1] for c in confusion])
        flip_prob = np.where(bits == 0, p01, p10)
        bits = bits ^ (rng.random(bits.shape) < flip_prob)
        outcomes = bits @ (1 << np.arange(width - 1, -1, -1))
        hits = np.bincount(outcomes, minlength=len(probs))

    return {format(i, f'0{width}b'): int(c) for i, c in enumerate(hits) if c > 0}
