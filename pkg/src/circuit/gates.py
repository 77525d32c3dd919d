"""
Logical gates and their unitaries.

Qubit 0 of a gate's operand list is the most significant tensor factor, so
``CNOT(c, t)`` acts on ``|c t>``.
"""

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from src.exceptions import DomainError, UnsupportedGateError

# kind -> (arity, number of angle parameters)
GATE_SPECS = {
    'rx': (1, 1), 'ry': (1, 1), 'rz': (1, 1), 'u3': (1, 3),
    'x': (1, 0), 'y': (1, 0), 'z': (1, 0), 'h': (1, 0), 'sqrtx': (1, 0),
    's': (1, 0), 'sdg': (1, 0), 't': (1, 0), 'tdg': (1, 0),
    'rzx': (2, 1), 'rxx': (2, 1), 'ryy': (2, 1), 'rzz': (2, 1), 'cphase': (2, 1),
    'cnot': (2, 0), 'cz': (2, 0), 'swap': (2, 0), 'csx': (2, 0),
    'toffoli': (3, 0),
    'measure': (1, 0),
}

ROTATION_KINDS = {'rx', 'ry', 'rz', 'rzx', 'rxx', 'ryy', 'rzz', 'cphase'}
SELF_INVERSE = {'x', 'y', 'z', 'h', 'cnot', 'cz', 'swap', 'toffoli'}


@dataclass(frozen=True)
class Gate:
    kind: str
    qubits: Tuple[int, ...]
    params: Tuple[float, ...] = ()

    def __post_init__(self):
        spec = GATE_SPECS.get(self.kind)
        if spec is None:
            raise UnsupportedGateError(self.kind)
        arity, n_params = spec
        qubits = tuple(int(q) for q in self.qubits)
        params = tuple(float(p) for p in self.params)
        if len(qubits) != arity:
            raise DomainError(f"{self.kind} takes {arity} qubit(s), got {qubits}")
        if len(set(qubits)) != arity:
            raise DomainError(f"{self.kind} operands must be distinct, got {qubits}")
        if any(q < 0 for q in qubits):
            raise DomainError(f"negative qubit index in {qubits}")
        if len(params) != n_params:
            raise DomainError(f"{self.kind} takes {n_params} parameter(s), got {params}")
        if not all(math.isfinite(p) for p in params):
            raise DomainError(f"non-finite angle in {self.kind}{params}")
        object.__setattr__(self, 'qubits', qubits)
        object.__setattr__(self, 'params', params)

    @property
    def arity(self):
        return len(self.qubits)

    @property
    def theta(self):
        return self.params[0]

    def on(self, *qubits):
        """Same gate on other qubits"""
        return Gate(self.kind, qubits, self.params)

    def remap(self, mapping):
        return Gate(self.kind, tuple(mapping[q] for q in self.qubits), self.params)

    def to_dict(self):
        return {'kind': self.kind, 'qubits': list(self.qubits), 'params': list(self.params)}

    def __repr__(self):
        args = ', '.join(f"{p:.6g}" for p in self.params)
        return f"{self.kind}({args}){list(self.qubits)}" if args else f"{self.kind}{list(self.qubits)}"


_I = np.eye(2, dtype=complex)
_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = {'i': _I, 'x': _X, 'y': _Y, 'z': _Z}


def _pauli_rotation(theta, *paulis):
    generator = PAULI[paulis[0]]
    for p in paulis[1:]:
        generator = np.kron(generator, PAULI[p])
    eye = np.eye(generator.shape[0], dtype=complex)
    return math.cos(theta / 2) * eye - 1j * math.sin(theta / 2) * generator


def _controlled(u):
    out = np.eye(4, dtype=complex)
    out[2:, 2:] = u
    return out


def u3_matrix(theta, phi, lam):
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array([
        [c, -np.exp(1j * lam) * s],
        [np.exp(1j * phi) * s, np.exp(1j * (phi + lam)) * c],
    ], dtype=complex)


_SQRTX = 0.5 * np.array([[1 + 1j, 1 - 1j], [1 - 1j, 1 + 1j]], dtype=complex)

_FIXED = {
    'x': _X, 'y': _Y, 'z': _Z,
    'h': np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2),
    's': np.diag([1, 1j]).astype(complex),
    'sdg': np.diag([1, -1j]).astype(complex),
    't': np.diag([1, np.exp(1j * math.pi / 4)]).astype(complex),
    'tdg': np.diag([1, np.exp(-1j * math.pi / 4)]).astype(complex),
    'sqrtx': _SQRTX,
    'cnot': _controlled(_X),
    'cz': np.diag([1, 1, 1, -1]).astype(complex),
    'csx': _controlled(_SQRTX),
    'swap': np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex),
}

_toffoli = np.eye(8, dtype=complex)
_toffoli[6:, 6:] = _X
_FIXED['toffoli'] = _toffoli


def gate_unitary(gate):
    """Standard unitary of a gate; Rzx(theta) = exp(-i theta/2 Z(x)X)"""
    kind = gate.kind
    if kind == 'measure':
        raise UnsupportedGateError(kind, "measurement has no unitary")
    if kind in _FIXED:
        return _FIXED[kind].copy()
    if kind == 'u3':
        return u3_matrix(*gate.params)
    theta = gate.theta
    if kind == 'rx':
        return _pauli_rotation(theta, 'x')
    if kind == 'ry':
        return _pauli_rotation(theta, 'y')
    if kind == 'rz':
        return _pauli_rotation(theta, 'z')
    if kind == 'rzx':
        return _pauli_rotation(theta, 'z', 'x')
    if kind == 'rxx':
        return _pauli_rotation(theta, 'x', 'x')
    if kind == 'ryy':
        return _pauli_rotation(theta, 'y', 'y')
    if kind == 'rzz':
        return _pauli_rotation(theta, 'z', 'z')
    if kind == 'cphase':
        return np.diag([1, 1, 1, np.exp(1j * theta)]).astype(complex)
    raise UnsupportedGateError(kind)


def inverse_gate(gate):
    """Gates whose product is the inverse of ``gate`` (exact, or up to global phase)"""
    kind = gate.kind
    if kind == 'measure':
        raise UnsupportedGateError(kind, "measurement cannot be inverted")
    if kind in SELF_INVERSE:
        return [gate]
    if kind in ROTATION_KINDS:
        return [Gate(kind, gate.qubits, (-gate.theta,))]
    if kind == 'u3':
        theta, phi, lam = gate.params
        return [Gate('u3', gate.qubits, (-theta, -lam, -phi))]
    if kind == 'sqrtx':
        return [Gate('rx', gate.qubits, (-math.pi / 2,))]
    if kind == 'csx':
        return [gate, gate, gate]
    swapped = {'s': 'sdg', 'sdg': 's', 't': 'tdg', 'tdg': 't'}
    if kind in swapped:
        return [Gate(swapped[kind], gate.qubits)]
    raise UnsupportedGateError(kind)


def wrap_angle(theta):
    """Reduce an angle to (-pi, pi]"""
    return math.pi - ((math.pi - theta) % (2 * math.pi))
