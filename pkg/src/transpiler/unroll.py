"""
Rule-driven unrolling onto a basis, with angle normalization.
"""

import math

from src.circuit import Circuit, Gate, wrap_angle
from src.exceptions import UnsupportedGateError
from src.transpiler.decompositions import negative_rx
from src.transpiler.equivalence import library_for_mode

ANGLE_EPS = 1e-12
MAX_DEPTH = 32


def _normalized(gate):
    """Basis rotation with its angle in (-pi, pi]; negative Rx/Rzx become positive ones between Rz(pi) frames"""
    if gate.kind not in ('rx', 'rz', 'rzx'):
        return [gate]
    theta = wrap_angle(gate.theta)
    if abs(theta) < ANGLE_EPS:
        return []
    if theta > 0 or gate.kind == 'rz':
        return [Gate(gate.kind, gate.qubits, (theta,))]
    if gate.kind == 'rx':
        return [g.remap(gate.qubits) for g in negative_rx(-theta).gates]
    control, target = gate.qubits
    return [
        Gate('rz', (target,), (math.pi,)),
        Gate('rzx', gate.qubits, (-theta,)),
        Gate('rz', (target,), (math.pi,)),
    ]


def unroll(circuit, basis=None, library=None, mode='squeeze'):
    """Expand every gate through the equivalence rules until only basis kinds remain"""
    library = library or library_for_mode(mode)
    basis = frozenset(basis) if basis is not None else library.basis
    basis = basis | {'measure'}
    out = []

    def expand(gate, depth):
        if depth > MAX_DEPTH:
            raise UnsupportedGateError(gate.kind, f"rule chain for {gate.kind} does not terminate in the basis")
        if gate.kind in basis:
            for piece in _normalized(gate):
                if piece.kind not in basis:
                    raise UnsupportedGateError(piece.kind, f"{piece.kind} is not in the basis")
                out.append(piece)
            return
        for sub in library.rule(gate.kind).expand(gate):
            expand(sub, depth + 1)

    for gate in circuit.gates:
        expand(gate, 0)
    return Circuit(circuit.n_qubits, tuple(out), circuit.final_layout)
