"""Logical circuit representation and the unitary oracle"""

from src.circuit.circuit import Circuit, CouplingMap, circuit_unitary, validate_coupling
from src.circuit.gates import GATE_SPECS, Gate, gate_unitary, inverse_gate, wrap_angle
from src.circuit.linalg import distance_up_to_global_phase, is_unitary, permutation_unitary

__all__ = [
    'Circuit', 'CouplingMap', 'circuit_unitary', 'validate_coupling',
    'GATE_SPECS', 'Gate', 'gate_unitary', 'inverse_gate', 'wrap_angle',
    'distance_up_to_global_phase', 'is_unitary', 'permutation_unitary',
]
