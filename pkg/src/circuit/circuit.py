"""
Circuits, coupling maps and the brute-force unitary oracle.
"""

import json
from dataclasses import dataclass, field
from typing import FrozenSet, Optional, Tuple

import networkx as nx

from src.circuit.gates import Gate, gate_unitary, inverse_gate
from src.circuit.linalg import embed_unitary
from src.exceptions import DomainError, ResourceError, SchemaError, UnsupportedGateError

MAX_ORACLE_QUBITS = 4


@dataclass(frozen=True)
class Circuit:
    """Ordered gates over ``n_qubits`` logical qubits.

    ``final_layout[i]`` is the physical qubit holding logical qubit ``i`` at the
    end of a routed circuit; ``None`` means the identity layout.
    """

    n_qubits: int
    gates: Tuple[Gate, ...] = ()
    final_layout: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        if self.n_qubits <= 0:
            raise DomainError(f"n_qubits must be positive, got {self.n_qubits}")
        gates = tuple(self.gates)
        for gate in gates:
            if max(gate.qubits) >= self.n_qubits:
                raise DomainError(f"{gate!r} addresses a qubit outside 0..{self.n_qubits - 1}")
        object.__setattr__(self, 'gates', gates)
        if self.final_layout is not None:
            object.__setattr__(self, 'final_layout', tuple(self.final_layout))

    def __len__(self):
        return len(self.gates)

    def __iter__(self):
        return iter(self.gates)

    def then(self, *gates):
        return Circuit(self.n_qubits, self.gates + tuple(gates), self.final_layout)

    def compose(self, other):
        if other.n_qubits > self.n_qubits:
            raise DomainError("cannot compose a wider circuit onto a narrower one")
        return Circuit(self.n_qubits, self.gates + other.gates)

    def inverse(self):
        inverted = []
        for gate in reversed(self.gates):
            inverted.extend(inverse_gate(gate))
        return Circuit(self.n_qubits, tuple(inverted))

    def without_measurements(self):
        return Circuit(self.n_qubits, tuple(g for g in self.gates if g.kind != 'measure'), self.final_layout)

    def measured_qubits(self):
        return tuple(g.qubits[0] for g in self.gates if g.kind == 'measure')

    def count(self, *kinds):
        return sum(1 for g in self.gates if g.kind in kinds)

    def two_qubit_count(self):
        return sum(1 for g in self.gates if g.arity == 2)

    def kinds(self):
        return {g.kind for g in self.gates}

    def to_dict(self):
        data = {'n_qubits': self.n_qubits, 'gates': [g.to_dict() for g in self.gates]}
        if self.final_layout is not None:
            data['final_layout'] = list(self.final_layout)
        return data

    @classmethod
    def from_dict(cls, data):
        try:
            gates = tuple(Gate(g['kind'].lower(), tuple(g['qubits']), tuple(g.get('params', ())))
                          for g in data['gates'])
            layout = data.get('final_layout')
            return cls(int(data['n_qubits']), gates, tuple(layout) if layout is not None else None)
        except (KeyError, TypeError) as exc:
            raise SchemaError(f"malformed circuit document: {exc}") from exc

    def to_json(self, indent=None):
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class CouplingMap:
    """Directed pairs (control, target) that own a control channel"""

    edges: FrozenSet[Tuple[int, int]] = field(default_factory=frozenset)
    n_qubits: Optional[int] = None

    def __post_init__(self):
        edges = frozenset((int(a), int(b)) for a, b in self.edges)
        for a, b in edges:
            if a == b or a < 0 or b < 0:
                raise DomainError(f"invalid coupling edge {(a, b)}")
        n = self.n_qubits
        if n is None:
            n = 1 + max((max(e) for e in edges), default=-1)
        elif any(max(e) >= n for e in edges):
            raise DomainError("coupling edge references a qubit outside the device")
        object.__setattr__(self, 'edges', edges)
        object.__setattr__(self, 'n_qubits', max(n, 1))

    @classmethod
    def from_pairs(cls, pairs, n_qubits=None, symmetric=False):
        edges = set(map(tuple, pairs))
        if symmetric:
            edges |= {(b, a) for a, b in edges}
        return cls(frozenset(edges), n_qubits)

    @classmethod
    def line(cls, n_qubits):
        pairs = [(i, i + 1) for i in range(n_qubits - 1)]
        return cls.from_pairs(pairs, n_qubits, symmetric=True)

    def directed(self, control, target):
        return (control, target) in self.edges

    def connected(self, a, b):
        return (a, b) in self.edges or (b, a) in self.edges

    def graph(self):
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n_qubits))
        graph.add_edges_from(self.edges)
        return graph

    def to_dict(self):
        return {'n_qubits': self.n_qubits, 'edges': sorted(list(e) for e in self.edges)}

    @classmethod
    def from_dict(cls, data):
        return cls.from_pairs(data['edges'], data.get('n_qubits'))


def circuit_unitary(circuit):
    """Unitary of a circuit of at most four qubits, qubit 0 most significant"""
    if circuit.n_qubits > MAX_ORACLE_QUBITS:
        raise ResourceError(f"unitary oracle limited to {MAX_ORACLE_QUBITS} qubits, got {circuit.n_qubits}")
    if any(g.kind == 'measure' for g in circuit.gates):
        raise UnsupportedGateError('measure', "circuit contains measurements")
    return embed_unitary(circuit.gates, circuit.n_qubits, gate_unitary)


def validate_coupling(circuit, coupling):
    """(index, gate) for every multi-qubit gate the coupling map cannot run directly"""
    violations = []
    for index, gate in enumerate(circuit.gates):
        if gate.kind == 'measure' or gate.arity == 1:
            continue
        if gate.arity > 2 or not coupling.connected(*gate.qubits):
            violations.append((index, gate))
    return violations
