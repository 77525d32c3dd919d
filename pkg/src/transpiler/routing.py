"""
Breadth-first swap insertion, processed gate by gate, and CNOT/Rzx orientation.
"""

import logging
import math

import networkx as nx

from src.circuit import Circuit, Gate
from src.exceptions import ResourceError, RoutingError, UnsupportedGateError
from src.transpiler.equivalence import library_for_mode

logger = logging.getLogger(__name__)

TOFFOLI_CHOICES = ('auto', 'A', 'B')


class _RouterState:
    """Layout and emitted gates of a routing pass in progress"""

    def __init__(self, n_logical, n_physical):
        self.layout = list(range(n_logical))
        self.occupant = {p: (p if p < n_logical else None) for p in range(n_physical)}
        self.gates = []
        self.swaps = 0

    def copy(self):
        other = _RouterState.__new__(_RouterState)
        other.layout = list(self.layout)
        other.occupant = dict(self.occupant)
        other.gates = list(self.gates)
        other.swaps = self.swaps
        return other

    def swap(self, a, b):
        self.gates.append(Gate('swap', (a, b)))
        self.swaps += 1
        la, lb = self.occupant[a], self.occupant[b]
        self.occupant[a], self.occupant[b] = lb, la
        if la is not None:
            self.layout[la] = b
        if lb is not None:
            self.layout[lb] = a


def _route_gate(state, gate, coupling, graph):
    if gate.arity == 1:
        state.gates.append(gate.remap(state.layout))
        return
    if gate.arity != 2:
        raise UnsupportedGateError(gate.kind, "only one- and two-qubit gates can be routed")

    a, b = (state.layout[q] for q in gate.qubits)
    if not coupling.connected(a, b):
        try:
            path = nx.shortest_path(graph, a, b)
        except (nx.NetworkXNoPath, nx.NodeNotFound) as exc:
            raise RoutingError(f"no path between physical qubits {a} and {b}") from exc
        for here, there in zip(path[:-2], path[1:-1]):
            state.swap(here, there)
    state.gates.append(gate.remap(state.layout))


def route(circuit, coupling, toffoli_variant='auto', library=None, mode='squeeze'):
    """Insert swaps so every two-qubit gate sits on a coupled pair.

    Toffoli gates are expanded with the library's variants; with ``auto`` every
    variant is routed from the current layout and the one needing fewer swaps is
    kept, ties going to A.
    """
    if toffoli_variant not in TOFFOLI_CHOICES:
        raise ValueError(f"toffoli_variant must be one of {TOFFOLI_CHOICES}")
    if circuit.n_qubits > coupling.n_qubits:
        raise ResourceError(f"circuit needs {circuit.n_qubits} qubits, device has {coupling.n_qubits}")

    library = library or library_for_mode(mode)
    graph = coupling.graph()
    state = _RouterState(circuit.n_qubits, coupling.n_qubits)

    for gate in circuit.gates:
        if gate.kind != 'toffoli':
            _route_gate(state, gate, coupling, graph)
            continue

        variants = library.toffoli_variants or {'A': library.rule('toffoli').template}
        if toffoli_variant != 'auto' and toffoli_variant in variants:
            names = [toffoli_variant]
        else:
            names = sorted(variants)

        best = None
        for name in names:
            trial = state.copy()
            for sub in variants[name]().gates:
                _route_gate(trial, sub.remap(gate.qubits), coupling, graph)
            cost = trial.swaps - state.swaps
            logger.debug("Toffoli variant %s needs %d swap(s)", name, cost)
            if best is None or cost < best[0]:
                best = (cost, name, trial)
        state = best[2]

    return Circuit(coupling.n_qubits, tuple(state.gates), tuple(state.layout))


def orient(circuit, coupling):
    """Reverse CNOT/Rzx gates whose control channel only exists the other way round.

    H on both qubits before and after swaps the roles of control and target;
    each H is emitted as Rz(pi/2) Rx(pi/2) Rz(pi/2).
    """
    def hadamard(q):
        return [Gate('rz', (q,), (math.pi / 2,)), Gate('rx', (q,), (math.pi / 2,)), Gate('rz', (q,), (math.pi / 2,))]

    out = []
    for gate in circuit.gates:
        if gate.kind in ('cnot', 'rzx'):
            c, t = gate.qubits
            if not coupling.directed(c, t) and coupling.directed(t, c):
                wrap = hadamard(c) + hadamard(t)
                out.extend(wrap)
                out.append(Gate(gate.kind, (t, c), gate.params))
                out.extend(wrap)
                continue
        out.append(gate)
    return Circuit(circuit.n_qubits, tuple(out), circuit.final_layout)
