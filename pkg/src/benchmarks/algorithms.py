"""
Benchmark circuit generators and the noiseless end-to-end check.

Bernstein-Vazirani, QFT, one-layer QAOA at fixed angles and the CDKM ripple
carry adder. Every generator is deterministic in its seed.
"""

import logging
import math

import networkx as nx
import numpy as np

from src.benchmarks.metrics import born_distribution, counts_to_distribution, distance_1norm
from src.circuit import Circuit, Gate, gate_unitary
from src.circuit.linalg import apply_matrix
from src.exceptions import DomainError, ResourceError
from src.simulator.backend import run_schedules
from src.transpiler.pass_manager import transpile

logger = logging.getLogger(__name__)

MAX_QUBITS = 5
MAX_ADDER_WIDTH = 2
QAOA_GAMMA = 0.7
QAOA_BETA = 0.35
BENCHMARKS = ('bv', 'qft', 'qaoa', 'cdkm')


def _measure_all(qubits):
    return [Gate('measure', (q,)) for q in qubits]


def _bits(rng, width):
    return ''.join(str(int(b)) for b in rng.integers(0, 2, size=width))


def bernstein_vazirani(hidden, measure=True):
    """Data qubits 0..n-1 in string order, ancilla last; reads out ``hidden``"""
    n = len(hidden)
    if not set(hidden) <= {'0', '1'} or n == 0:
        raise DomainError(f"hidden string must be a non-empty bitstring, got {hidden!r}")
    if n + 1 > MAX_QUBITS:
        raise ResourceError(f"BV on {n} bits needs {n + 1} qubits, limit is {MAX_QUBITS}")
    ancilla = n
    gates = [Gate('x', (ancilla,))]
    gates += [Gate('h', (q,)) for q in range(n + 1)]
    gates += [Gate('cnot', (q, ancilla)) for q, bit in enumerate(hidden) if bit == '1']
    gates += [Gate('h', (q,)) for q in range(n)]
    if measure:
        gates += _measure_all(range(n))
    return Circuit(n + 1, tuple(gates))


def qft(n_qubits, initial=None, measure=True):
    """Textbook QFT with final swaps (qubit 0 most significant), n(n-1)/2 controlled phases"""
    if n_qubits > MAX_QUBITS:
        raise ResourceError(f"QFT limited to {MAX_QUBITS} qubits, got {n_qubits}")
    gates = []
    if initial:
        gates += [Gate('x', (q,)) for q, bit in enumerate(initial) if bit == '1']
    for j in range(n_qubits):
        gates.append(Gate('h', (j,)))
        for k in range(j + 1, n_qubits):
            gates.append(Gate('cphase', (k, j), (math.pi / 2 ** (k - j),)))
    for q in range(n_qubits // 2):
        gates.append(Gate('swap', (q, n_qubits - 1 - q)))
    if measure:
        gates += _measure_all(range(n_qubits))
    return Circuit(n_qubits, tuple(gates))


def qaoa_graph(n_qubits, seed=None, p=0.7):
    """Seeded random bipartite graph on ``n_qubits`` nodes with at least one edge"""
    left = max(n_qubits // 2, 1)
    graph = nx.bipartite.random_graph(left, n_qubits - left, p, seed=seed)
    if graph.number_of_edges() == 0:
        graph.add_edge(0, left)
    return graph


def qaoa(n_qubits, seed=None, gamma=QAOA_GAMMA, beta=QAOA_BETA, measure=True):
    """One MaxCut QAOA layer at fixed (gamma, beta); no optimizer loop"""
    if n_qubits > MAX_QUBITS:
        raise ResourceError(f"QAOA limited to {MAX_QUBITS} qubits, got {n_qubits}")
    if n_qubits < 2:
        raise DomainError("QAOA needs at least two qubits")
    graph = qaoa_graph(n_qubits, seed)
    gates = [Gate('h', (q,)) for q in range(n_qubits)]
    gates += [Gate('rzz', (a, b), (2 * gamma,)) for a, b in sorted(graph.edges())]
    gates += [Gate('rx', (q,), (2 * beta,)) for q in range(n_qubits)]
    if measure:
        gates += _measure_all(range(n_qubits))
    return Circuit(n_qubits, tuple(gates))


def _maj(x, y, z):
    return [Gate('cnot', (z, y)), Gate('cnot', (z, x)), Gate('toffoli', (x, y, z))]


def _uma(x, y, z):
    return [Gate('toffoli', (x, y, z)), Gate('cnot', (z, x)), Gate('cnot', (x, y))]


def adder_layout(width):
    """Qubit indices (c0, [b_i], [a_i], z) of a CDKM adder"""
    b = [1 + 2 * i for i in range(width)]
    a = [2 + 2 * i for i in range(width)]
    return 0, b, a, 2 * width + 1


def cdkm_adder(a, b, carry_in=0, width=None, measure=True):
    """Ripple-carry adder; measures z, b_{n-1}, ..., b_0 so the bitstring reads a + b + carry_in"""
    width = width or max(a.bit_length(), b.bit_length(), 1)
    if width > MAX_ADDER_WIDTH:
        raise ResourceError(f"CDKM adder limited to {MAX_ADDER_WIDTH} data bits, got {width}")
    if a >= 2 ** width or b >= 2 ** width or a < 0 or b < 0 or carry_in not in (0, 1):
        raise DomainError(f"inputs a={a}, b={b}, carry={carry_in} do not fit {width} bit(s)")
    c0, b_q, a_q, z = adder_layout(width)

    gates = [Gate('x', (c0,))] if carry_in else []
    for i in range(width):
        if (a >> i) & 1:
            gates.append(Gate('x', (a_q[i],)))
        if (b >> i) & 1:
            gates.append(Gate('x', (b_q[i],)))

    gates += _maj(c0, b_q[0], a_q[0])
    for i in range(1, width):
        gates += _maj(a_q[i - 1], b_q[i], a_q[i])
    gates.append(Gate('cnot', (a_q[-1], z)))
    for i in range(width - 1, 0, -1):
        gates += _uma(a_q[i - 1], b_q[i], a_q[i])
    gates += _uma(c0, b_q[0], a_q[0])

    if measure:
        gates += _measure_all([z] + b_q[::-1])
    return Circuit(2 * width + 2, tuple(gates))


def make_benchmark(name, size=3, seed=None, measure=True):
    """Named benchmark circuit; ``size`` is data bits for bv and cdkm, qubits otherwise"""
    rng = np.random.default_rng(seed)
    if name == 'bv':
        hidden = _bits(rng, size)
        if '1' not in hidden:
            hidden = '1' + hidden[1:]
        return bernstein_vazirani(hidden, measure)
    if name == 'qft':
        return qft(size, initial=_bits(rng, size), measure=measure)
    if name == 'qaoa':
        return qaoa(size, seed=int(rng.integers(0, 2 ** 31)), measure=measure)
    if name == 'cdkm':
        if size > MAX_ADDER_WIDTH:
            raise ResourceError(f"CDKM adder limited to {MAX_ADDER_WIDTH} data bits, got {size}")
        a, b = (int(v) for v in rng.integers(0, 2 ** size, size=2))
        return cdkm_adder(a, b, int(rng.integers(0, 2)), width=size, measure=measure)
    raise DomainError(f"unknown benchmark {name!r}; expected one of {BENCHMARKS}")


def ideal_output(circuit):
    """Exact output distribution of a circuit with measurements, in measurement order"""
    n = circuit.n_qubits
    state = np.zeros((2,) * n, dtype=complex)
    state[(0,) * n] = 1.0
    for gate in circuit.without_measurements().gates:
        state = apply_matrix(state, gate_unitary(gate), list(gate.qubits))
    return born_distribution(state, circuit.measured_qubits() or tuple(range(n)))


def run_benchmark(circuit, backend, library, mode='squeeze', shots=None, noiseless=False):
    """(1-norm error, schedule duration) of one circuit compiled in ``mode``"""
    schedule = transpile(circuit, library, mode).schedule
    if shots is None:
        measured = backend.probabilities(schedule, noiseless=noiseless)
    else:
        counts = run_schedules(backend, [schedule], shots, noiseless=noiseless)[0]
        measured = counts_to_distribution(counts, shots)
    error = distance_1norm(measured, ideal_output(circuit))
    logger.debug("benchmark in %s mode: error %.3g, %d dt", mode, error, schedule.duration)
    return error, schedule.duration
