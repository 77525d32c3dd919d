"""
Equivalence rules and the per-mode libraries used by ``unroll``.

squeeze and earnest lower two-qubit rotations onto one Rzx; baseline and
gokhale lower them onto two CNOTs.
"""

import math
from dataclasses import dataclass, field
from typing import Callable, Dict, Tuple

from src.circuit import Circuit, Gate
from src.exceptions import UnsupportedGateError
from src.transpiler import decompositions as dec

PI = math.pi

MODES = ('squeeze', 'gokhale', 'baseline', 'earnest')

RZX_BASIS = frozenset({'rx', 'rz', 'rzx', 'cnot', 'measure'})
CNOT_BASIS = frozenset({'rx', 'rz', 'cnot', 'measure'})


def basis_for_mode(mode):
    check_mode(mode)
    return RZX_BASIS if mode in ('squeeze', 'earnest') else CNOT_BASIS


def check_mode(mode):
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {', '.join(MODES)}")


@dataclass(frozen=True)
class EquivalenceRule:
    """Replacement template for one gate kind.

    ``template`` receives the gate's parameters and returns a local circuit whose
    qubit i is mapped onto the gate's i-th operand.
    """

    pattern: str
    template: Callable
    cost: Tuple[int, int] = (0, 0)

    def expand(self, gate):
        local = self.template(*gate.params)
        return [g.remap(gate.qubits) for g in local.gates]


def _fixed(*gates):
    width = 1 + max(q for g in gates for q in g.qubits)
    return lambda *params: Circuit(width, gates)


def _single_qubit_rules():
    return {
        'x': EquivalenceRule('x', _fixed(dec.rx(PI)), (0, 1)),
        'sqrtx': EquivalenceRule('sqrtx', _fixed(dec.rx(PI / 2)), (0, 1)),
        'y': EquivalenceRule('y', _fixed(dec.rz(PI), dec.rx(PI)), (0, 1)),
        'z': EquivalenceRule('z', _fixed(dec.rz(PI)), (0, 0)),
        's': EquivalenceRule('s', _fixed(dec.rz(PI / 2)), (0, 0)),
        'sdg': EquivalenceRule('sdg', _fixed(dec.rz(-PI / 2)), (0, 0)),
        't': EquivalenceRule('t', _fixed(dec.rz(PI / 4)), (0, 0)),
        'tdg': EquivalenceRule('tdg', _fixed(dec.rz(-PI / 4)), (0, 0)),
        'h': EquivalenceRule('h', _fixed(dec.rz(PI / 2), dec.rx(PI / 2), dec.rz(PI / 2)), (0, 1)),
        'ry': EquivalenceRule('ry', lambda theta: _ry(theta), (0, 1)),
        'cz': EquivalenceRule('cz', _fixed(dec.h(1), dec.cnot(), dec.h(1)), (1, 2)),
        'swap': EquivalenceRule('swap', _fixed(dec.cnot(0, 1), dec.cnot(1, 0), dec.cnot(0, 1)), (3, 0)),
    }


def _ry(theta):
    return Circuit(1, (dec.rz(-PI / 2), dec.rx(theta), dec.rz(PI / 2)))


@dataclass(frozen=True)
class EquivalenceLibrary:
    """Rules for one compilation mode plus the Toffoli variants the router may pick from"""

    mode: str
    rules: Dict[str, EquivalenceRule]
    toffoli_variants: Dict[str, Callable] = field(default_factory=dict)

    def rule(self, kind):
        try:
            return self.rules[kind]
        except KeyError:
            raise UnsupportedGateError(kind, f"no equivalence rule for {kind} in {self.mode} mode") from None

    @property
    def basis(self):
        return basis_for_mode(self.mode)


def library_for_mode(mode):
    """Equivalence library used by ``unroll`` for a compilation mode"""
    check_mode(mode)
    rules = _single_qubit_rules()

    if mode == 'squeeze':
        rules['u3'] = EquivalenceRule('u3', dec.decompose_u3_squeeze, (0, 1))
    elif mode == 'gokhale':
        rules['u3'] = EquivalenceRule('u3', dec.decompose_u3_gokhale, (0, 1))
    else:
        rules['u3'] = EquivalenceRule('u3', dec.decompose_u3_baseline, (0, 2))

    if mode in ('squeeze', 'earnest'):
        for kind in ('rxx', 'ryy', 'rzz', 'cphase'):
            rules[kind] = EquivalenceRule(kind, _bind(dec.decompose_two_qubit_rotation, kind), (1, 0))
        rules['csx'] = EquivalenceRule('csx', lambda: dec.decompose_csx(PI / 2), (1, 1))
    else:
        for kind in ('rxx', 'ryy', 'rzz', 'cphase', 'rzx'):
            rules[kind] = EquivalenceRule(kind, _bind(dec.decompose_two_qubit_rotation_cnot, kind), (2, 0))
        rules['csx'] = EquivalenceRule('csx', _fixed(dec.h(1), Gate('cphase', (0, 1), (PI / 2,)), dec.h(1)), (2, 2))

    if mode == 'squeeze':
        variants = {'A': lambda: dec.decompose_toffoli('A'), 'B': lambda: dec.decompose_toffoli('B')}
    else:
        variants = {'A': dec.decompose_toffoli_cnot}
    rules['toffoli'] = EquivalenceRule('toffoli', variants['A'], (5 if mode == 'squeeze' else 6, 0))

    return EquivalenceLibrary(mode, rules, variants)


def _bind(function, kind):
    return lambda theta: function(kind, theta)
