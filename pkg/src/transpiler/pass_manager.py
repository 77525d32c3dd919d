"""
Compilation pipeline: route, unroll, orient, attach pulses.
"""

from dataclasses import dataclass

from src.circuit import Circuit, validate_coupling
from src.exceptions import RoutingError
from src.logging_config import get_logger
from src.pulse import Schedule
from src.transpiler.equivalence import check_mode, library_for_mode
from src.transpiler.routing import orient, route
from src.transpiler.scheduling import attach_pulses
from src.transpiler.unroll import unroll

events = get_logger(__name__)


@dataclass(frozen=True)
class TranspileResult:
    circuit: Circuit
    schedule: Schedule
    mode: str
    swaps: int

    @property
    def duration(self):
        return self.schedule.duration

    @property
    def final_layout(self):
        return self.circuit.final_layout


def compile_circuit(circuit, coupling, mode='squeeze', toffoli_variant='auto'):
    """Gate-level half of the pipeline: a routed, oriented basis circuit"""
    check_mode(mode)
    rules = library_for_mode(mode)
    routed = route(circuit, coupling, toffoli_variant=toffoli_variant, library=rules)
    basis = orient(unroll(routed, library=rules), coupling)
    violations = validate_coupling(basis, coupling)
    if violations:
        index, gate = violations[0]
        raise RoutingError(f"gate {index} ({gate!r}) is not on a coupled pair after routing")
    return basis, routed.count('swap') - circuit.count('swap')


def transpile(circuit, library, mode='squeeze', coupling=None, toffoli_variant='auto'):
    """Compile a logical circuit into a pulse schedule for the library's device"""
    coupling = coupling or library.coupling
    basis, swaps = compile_circuit(circuit, coupling, mode, toffoli_variant)
    schedule = attach_pulses(basis, library, mode)
    events.info('transpiled', mode=mode, gates=len(circuit), basis_gates=len(basis),
                swaps=swaps, duration_dt=schedule.duration)
    return TranspileResult(basis, schedule, mode, swaps)
