"""Gate-level compilation and pulse attachment"""

from src.transpiler.decompositions import (
    decompose_csx,
    decompose_toffoli,
    decompose_toffoli_cnot,
    decompose_two_qubit_rotation,
    decompose_two_qubit_rotation_cnot,
    decompose_u3_baseline,
    decompose_u3_gokhale,
    decompose_u3_squeeze,
    negative_rx,
)
from src.transpiler.equivalence import MODES, EquivalenceRule, basis_for_mode, library_for_mode
from src.transpiler.library import PulseLibrary
from src.transpiler.pass_manager import TranspileResult, compile_circuit, transpile
from src.transpiler.routing import orient, route
from src.transpiler.scheduling import attach_pulses
from src.transpiler.unroll import unroll

__all__ = [
    'decompose_csx', 'decompose_toffoli', 'decompose_toffoli_cnot', 'decompose_two_qubit_rotation',
    'decompose_two_qubit_rotation_cnot', 'decompose_u3_baseline', 'decompose_u3_gokhale',
    'decompose_u3_squeeze', 'negative_rx',
    'MODES', 'EquivalenceRule', 'basis_for_mode', 'library_for_mode',
    'PulseLibrary', 'TranspileResult', 'compile_circuit', 'transpile',
    'orient', 'route', 'attach_pulses', 'unroll',
]
