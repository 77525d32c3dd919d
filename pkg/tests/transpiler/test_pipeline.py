import math

import numpy as np
import pytest

from src.circuit import Circuit, CouplingMap, Gate, circuit_unitary, distance_up_to_global_phase, permutation_unitary
from src.exceptions import CalibrationMissingError, RangeError, ResourceError, RoutingError, UnsupportedGateError
from src.simulator.models.device import DeviceModel, lima_config
from src.transpiler import MODES, PulseLibrary, attach_pulses, basis_for_mode, library_for_mode, orient, route, transpile, unroll
from src.transpiler.scheduling import rx_pulses

MIXED = Circuit(3, (
    Gate('h', (0,)), Gate('u3', (1,), (1.1, 0.4, -0.7)), Gate('cnot', (0, 1)), Gate('rzz', (1, 2), (0.8,)),
    Gate('cphase', (2, 0), (-2.4,)), Gate('ry', (2,), (0.6,)), Gate('swap', (0, 2)), Gate('csx', (1, 0)),
    Gate('toffoli', (0, 1, 2)), Gate('rxx', (0, 1), (3.0,)), Gate('ryy', (2, 1), (-0.2,)), Gate('rzx', (0, 2), (-1.2,)),
    Gate('sdg', (1,)), Gate('t', (2,)), Gate('cz', (0, 1)), Gate('sqrtx', (0,)), Gate('y', (1,)),
))


def same_up_to_phase(a, b, tol=1e-9):
    return distance_up_to_global_phase(a, b) < tol


class TestUnroll:
    """Test suite for rule-driven unrolling"""

    @pytest.mark.unit
    @pytest.mark.transpiler
    @pytest.mark.parametrize('mode', MODES)
    def test_lands_in_basis_and_keeps_unitary(self, mode):
        """Every mode reaches its basis without changing the circuit unitary"""
        unrolled = unroll(MIXED, mode=mode)
        assert unrolled.kinds() <= basis_for_mode(mode)
        assert same_up_to_phase(circuit_unitary(unrolled), circuit_unitary(MIXED))

    @pytest.mark.unit
    @pytest.mark.transpiler
    def test_rzx_modes_avoid_cnot_for_rotations(self):
        """squeeze lowers a two-qubit rotation onto one Rzx, baseline onto two CNOTs"""
        circuit = Circuit(2, (Gate('rzz', (0, 1), (0.5,)),))
        assert unroll(circuit, mode='squeeze').count('rzx') == 1
        assert unroll(circuit, mode='squeeze').count('cnot') == 0
        assert unroll(circuit, mode='baseline').count('cnot') == 2

    @pytest.mark.unit
    @pytest.mark.transpiler
    def test_angles_are_normalized(self):
        """Basis rotations come out with angles in (0, pi] for Rx/Rzx and (-pi, pi] for Rz"""
        circuit = Circuit(2, (Gate('rx', (0,), (-2.0,)), Gate('rzx', (0, 1), (5.0,)), Gate('rz', (1,), (7.0,))))
        unrolled = unroll(circuit, mode='squeeze')
        for gate in unrolled.gates:
            if gate.kind in ('rx', 'rzx'):
                assert 0 < gate.theta <= math.pi
            else:
                assert -math.pi < gate.theta <= math.pi
        assert same_up_to_phase(circuit_unitary(unrolled), circuit_unitary(circuit))

    @pytest.mark.unit
    @pytest.mark.transpiler
    def test_zero_rotations_vanish(self):
        """Rotations by multiples of 2 pi disappear"""
        circuit = Circuit(1, (Gate('rx', (0,), (2 * math.pi,)), Gate('rz', (0,), (0.0,))))
        assert len(unroll(circuit, mode='baseline')) == 0

    @pytest.mark.unit
    @pytest.mark.transpiler
    def test_missing_rule(self):
        """A gate with no rule and outside the basis is reported"""
        with pytest.raises(UnsupportedGateError):
            unroll(Circuit(1, (Gate('u3', (0,), (0.1, 0.2, 0.3)),)), basis={'rx'}, library=library_for_mode('squeeze'))


class TestRouting:
    """Test suite for swap insertion and orientation"""

    @pytest.mark.unit
    @pytest.mark.transpiler
    def test_routed_circuit_equals_original_then_permutation(self):
        """A distant CNOT on a line is routed with swaps; the final layout accounts for them"""
        circuit = Circuit(3, (Gate('h', (0,)), Gate('cnot', (0, 2)), Gate('rx', (1,), (0.4,)), Gate('cnot', (2, 0))))
        routed = route(circuit, CouplingMap.line(3))
        assert routed.count('swap') == 1
        expected = permutation_unitary(routed.final_layout, 3) @ circuit_unitary(circuit)
        assert same_up_to_phase(circuit_unitary(routed), expected)

    @pytest.mark.unit
    @pytest.mark.transpiler
    def test_adjacent_gates_need_no_swaps(self):
        """Coupled pairs are left alone"""
        routed = route(Circuit(2, (Gate('cnot', (1, 0)),)), CouplingMap.line(2))
        assert routed.count('swap') == 0
        assert routed.final_layout == (0, 1)

    @pytest.mark.unit
    @pytest.mark.transpiler
    def test_disconnected_device(self):
        """No path between the operands raises RoutingError"""
        coupling = CouplingMap.from_pairs([(0, 1)], n_qubits=3)
        with pytest.raises(RoutingError):
            route(Circuit(3, (Gate('cnot', (0, 2)),)), coupling)

    @pytest.mark.unit
    @pytest.mark.transpiler
    def test_circuit_wider_than_device(self):
        """A circuit cannot use more qubits than the device has"""
        with pytest.raises(ResourceError):
            route(Circuit(4, ()), CouplingMap.line(3))

    @pytest.mark.unit
    @pytest.mark.transpiler
    def test_toffoli_auto_picks_cheaper_variant(self):
        """auto never needs more swaps than either fixed variant"""
        coupling = CouplingMap.from_pairs([(0, 1), (1, 2), (2, 3)], n_qubits=4, symmetric=True)
        circuit = Circuit(4, (Gate('toffoli', (0, 3, 1)),))
        swaps = {v: route(circuit, coupling, toffoli_variant=v).count('swap') for v in ('auto', 'A', 'B')}
        assert swaps['auto'] == min(swaps['A'], swaps['B'])

    @pytest.mark.unit
    @pytest.mark.transpiler
    def test_unknown_toffoli_choice(self):
        """Variant names are checked"""
        with pytest.raises(ValueError):
            route(Circuit(3, ()), CouplingMap.line(3), toffoli_variant='C')

    @pytest.mark.unit
    @pytest.mark.transpiler
    @pytest.mark.parametrize('kind, params', [('cnot', ()), ('rzx', (0.7,))])
    def test_orient_reverses_one_way_pairs(self, kind, params):
        """A gate against the only channel direction is wrapped in Hadamards"""
        coupling = CouplingMap.from_pairs([(0, 1)])
        circuit = Circuit(2, (Gate(kind, (1, 0), params),))
        oriented = orient(circuit, coupling)
        two_qubit = [g for g in oriented.gates if g.arity == 2]
        assert [g.qubits for g in two_qubit] == [(0, 1)]
        assert same_up_to_phase(circuit_unitary(oriented), circuit_unitary(circuit))


class TestPulseAttachment:
    """Test suite for attaching pulses to basis circuits"""

    @pytest.mark.unit
    @pytest.mark.transpiler
    def test_rz_is_a_frame_change(self, ideal_library):
        """Rz costs no time"""
        schedule = attach_pulses(Circuit(1, (Gate('rz', (0,), (0.3,)),)), ideal_library, 'squeeze')
        assert schedule.duration == 0
        assert len(schedule.instructions) == 1

    @pytest.mark.unit
    @pytest.mark.transpiler
    def test_baseline_rx_uses_two_sx_pulses(self, ideal_library):
        """Arbitrary Rx in baseline mode is sqrt(X) - Rz - sqrt(X)"""
        steps = rx_pulses(ideal_library, 'baseline', 0, 1.0)
        assert [kind for kind, _ in steps].count('play') == 2

    @pytest.mark.unit
    @pytest.mark.transpiler
    def test_baseline_special_angles(self, ideal_library):
        """pi and pi/2 use the X and sqrt(X) pulses directly"""
        assert rx_pulses(ideal_library, 'baseline', 0, math.pi) == [('play', ideal_library.x_pulse(0))]
        assert rx_pulses(ideal_library, 'baseline', 0, math.pi / 2) == [('play', ideal_library.sx_pulse(0))]

    @pytest.mark.unit
    @pytest.mark.transpiler
    def test_rx_out_of_range(self, ideal_library):
        """Unrolled Rx angles are in (0, pi]"""
        with pytest.raises(RangeError):
            rx_pulses(ideal_library, 'squeeze', 0, -0.5)

    @pytest.mark.unit
    @pytest.mark.transpiler
    def test_non_basis_gate(self, ideal_library):
        """Only basis gates can be attached"""
        with pytest.raises(UnsupportedGateError):
            attach_pulses(Circuit(1, (Gate('h', (0,)),)), ideal_library, 'baseline')

    @pytest.mark.unit
    @pytest.mark.transpiler
    def test_squeeze_requires_rx_calibration(self, lima_device):
        """squeeze mode has no fallback pulse for an uncalibrated qubit"""
        library = PulseLibrary.from_defaults(lima_device.defaults())
        with pytest.raises(CalibrationMissingError):
            transpile(Circuit(1, (Gate('x', (0,)),)), library, 'squeeze')
        assert transpile(Circuit(1, (Gate('x', (0,)),)), library, 'baseline').duration == 160

    @pytest.mark.unit
    @pytest.mark.transpiler
    def test_deterministic(self, ideal_library):
        """Same inputs give the same schedule"""
        circuit = Circuit(3, (Gate('h', (0,)), Gate('cnot', (0, 1)), Gate('rzz', (1, 2), (0.3,))))
        assert transpile(circuit, ideal_library, 'squeeze').schedule == transpile(circuit, ideal_library, 'squeeze').schedule


class TestScheduleDurations:
    """Test suite for durations on the lima device"""

    @pytest.mark.unit
    @pytest.mark.transpiler
    @pytest.mark.parametrize('mode, expected', [('baseline', 160), ('gokhale', 160), ('squeeze', 64), ('earnest', 160)])
    def test_x_gate(self, ideal_library, mode, expected):
        """X is one default pulse except in squeeze mode, which uses the fastest calibrated Rx"""
        circuit = Circuit(1, (Gate('x', (0,)),))
        assert transpile(circuit, ideal_library, mode).duration == expected

    @pytest.mark.unit
    @pytest.mark.transpiler
    @pytest.mark.parametrize('mode, expected', [('baseline', 320), ('gokhale', 160), ('squeeze', 64)])
    def test_u3_gate(self, ideal_library, mode, expected):
        """Baseline U3 needs two sqrt(X) pulses; the direct forms need one"""
        circuit = Circuit(1, (Gate('u3', (0,), (1.1, 0.4, -0.7)),))
        assert transpile(circuit, ideal_library, mode).duration == expected

    @pytest.mark.unit
    @pytest.mark.transpiler
    def test_cnot(self, ideal_library):
        """SX(target) + CR + X + CR + X: 1536 dt with default pulses, 1440 dt with the fast SX"""
        circuit = Circuit(2, (Gate('cnot', (0, 1)),))
        assert transpile(circuit, ideal_library, 'baseline').duration == 1536
        assert transpile(circuit, ideal_library, 'squeeze').duration == 1440

    @pytest.mark.unit
    @pytest.mark.transpiler
    def test_two_cnots_do_not_overlap(self, ideal_library):
        """Each CNOT runs as one block"""
        circuit = Circuit(2, (Gate('cnot', (0, 1)), Gate('cnot', (0, 1))))
        assert transpile(circuit, ideal_library, 'baseline').duration == 3072

    @pytest.mark.unit
    @pytest.mark.transpiler
    def test_rzx_quarter_turn_is_one_echo(self, ideal_library):
        """Rzx(pi/2) is CR(pi/4) - X - CR(-pi/4) - X with the unscaled pulse"""
        circuit = Circuit(2, (Gate('rzx', (0, 1), (math.pi / 2,)),))
        assert transpile(circuit, ideal_library, 'squeeze').duration == 528 + 160 + 528 + 160

    @pytest.mark.unit
    @pytest.mark.transpiler
    def test_small_rzx_is_shorter(self, ideal_library):
        """Smaller angles shrink the CR flat top"""
        short = transpile(Circuit(2, (Gate('rzx', (0, 1), (0.3,)),)), ideal_library, 'squeeze').duration
        assert short < 1376

    @pytest.mark.unit
    @pytest.mark.transpiler
    def test_reverse_pair_uses_its_own_channel(self, ideal_library):
        """Lima has CR pulses in both directions, so no orientation Hadamards are added"""
        result = transpile(Circuit(2, (Gate('cnot', (1, 0)),)), ideal_library, 'baseline')
        controls = {p.channel.name for p in result.schedule.plays() if p.channel.kind == 'control'}
        assert controls == {'u1_0'}

    @pytest.mark.unit
    @pytest.mark.transpiler
    def test_routing_on_lima(self, ideal_library):
        """A CNOT between uncoupled qubits gains swaps"""
        result = transpile(Circuit(5, (Gate('cnot', (0, 4)),)), ideal_library, 'baseline')
        assert result.swaps >= 1
        assert sorted(result.final_layout) == [0, 1, 2, 3, 4]

    @pytest.mark.unit
    @pytest.mark.transpiler
    def test_measurement_order_follows_layout(self, ideal_library):
        """Measured physical qubits follow the logical qubits through swaps"""
        circuit = Circuit(5, (Gate('cnot', (0, 4)), Gate('measure', (0,)), Gate('measure', (4,))))
        result = transpile(circuit, ideal_library, 'baseline')
        layout = result.final_layout
        assert result.schedule.measure == (layout[0], layout[4])


class TestSchedulePhysics:
    """Test suite running compiled schedules on the noiseless truth model"""

    @pytest.mark.integration
    @pytest.mark.transpiler
    @pytest.mark.parametrize('mode', MODES)
    def test_compiled_unitary_matches(self, lima_backend, ideal_library, mode):
        """The pulse schedule implements the logical circuit on the device"""
        circuit = Circuit(2, (Gate('h', (0,)), Gate('cnot', (0, 1)), Gate('rzz', (0, 1), (0.7,)),
                              Gate('u3', (1,), (0.4, 1.0, -2.0))))
        result = transpile(circuit, ideal_library, mode)
        assert result.final_layout[:2] == (0, 1)
        u = lima_backend.unitary(result.schedule, qubits=(0, 1))
        assert same_up_to_phase(u, circuit_unitary(circuit), tol=1e-6)


def test_library_device_mismatch_is_detected():
    """A library without the pair has no CR pulse for it"""
    defaults = DeviceModel(lima_config()).defaults()
    library = PulseLibrary.from_defaults(defaults)
    with pytest.raises(CalibrationMissingError):
        library.cr_base((0, 4))
    assert np.isclose(library.sx_pulse(0).amplitude, library.x_pulse(0).amplitude / 2)
