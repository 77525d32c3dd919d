"""
Ideal pulse library read straight off the device truth model.

Used by tests and duration accounting: the Rx calibrations are the exact
sin^2 curves of the current drive gains and every pair keeps its default CR
pulse (baseline particle), which is exact at CR gain 1.
"""

from src.calibration.cr import CrCalibration
from src.calibration.rx import SWEEP_DURATIONS, RxCalibration, SinFit, drag_for_duration
from src.exceptions import CalibrationInfeasibleError
from src.pulse import drag_area
from src.simulator.models.device import DeviceModel
from src.transpiler.library import PulseLibrary


def pi_amplitude(device, qubit, duration):
    """Amplitude of the t/4-sigma DRAG pulse giving exactly Rx(pi) at ``duration``"""
    unit = drag_area(drag_for_duration(duration, 1.0))
    return device.ref_area[qubit] / (device.drive_gain[qubit] * unit)


def ideal_rx_calibration(device, qubit, duration=None):
    durations = SWEEP_DURATIONS if duration is None else (duration,)
    for t0 in durations:
        a_pi = pi_amplitude(device, qubit, t0)
        if a_pi <= 1.0:
            beta = device.x_pulses[qubit].beta
            return RxCalibration(qubit, t0, a_pi, SinFit.ideal(a_pi), t0 / 4.0, beta, device.clock)
    raise CalibrationInfeasibleError(f"qubit {qubit} cannot reach Rx(pi) within {max(durations)} dt")


def ideal_pulse_library(device, duration=None):
    """Library with exact Rx fits for every qubit and baseline Rzx entries for every pair"""
    if not isinstance(device, DeviceModel):
        device = DeviceModel(device)
    defaults = device.defaults()
    library = PulseLibrary.from_defaults(defaults)
    for qubit in range(device.n_qubits):
        library = library.with_rx(ideal_rx_calibration(device, qubit, duration))
    for pair in sorted(defaults.cr_pulses):
        library = library.with_zx(CrCalibration.from_defaults(defaults, pair))
    return library
