"""Rx and cross-resonance calibration routines"""

from src.calibration.cr import (
    CrCalibration,
    build_cnot_schedule,
    calibrate_cr_round,
    cr_pulse_for_angle,
    grid_scan,
    rzx_schedule,
    scale_cr,
    score_particle,
    score_particles,
)
from src.calibration.particles import (
    BASELINE,
    SPACING0,
    FilterRound,
    Particle,
    initial_grid,
    particle_filter_round,
    resampling_weights,
)
from src.calibration.rx import (
    CalibSample,
    RxCalibration,
    ScaledDefaultRx,
    SinFit,
    amplitude_for_theta,
    calibrate_rx,
    collect_rx_samples,
    fit_sin2,
    remove_outliers,
    sweep_fastest_x,
    trailing_average,
    validate_rx,
)

__all__ = [
    'CrCalibration', 'build_cnot_schedule', 'calibrate_cr_round', 'cr_pulse_for_angle', 'grid_scan',
    'rzx_schedule', 'scale_cr', 'score_particle', 'score_particles',
    'BASELINE', 'SPACING0', 'FilterRound', 'Particle', 'initial_grid', 'particle_filter_round',
    'resampling_weights',
    'CalibSample', 'RxCalibration', 'ScaledDefaultRx', 'SinFit', 'amplitude_for_theta', 'calibrate_rx',
    'collect_rx_samples', 'fit_sin2', 'remove_outliers', 'sweep_fastest_x', 'trailing_average',
    'validate_rx',
]
