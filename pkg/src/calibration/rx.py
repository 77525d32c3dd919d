"""
Single-qubit Rx calibration.

Find the fastest duration that still reaches a full pi rotation, collect
P(1) against amplitude at that duration, clean and average the samples, fit
A1 sin^2(omega A + phi) + delta and invert the fit for any angle.
"""

import logging
import math
from dataclasses import asdict, dataclass, field

import numpy as np
import pandas as pd
from lmfit import Model

from src.exceptions import (
    BackendUnavailableError,
    CalibrationInfeasibleError,
    DomainError,
    EmptyDataError,
    FitFailedError,
    InversionDomainError,
    RangeError,
    ValidationInconclusiveError,
)
from src.pulse import Channel, DragPulse, ScheduleBuilder
from src.simulator.backend import run_schedules

logger = logging.getLogger(__name__)

SWEEP_DURATIONS = tuple(range(64, 161, 16))
TWO_DAYS = 2 * 24 * 3600.0
VALIDATION_ANGLES = tuple(k * math.pi / 8 for k in range(1, 9))


@dataclass(frozen=True)
class CalibSample:
    timestamp: float
    amplitude: float
    p1: float
    shots: int

    def __post_init__(self):
        if not 0.0 <= self.p1 <= 1.0:
            raise DomainError(f"p1 must lie in [0, 1], got {self.p1}")
        if self.shots <= 0:
            raise DomainError(f"shots must be positive, got {self.shots}")


@dataclass(frozen=True)
class SinFit:
    """Parameters of A1 sin^2(omega A + phi) + delta"""

    a1: float
    omega: float
    phi: float
    delta: float
    residual: float = 0.0
    degenerate: bool = False

    def __post_init__(self):
        if self.a1 <= 0 or self.omega <= 0:
            raise DomainError(f"a1 and omega must be positive, got a1={self.a1}, omega={self.omega}")

    @classmethod
    def ideal(cls, a_pi):
        """Exact fit of a device whose pi rotation sits at amplitude ``a_pi``"""
        return cls(1.0, math.pi / (2.0 * a_pi), 0.0, 0.0)

    def predict(self, amplitude):
        return self.a1 * np.sin(self.omega * np.asarray(amplitude) + self.phi) ** 2 + self.delta

    def to_dict(self):
        return asdict(self)

    @classmethod
    def from_dict(cls, data):
        return cls(**{k: data[k] for k in ('a1', 'omega', 'phi', 'delta') if k in data},
                   residual=data.get('residual', 0.0), degenerate=data.get('degenerate', False))


def amplitude_for_theta(fit, theta, tolerance=0.05):
    """Drive amplitude producing an Rx(theta) according to ``fit``"""
    if not 0.0 <= theta <= math.pi + 1e-12:
        raise RangeError(f"theta must lie in [0, pi], got {theta}")
    if theta == 0.0:
        return 0.0
    argument = (math.sin(theta / 2.0) ** 2 - fit.delta) / fit.a1
    if argument < -tolerance or argument > 1.0 + tolerance:
        raise InversionDomainError(f"inversion argument {argument:.4f} outside [0, 1]; the fit looks wrong")
    argument = min(max(argument, 0.0), 1.0)
    amplitude = (math.asin(math.sqrt(argument)) - fit.phi) / fit.omega
    return min(max(amplitude, 0.0), 1.0)


@dataclass(frozen=True)
class RxCalibration:
    """Calibrated fastest Rx pulse family for one qubit"""

    qubit: int
    t0: int
    a0: float
    fit: SinFit
    sigma: float
    beta: float = 0.0
    timestamp: float = 0.0

    def pulse_for(self, theta):
        return DragPulse(amplitude_for_theta(self.fit, theta), self.t0, self.sigma, self.beta)

    def to_payload(self):
        return {'a0': self.a0, 't0': self.t0, 'sigma': self.sigma, 'beta': self.beta,
                'fit': self.fit.to_dict(), 'timestamp': self.timestamp}

    @classmethod
    def from_payload(cls, qubit, payload):
        return cls(int(qubit), int(payload['t0']), float(payload['a0']), SinFit.from_dict(payload['fit']),
                   float(payload['sigma']), float(payload.get('beta', 0.0)), float(payload.get('timestamp', 0.0)))


@dataclass(frozen=True)
class ScaledDefaultRx:
    """Vendor X pulse with amplitude scaled linearly in theta (fixed 160 dt)"""

    x_pulse: DragPulse

    def pulse_for(self, theta):
        return self.x_pulse.with_amplitude(min(self.x_pulse.amplitude * theta / math.pi, 1.0))


def drag_for_duration(duration, amplitude, beta=0.0):
    """Sweep pulse shape: sigma is a quarter of the duration"""
    return DragPulse(amplitude, duration, duration / 4.0, beta)


def _single_pulse_schedule(qubit, pulse):
    return ScheduleBuilder().play(Channel.drive(qubit), pulse).build(measure=(qubit,))


def _p1(counts, shots):
    return counts.get('1', 0) / shots


def sweep_fastest_x(backend, qubit, shots=1000, durations=SWEEP_DURATIONS, amplitude_step=0.02,
                    threshold=0.995, beta=None):
    """Smallest duration whose best amplitude reaches the pi-rotation threshold.

    The threshold is lowered by three binomial standard deviations of a
    ``shots``-sample estimate. Returns (A0, t0).
    """
    if beta is None:
        beta = backend.defaults().x_pulses[qubit].beta
    amplitudes = np.round(np.arange(0.0, 1.0 + 1e-9, amplitude_step), 10)
    grid = [(t, a) for t in durations for a in amplitudes]
    schedules = [_single_pulse_schedule(qubit, drag_for_duration(t, float(a), beta)) for t, a in grid]
    counts = run_schedules(backend, schedules, shots)

    frame = pd.DataFrame(grid, columns=['duration', 'amplitude'])
    frame['p1'] = [_p1(c, shots) for c in counts]
    accept = threshold - 3.0 * math.sqrt(threshold * (1.0 - threshold) / shots)

    for duration, rows in frame.groupby('duration', sort=True):
        best = rows.loc[rows['p1'].idxmax()]
        if best['p1'] >= accept:
            logger.info("✅ qubit %d: fastest X at %d dt, A0=%.3f (P1=%.4f)", qubit, duration, best['amplitude'], best['p1'])
            return float(best['amplitude']), int(duration)

    raise CalibrationInfeasibleError(f"qubit {qubit}: no duration up to {max(durations)} dt reached P1 >= {accept:.4f}")


def samples_frame(samples):
    """DataFrame view of CalibSample objects (or pass a DataFrame through)"""
    if isinstance(samples, pd.DataFrame):
        return samples.copy()
    return pd.DataFrame([asdict(s) for s in samples], columns=['timestamp', 'amplitude', 'p1', 'shots'])


def remove_outliers(samples, n_std=1.5, min_bin=3):
    """Drop samples further than ``n_std`` bin standard deviations from their bin mean.

    Returns (kept samples, amplitudes of bins too small to clean).
    """
    frame = samples_frame(samples)
    if frame.empty:
        return frame, []
    grouped = frame.groupby('amplitude')['p1']
    size = grouped.transform('size')
    mean = grouped.transform('mean')
    std = grouped.transform(lambda s: s.std(ddof=0))

    small = size < min_bin
    deviation = (frame['p1'] - mean).abs()
    outlier = ~small & (std > 0) & (deviation > n_std * std)
    flagged = sorted(frame.loc[small, 'amplitude'].unique().tolist())
    if flagged:
        logger.warning("⚠️ %d amplitude bin(s) below %d samples passed through uncleaned", len(flagged), min_bin)
    return frame.loc[~outlier].reset_index(drop=True), flagged


def trailing_average(samples, now=None, window=TWO_DAYS):
    """Shot-weighted mean P(1) per amplitude over samples in [now - window, now]"""
    frame = samples_frame(samples)
    if frame.empty:
        raise EmptyDataError("no calibration samples")
    now = frame['timestamp'].max() if now is None else now
    inside = frame[(frame['timestamp'] >= now - window) & (frame['timestamp'] <= now)]
    if inside.empty:
        raise EmptyDataError(f"no samples inside the {window:.0f} s window ending at {now:.0f}")
    weighted = inside.assign(hits=inside['p1'] * inside['shots'])
    totals = weighted.groupby('amplitude', as_index=False)[['hits', 'shots']].sum()
    totals['p1'] = totals['hits'] / totals['shots']
    return totals[['amplitude', 'p1', 'shots']].sort_values('amplitude').reset_index(drop=True)


def _sin2(amplitude, a1, omega, phi, delta):
    return a1 * np.sin(omega * amplitude + phi) ** 2 + delta


def fit_sin2(points, max_nfev=4000):
    """Bounded Levenberg-Marquardt fit of A1 sin^2(omega A + phi) + delta"""
    if isinstance(points, pd.DataFrame):
        amplitude = points['amplitude'].to_numpy(dtype=float)
        p1 = points['p1'].to_numpy(dtype=float)
    else:
        amplitude, p1 = (np.asarray(col, dtype=float) for col in zip(*points))
    if len(amplitude) < 8:
        raise DomainError(f"need at least 8 points to fit, got {len(amplitude)}")

    a_peak = amplitude[np.argmax(p1)]
    if a_peak <= 0:
        a_peak = amplitude.max()

    model = Model(_sin2, independent_vars=['amplitude'])
    params = model.make_params()
    params['a1'].set(value=float(np.clip(p1.max() - p1.min(), 0.1, 1.2)), min=0.1, max=1.2)
    params['delta'].set(value=float(np.clip(p1.min(), -0.2, 0.2)), min=-0.2, max=0.2)
    params['phi'].set(value=0.0, min=-math.pi / 2, max=math.pi / 2)
    params['omega'].set(value=math.pi / (2.0 * a_peak), min=1e-6)

    result = model.fit(p1, params, amplitude=amplitude, method='leastsq', max_nfev=max_nfev,
                       fit_kws={'xtol': 1e-14, 'ftol': 1e-14})
    values = result.params.valuesdict()
    swing = np.ptp(_sin2(amplitude, **values))
    degenerate = values['a1'] <= 0.1 + 1e-3 or swing < 0.05
    fit = SinFit(values['a1'], values['omega'], values['phi'], values['delta'],
                 residual=float(np.sum(result.residual ** 2)), degenerate=bool(degenerate))

    if not result.success:
        raise FitFailedError(f"sin^2 fit did not converge: {result.message}", best=fit)
    if degenerate:
        raise FitFailedError("sin^2 fit is degenerate (no usable oscillation in the data)", best=fit)
    return fit


@dataclass
class ValidationOutcome:
    accept: bool
    candidate_error: float
    baseline_error: float
    standard_error: float = 0.0
    angles: tuple = field(default_factory=tuple)


def validate_rx(candidate, baseline, backend, qubit, shots=2000, angles=VALIDATION_ANGLES):
    """Accept the candidate only if its mean 1-norm error is strictly below the baseline's.

    Both arguments provide ``pulse_for(theta)``. Identical pulse sets tie and
    reject without running anything.
    """
    candidate_pulses = [candidate.pulse_for(theta) for theta in angles]
    baseline_pulses = [baseline.pulse_for(theta) for theta in angles]
    if candidate_pulses == baseline_pulses:
        return ValidationOutcome(False, float('nan'), float('nan'), 0.0, tuple(angles))

    schedules = [_single_pulse_schedule(qubit, p) for p in candidate_pulses + baseline_pulses]
    try:
        counts = run_schedules(backend, schedules, shots)
    except (BackendUnavailableError, OSError) as exc:
        raise ValidationInconclusiveError(f"qubit {qubit}: validation run failed: {exc}") from exc

    ideal = np.array([math.sin(theta / 2.0) ** 2 for theta in angles])
    measured = np.array([_p1(c, shots) for c in counts])
    cand, base = measured[:len(angles)], measured[len(angles):]
    cand_err = 2.0 * np.abs(cand - ideal)
    base_err = 2.0 * np.abs(base - ideal)

    # shot-noise standard error, reported only
    floor = 1.0 / shots
    variance = 4.0 * (np.maximum(cand * (1 - cand), floor) + np.maximum(base * (1 - base), floor)) / shots
    standard_error = float(math.sqrt(variance.sum()) / len(angles))
    accept = bool(cand_err.mean() < base_err.mean())
    logger.info("%s qubit %d validation: candidate %.4f vs baseline %.4f (se %.4f)",
                '✅' if accept else '❌', qubit, cand_err.mean(), base_err.mean(), standard_error)
    return ValidationOutcome(accept, float(cand_err.mean()), float(base_err.mean()), standard_error, tuple(angles))


def collect_rx_samples(backend, qubit, t0, a0, timestamp=None, points=16, repeats=3, shots=1000, beta=0.0):
    """Run the amplitude grid [0, A0] at ``t0`` and return CalibSample rows"""
    amplitudes = np.linspace(0.0, min(a0 * 1.05, 1.0), points)
    schedules = [_single_pulse_schedule(qubit, drag_for_duration(t0, float(a), beta))
                 for a in amplitudes for _ in range(repeats)]
    counts = run_schedules(backend, schedules, shots)
    stamp = backend.clock() if timestamp is None else timestamp
    order = [float(a) for a in amplitudes for _ in range(repeats)]
    return [CalibSample(stamp, a, _p1(c, shots), shots) for a, c in zip(order, counts)]


def calibrate_rx(samples, qubit, t0, a0, now=None, window=TWO_DAYS, beta=0.0):
    """Clean, average and fit samples into an ``RxCalibration``"""
    cleaned, _ = remove_outliers(samples)
    averaged = trailing_average(cleaned, now=now, window=window)
    fit = fit_sin2(averaged)
    stamp = float(now if now is not None else samples_frame(samples)['timestamp'].max())
    return RxCalibration(qubit, t0, a0, fit, t0 / 4.0, beta, stamp)


__all__ = [
    'CalibSample', 'SinFit', 'RxCalibration', 'ScaledDefaultRx', 'ValidationOutcome',
    'amplitude_for_theta', 'sweep_fastest_x', 'remove_outliers', 'trailing_average',
    'fit_sin2', 'validate_rx', 'collect_rx_samples', 'calibrate_rx', 'samples_frame',
    'drag_for_duration',
]
