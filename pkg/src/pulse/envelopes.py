"""
Pulse envelopes and their area arithmetic.

Time is measured in integer ``dt`` units. Every physical pulse duration is a
multiple of 16 dt.
"""

import math
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np
from scipy.optimize import brentq
from scipy.special import erf

from src.exceptions import DomainError

DT_NS = 0.22
DURATION_STEP = 16
SQRT_2PI = math.sqrt(2.0 * math.pi)


def _check_duration(duration):
    if int(duration) != duration or duration <= 0 or duration % DURATION_STEP:
        raise DomainError(f"duration must be a positive multiple of {DURATION_STEP} dt, got {duration}")


@dataclass(frozen=True)
class DragPulse:
    """Single-qubit DRAG drive pulse: lifted Gaussian plus a derivative quadrature"""

    amplitude: float
    duration: int
    sigma: float
    beta: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.amplitude <= 1.0:
            raise DomainError(f"DRAG amplitude must lie in [0, 1], got {self.amplitude}")
        _check_duration(self.duration)
        if self.sigma <= 0:
            raise DomainError(f"sigma must be positive, got {self.sigma}")
        object.__setattr__(self, 'duration', int(self.duration))

    def with_amplitude(self, amplitude):
        return replace(self, amplitude=amplitude)


def nominal_flank_area(flanks, sigma):
    """sqrt(2 pi) sigma erf(n_sigma) for flanks of total length ``flanks``"""
    return SQRT_2PI * sigma * float(erf(flanks / sigma))


def solve_flank_sigma(flanks, sigma):
    """Width of the truncated Gaussian flanks whose combined area is the nominal one.

    Each flank covers half of ``flanks``. None when there are no flanks; a
    DomainError when the flanks are too short to carry the nominal area at an
    envelope bounded by the flat top.
    """
    if flanks <= 0.0:
        return None
    half = flanks / 2.0
    # both flanks together integrate to sqrt(pi) * half * erf(z) / z with z = half / (sqrt(2) s)
    ratio = nominal_flank_area(flanks, sigma) / (math.sqrt(math.pi) * half)
    if ratio >= 2.0 / math.sqrt(math.pi) * (1.0 - 1e-12):
        raise DomainError(f"flanks of {flanks:.3f} dt cannot carry the nominal area for sigma {sigma}")
    z = brentq(lambda x: float(erf(x)) / x - ratio, 1e-12, 2.0 / ratio + 1.0, xtol=1e-15, rtol=4 * np.finfo(float).eps)
    return half / (math.sqrt(2.0) * z)


@dataclass(frozen=True)
class GaussianSquarePulse:
    """Flat-top pulse with Gaussian flanks, used for cross-resonance drives.

    ``amplitude`` is a magnitude; ``phase`` is 0 or pi and carries the echo sign.
    Zero amplitude is accepted for the placeholders emitted on target channels.
    The flanks are truncated Gaussians sized so the envelope integrates to
    ``gs_area``; their width ``flank_sigma`` is derived from (w, d, sigma).
    """

    amplitude: float
    width: float
    duration: int
    sigma: float
    phase: float = 0.0
    flank_sigma: Optional[float] = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        if not 0.0 <= self.amplitude <= 1.0:
            raise DomainError(f"GaussianSquare amplitude must lie in [0, 1], got {self.amplitude}")
        _check_duration(self.duration)
        if self.sigma <= 0:
            raise DomainError(f"sigma must be positive, got {self.sigma}")
        if not -1e-9 <= self.width <= self.duration + 1e-9:
            raise DomainError(f"width {self.width} outside [0, {self.duration}]")
        if self.phase not in (0.0, math.pi):
            raise DomainError(f"phase must be 0 or pi, got {self.phase}")
        object.__setattr__(self, 'duration', int(self.duration))
        object.__setattr__(self, 'width', min(max(float(self.width), 0.0), float(self.duration)))
        object.__setattr__(self, 'flank_sigma', solve_flank_sigma(self.duration - self.width, self.sigma))

    @property
    def n_sigma(self):
        return (self.duration - self.width) / self.sigma

    @property
    def sign(self):
        return -1.0 if self.phase == math.pi else 1.0

    @property
    def signed_amplitude(self):
        return self.sign * self.amplitude

    def negated(self):
        return replace(self, phase=0.0 if self.phase == math.pi else math.pi)


def gs_area(pulse):
    """Area |A|[w + sqrt(2 pi) sigma erf(n_sigma)] of a GaussianSquare pulse"""
    return abs(pulse.amplitude) * (pulse.width + SQRT_2PI * pulse.sigma * float(erf(pulse.n_sigma)))


def drag_area(pulse):
    """Exact time integral of the real DRAG envelope; the derivative term integrates to zero"""
    d, s = pulse.duration, pulse.sigma
    edge = math.exp(-(d ** 2) / (8.0 * s ** 2))
    gauss = SQRT_2PI * s * float(erf(d / (2.0 * math.sqrt(2.0) * s)))
    return pulse.amplitude * (gauss - d * edge) / (1.0 - edge)


def envelope_area(pulse):
    """Exact integral of the envelope magnitude over [0, d]"""
    if isinstance(pulse, DragPulse):
        return drag_area(pulse)
    if isinstance(pulse, GaussianSquarePulse):
        return gs_area(pulse)
    raise DomainError(f"unknown pulse type {type(pulse).__name__}")


def envelope_at(pulse, t):
    """Complex envelope value at time ``t`` (dt)"""
    d = pulse.duration
    if not 0.0 <= t <= d:
        raise DomainError(f"t={t} outside [0, {d}]")

    if isinstance(pulse, DragPulse):
        s = pulse.sigma
        edge = math.exp(-(d ** 2) / (8.0 * s ** 2))
        gauss = math.exp(-((t - d / 2.0) ** 2) / (2.0 * s ** 2))
        g = pulse.amplitude * (gauss - edge) / (1.0 - edge)
        dg = -pulse.amplitude * (t - d / 2.0) / s ** 2 * gauss / (1.0 - edge)
        return complex(g, pulse.beta * dg)

    if isinstance(pulse, GaussianSquarePulse):
        half = (d - pulse.width) / 2.0
        rise_end = half
        fall_start = half + pulse.width
        s = pulse.flank_sigma
        if t < rise_end:
            shape = math.exp(-((t - rise_end) ** 2) / (2.0 * s ** 2))
        elif t > fall_start:
            shape = math.exp(-((t - fall_start) ** 2) / (2.0 * s ** 2))
        else:
            shape = 1.0
        return complex(pulse.signed_amplitude * shape, 0.0)

    raise DomainError(f"unknown pulse type {type(pulse).__name__}")


def sample_envelope(pulse, points=4001):
    """Envelope sampled on a uniform grid, for plotting and numeric checks"""
    times = np.linspace(0.0, pulse.duration, points)
    return times, np.array([envelope_at(pulse, t) for t in times])


def quantize_duration(raw):
    """Floor a raw duration to the 16 dt grid, never below 16"""
    if raw <= 0:
        raise DomainError(f"duration must be positive, got {raw}")
    steps = math.floor(raw / DURATION_STEP + 1e-9)
    return max(DURATION_STEP, DURATION_STEP * steps)


def ceil_duration(raw):
    """Smallest multiple of 16 dt holding ``raw``, never below 16"""
    steps = math.ceil(raw / DURATION_STEP - 1e-9)
    return max(DURATION_STEP, DURATION_STEP * steps)


def gs_with_area(template, target, phase=None):
    """GaussianSquare pulse with the template's amplitude and flanks carrying ``target`` area.

    The duration is the smallest 16 dt multiple holding the flat top plus both
    flanks and the width is solved exactly. Targets below the flanks-only area
    keep zero width and scale the amplitude down instead.
    """
    phase = template.phase if phase is None else phase
    if target < 0:
        raise DomainError(f"target area must be non-negative, got {target}")
    if template.amplitude <= 0:
        raise DomainError("template pulse has zero amplitude")

    amp, sigma = template.amplitude, template.sigma
    flanks = template.duration - template.width
    if flanks <= 0:
        raise DomainError("template pulse has no flanks")
    flat = target / amp - nominal_flank_area(flanks, sigma)
    duration = ceil_duration(flanks + max(flat, 0.0))
    if duration < flanks + max(flat, 0.0):
        duration += DURATION_STEP

    def area_at(width):
        return amp * (width + nominal_flank_area(duration - width, sigma)) - target

    if area_at(0.0) >= 0:
        scaled = target / nominal_flank_area(duration, sigma)
        return GaussianSquarePulse(min(scaled, 1.0), 0.0, duration, sigma, phase)

    # flanks never shorter than the template's, where the area grows with the width
    width = brentq(area_at, 0.0, float(duration - flanks), xtol=1e-13, rtol=4 * np.finfo(float).eps)
    return GaussianSquarePulse(amp, width, duration, sigma, phase)


def pulse_to_dict(pulse):
    """Tagged parameter dict: {'type': 'drag' | 'gs', 'params': {...}}"""
    if isinstance(pulse, DragPulse):
        return {'type': 'drag', 'params': {'amplitude': pulse.amplitude, 'duration': pulse.duration,
                                           'sigma': pulse.sigma, 'beta': pulse.beta}}
    if isinstance(pulse, GaussianSquarePulse):
        return {'type': 'gs', 'params': {'amplitude': pulse.amplitude, 'width': pulse.width,
                                         'duration': pulse.duration, 'sigma': pulse.sigma,
                                         'phase': pulse.phase}}
    raise DomainError(f"unknown pulse type {type(pulse).__name__}")


def pulse_from_dict(data):
    kind, params = data['type'], data['params']
    if kind == 'drag':
        return DragPulse(**params)
    if kind == 'gs':
        return GaussianSquarePulse(**params)
    raise DomainError(f"unknown pulse type {kind!r}")
