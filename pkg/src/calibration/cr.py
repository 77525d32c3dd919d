"""
Cross-resonance calibration.

A base CR(pi/4) GaussianSquare pulse is shortened by raising its amplitude by
``c`` and shrinking the flat top to keep the nominal area, then fine-tuned by
``k``. Particles (c, k) are scored by how well the echoed CNOT built from them
maps the four computational basis states.
"""

import logging
import math
from dataclasses import dataclass, field, replace
from typing import List, Tuple

import numpy as np
import pandas as pd
from scipy.special import erf

from src.calibration.particles import BASELINE, Particle, initial_grid, particle_filter_round
from src.exceptions import AmplitudeOverflowError, DomainError, RangeError, WidthUnderflowError
from src.pulse import (
    Channel,
    DragPulse,
    GaussianSquarePulse,
    ScheduleBuilder,
    envelope_area,
    gs_area,
    gs_with_area,
    pulse_from_dict,
    pulse_to_dict,
    quantize_duration,
)
from src.pulse.envelopes import SQRT_2PI
from src.simulator.backend import run_schedules

logger = logging.getLogger(__name__)

QUARTER_PI = math.pi / 4
BASIS_STATES = ((0, 0), (0, 1), (1, 0), (1, 1))


def scale_cr(base, c, k):
    """GS(k A', w', d', sigma) with A' = c A and the flat top shrunk to keep the nominal area"""
    if c < 1.0:
        raise DomainError(f"c must be >= 1, got {c}")
    if k <= 0.0:
        raise DomainError(f"k must be positive, got {k}")

    area = gs_area(base)
    n_sigma = base.n_sigma
    amplitude = c * base.amplitude
    applied = k * amplitude
    if applied > 1.0:
        raise AmplitudeOverflowError(f"scaled amplitude {applied:.4f} exceeds 1 (c={c:.3f}, k={k:.3f})")

    width = (area - base.sigma * amplitude * SQRT_2PI) / amplitude
    if width < 0.0:
        raise WidthUnderflowError(f"c={c:.3f} leaves a negative flat-top width {width:.2f}")
    duration = quantize_duration(width + base.sigma * n_sigma)
    return GaussianSquarePulse(applied, min(width, float(duration)), duration, base.sigma, base.phase)


def area_tolerance(base, scaled):
    """Largest nominal-area loss one 16 dt duration floor can cause for ``scaled``"""
    shortest = max(base.n_sigma - 16.0 / base.sigma, 0.0)
    return scaled.amplitude * SQRT_2PI * scaled.sigma * (1.0 - float(erf(shortest))) + 1e-9


def cr_placeholder(pulse):
    """Zero-amplitude pulse for the target drive channel while a CR plays"""
    return GaussianSquarePulse(0.0, pulse.width, pulse.duration, pulse.sigma)


def cr_pulse_for_angle(pulse, phi):
    """CR pulse producing Rzx(phi) given the pulse that produces Rzx(pi/4); None for phi = 0"""
    magnitude = abs(phi)
    if magnitude < 1e-12:
        return None
    if abs(magnitude - QUARTER_PI) < 1e-12:
        shaped = pulse
    else:
        shaped = gs_with_area(pulse, magnitude / QUARTER_PI * envelope_area(pulse), phase=0.0)
    return replace(shaped, phase=math.pi if phi < 0 else 0.0)


def append_echo(builder, pair, quarter_pulse, x_control, phi):
    """CR(phi), X(control), CR(-phi), X(control): Rzx(2 phi) up to global phase"""
    control, target = pair
    first = cr_pulse_for_angle(quarter_pulse, phi)
    second = cr_pulse_for_angle(quarter_pulse, -phi)
    for cr in (first, second):
        if cr is not None:
            builder.play(Channel.control(control, target), cr,
                         companions=[(Channel.drive(target), cr_placeholder(cr))])
        builder.play(Channel.drive(control), x_control)
    return builder


def append_cnot(builder, pair, quarter_pulse, x_control, sx_target):
    """Rz(pi/2) on control, Rx(pi/2) on target, then Rzx(-pi/2).

    The CNOT starts once both qubits are free and runs as one block.
    """
    control, target = pair
    builder.barrier(control, target)
    builder.frame_change(control, math.pi / 2)
    builder.play(Channel.drive(target), sx_target)
    return append_echo(builder, pair, quarter_pulse, x_control, -QUARTER_PI)


def build_cnot_schedule(pair, quarter_pulse, x_control, x_target, state=(0, 0)):
    """Prepare a basis state, apply the echoed CNOT and measure (control, target)"""
    control, target = pair
    builder = ScheduleBuilder()
    if state[0]:
        builder.play(Channel.drive(control), x_control)
    if state[1]:
        builder.play(Channel.drive(target), x_target)
    append_cnot(builder, pair, quarter_pulse, x_control, x_target.with_amplitude(x_target.amplitude / 2))
    return builder.build(measure=(control, target), state=''.join(map(str, state)))


def cnot_expected(state):
    return f"{state[0]}{state[1] ^ state[0]}"


def state_accuracy(counts, expected, shots):
    """1 - total variation distance to the ideal one-hot outcome"""
    keys = set(counts) | {expected}
    l1 = sum(abs(counts.get(key, 0) / shots - (1.0 if key == expected else 0.0)) for key in keys)
    return 1.0 - 0.5 * l1


@dataclass
class CrCalibration:
    """Calibrated CR state of one directed pair"""

    pair: Tuple[int, int]
    base: GaussianSquarePulse
    x_control: DragPulse
    x_target: DragPulse
    best: Particle = BASELINE
    generation: List[Particle] = field(default_factory=initial_grid)
    round_index: int = 0
    rounds_since_reset: int = 0
    resets: int = 0
    timestamp: float = 0.0

    @classmethod
    def from_defaults(cls, defaults, pair):
        control, target = pair
        return cls(tuple(pair), defaults.cr_pulses[tuple(pair)],
                   defaults.x_pulses[control], defaults.x_pulses[target])

    def scaled_pulse(self):
        """Best-particle CR(pi/4) pulse; the base pulse for the baseline particle"""
        if self.best.is_baseline:
            return self.base
        return scale_cr(self.base, self.best.c, self.best.k)

    def pulse_for(self, phi):
        return cr_pulse_for_angle(self.scaled_pulse(), phi)

    def to_payload(self):
        return {
            'pair': list(self.pair),
            'base': pulse_to_dict(self.base),
            'x_control': pulse_to_dict(self.x_control),
            'x_target': pulse_to_dict(self.x_target),
            'c': self.best.c,
            'k': self.best.k,
            'score': self.best.score,
            'round': self.round_index,
            'rounds_since_reset': self.rounds_since_reset,
            'resets': self.resets,
            'timestamp': self.timestamp,
        }

    @classmethod
    def from_payload(cls, payload):
        best = Particle(float(payload['c']), float(payload['k']), score=payload.get('score'))
        return cls(
            tuple(payload['pair']), pulse_from_dict(payload['base']),
            pulse_from_dict(payload['x_control']), pulse_from_dict(payload['x_target']),
            best=best, round_index=int(payload.get('round', 0)),
            rounds_since_reset=int(payload.get('rounds_since_reset', 0)),
            resets=int(payload.get('resets', 0)), timestamp=float(payload.get('timestamp', 0.0)),
        )


def _particle_schedules(cal, particle):
    pulse = cal.base if particle.is_baseline else scale_cr(cal.base, particle.c, particle.k)
    return [build_cnot_schedule(cal.pair, pulse, cal.x_control, cal.x_target, state) for state in BASIS_STATES]


def score_particles(particles, cal, backend, shots=1000):
    """Score a whole generation; one job of 100 schedules for 25 particles"""
    schedules, owners, scored = [], [], list(particles)
    for index, particle in enumerate(particles):
        try:
            batch = _particle_schedules(cal, particle)
        except (AmplitudeOverflowError, WidthUnderflowError) as exc:
            logger.debug("particle (c=%.3f, k=%.3f) invalid: %s", particle.c, particle.k, exc)
            scored[index] = particle.scored(0.0, valid=False)
            continue
        schedules.extend(batch)
        owners.append(index)

    counts = run_schedules(backend, schedules, shots) if schedules else []
    for slot, index in enumerate(owners):
        chunk = counts[slot * len(BASIS_STATES):(slot + 1) * len(BASIS_STATES)]
        accuracy = [state_accuracy(c, cnot_expected(s), shots) for c, s in zip(chunk, BASIS_STATES)]
        scored[index] = particles[index].scored(min(max(float(np.mean(accuracy)), 0.0), 1.0))
    return scored


def score_particle(particle, cal, backend, shots=1000):
    return score_particles([particle], cal, backend, shots)[0].score


def calibrate_cr_round(cal, backend, rng, shots=1000, timestamp=None):
    """Score the current generation, pick the best and advance the filter"""
    scored = score_particles(cal.generation, cal, backend, shots)
    outcome = particle_filter_round(scored, rng)
    resets = cal.resets + int(outcome.reset)
    logger.info("%s pair %s round %d: best c=%.3f k=%.4f score=%.4f%s", '🔄' if outcome.reset else '✅',
                cal.pair, cal.round_index + 1, outcome.best.c, outcome.best.k, outcome.best.score,
                ' (reset)' if outcome.reset else '')
    return replace(
        cal,
        best=Particle(outcome.best.c, outcome.best.k, score=outcome.best.score),
        generation=outcome.next_generation,
        round_index=cal.round_index + 1,
        rounds_since_reset=0 if outcome.reset else cal.rounds_since_reset + 1,
        resets=resets,
        timestamp=backend.clock() if timestamp is None else timestamp,
    ), outcome


def rzx_schedule(theta, cal, pair=None, measure=()):
    """Echoed Rzx(theta) on the calibrated pair, 0 <= theta <= pi"""
    if not 0.0 <= theta <= math.pi + 1e-12:
        raise RangeError(f"rzx_schedule expects 0 <= theta <= pi, got {theta}")
    pair = tuple(pair or cal.pair)
    builder = ScheduleBuilder()
    append_echo(builder, pair, cal.scaled_pulse(), cal.x_control, theta / 2.0)
    return builder.build(measure=measure, theta=theta)


def grid_scan(cal, backend, c_values, k_values, shots=1000):
    """Offline score landscape over a (c, k) grid as a DataFrame"""
    particles = []
    for c in c_values:
        for k in k_values:
            particles.append(Particle(max(float(c), 1.0), float(k)))
    scored = score_particles(particles, cal, backend, shots)
    frame = pd.DataFrame([{'c': p.c, 'k': p.k, 'score': p.score, 'valid': p.valid} for p in scored])
    logger.info("📊 grid scan over %d particles on pair %s", len(particles), cal.pair)
    return frame
