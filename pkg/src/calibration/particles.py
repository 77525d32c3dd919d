"""
Particle filter over the (c, k) cross-resonance rescaling parameters.

Each generation holds 25 particles: 23 resampled from the previous generation,
the previous best and the (1, 1) baseline. A generation whose baseline strictly
beats every rescaled particle restarts from the initial grid.
"""

import logging
from dataclasses import dataclass, replace
from typing import List, Optional, Tuple

import numpy as np

from src.exceptions import DomainError

logger = logging.getLogger(__name__)

GENERATION_SIZE = 25
RESAMPLED = GENERATION_SIZE - 2
WEIGHT_POWER = 32
C_RANGE = (1.0, 1.8)
K_RANGE = (0.9, 1.1)
GRID_SHAPE = (5, 5)
SPACING0 = ((C_RANGE[1] - C_RANGE[0]) / (GRID_SHAPE[0] - 1), (K_RANGE[1] - K_RANGE[0]) / (GRID_SHAPE[1] - 1))
MIN_K = 1e-3


@dataclass(frozen=True)
class Particle:
    c: float
    k: float
    weight: float = 0.0
    score: Optional[float] = None
    valid: bool = True

    def __post_init__(self):
        if self.c < 1.0:
            raise DomainError(f"particle c must be >= 1, got {self.c}")
        if self.k <= 0.0:
            raise DomainError(f"particle k must be positive, got {self.k}")

    @property
    def is_baseline(self):
        return self.c == 1.0 and self.k == 1.0

    @property
    def position(self):
        return self.c, self.k

    def scored(self, score, valid=True):
        if not 0.0 <= score <= 1.0:
            raise DomainError(f"score must lie in [0, 1], got {score}")
        return replace(self, score=float(score), valid=valid)

    def to_dict(self):
        return {'c': self.c, 'k': self.k, 'weight': self.weight, 'score': self.score, 'valid': self.valid}

    @classmethod
    def from_dict(cls, data):
        return cls(float(data['c']), float(data['k']), float(data.get('weight', 0.0)),
                   data.get('score'), bool(data.get('valid', True)))


BASELINE = Particle(1.0, 1.0)


def initial_grid():
    """5x5 grid over c and k with the (1, 1) cell taken by the baseline particle"""
    particles = []
    for c in np.linspace(*C_RANGE, GRID_SHAPE[0]):
        for k in np.linspace(*K_RANGE, GRID_SHAPE[1]):
            c, k = round(float(c), 12), round(float(k), 12)
            if (c, k) != (1.0, 1.0):
                particles.append(Particle(c, k))
    particles.append(BASELINE)
    return particles


def resampling_weights(scores, power=WEIGHT_POWER):
    """score**power normalized to sum 1; uniform when every score is zero"""
    raised = np.power(np.clip(np.asarray(scores, dtype=float), 0.0, 1.0), power)
    total = raised.sum()
    if total <= 0.0 or not np.isfinite(total):
        return np.full(len(raised), 1.0 / len(raised))
    return raised / total


def best_particle(generation):
    """Highest score; ties go to the larger c (faster pulse)"""
    return max(generation, key=lambda p: (p.score, p.c, -abs(p.k - 1.0)))


@dataclass(frozen=True)
class FilterRound:
    next_generation: List[Particle]
    best: Particle
    reset: bool
    weights: Tuple[float, ...] = ()


def particle_filter_round(generation, rng, spacing0=SPACING0, size=GENERATION_SIZE):
    """Weight, resample and perturb a scored generation into the next one"""
    if not generation:
        raise DomainError("cannot filter an empty generation")
    if any(p.score is None for p in generation):
        raise DomainError("every particle needs a score before filtering")

    weights = resampling_weights([p.score for p in generation])
    weighted = [replace(p, weight=float(w)) for p, w in zip(generation, weights)]
    best = best_particle(weighted)
    baseline_scores = [p.score for p in weighted if p.is_baseline]
    challengers = [p for p in weighted if not p.is_baseline]

    if baseline_scores and challengers and max(baseline_scores) > best_particle(challengers).score:
        logger.info("🔄 baseline (1, 1) beat every rescaled particle; resetting to the initial grid")
        return FilterRound(initial_grid(), best, True, tuple(weights))

    chosen = rng.choice(len(weighted), size=size - 2, p=weights)
    std = np.asarray(spacing0, dtype=float) / 2.0
    noise = rng.normal(0.0, 1.0, size=(size - 2, 2)) * std

    resampled = []
    for index, (dc, dk) in zip(chosen, noise):
        parent = weighted[index]
        resampled.append(Particle(max(parent.c + dc, 1.0), max(parent.k + dk, MIN_K)))

    carry = Particle(best.c, best.k)
    next_generation = resampled + [carry, BASELINE]
    logger.debug("particle filter: best (c=%.3f, k=%.4f) score %.4f", best.c, best.k, best.score)
    return FilterRound(next_generation, best, False, tuple(weights))
