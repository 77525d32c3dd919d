"""
Distribution distances used by every benchmark.

Distributions are plain ``{bitstring: probability}`` dicts; shot counts are
normalized first with ``counts_to_distribution``.
"""

import numpy as np

from src.exceptions import DomainError


def counts_to_distribution(counts, shots=None):
    total = shots if shots is not None else sum(counts.values())
    if total <= 0:
        raise DomainError("cannot normalize an empty set of counts")
    return {key: value / total for key, value in counts.items()}


def _width(distribution):
    widths = {len(key) for key in distribution}
    if len(widths) > 1:
        raise DomainError(f"mixed bitstring lengths {sorted(widths)} in one distribution")
    return widths.pop() if widths else None


def distance_1norm(measured, ideal, total_variation=False):
    """Sum of |p_i - q_i| over the union of outcomes; halved when ``total_variation``"""
    width_m, width_i = _width(measured), _width(ideal)
    if width_m is not None and width_i is not None and width_m != width_i:
        raise DomainError(f"outcome spaces differ: {width_m}-bit vs {width_i}-bit strings")
    keys = set(measured) | set(ideal)
    distance = sum(abs(measured.get(key, 0.0) - ideal.get(key, 0.0)) for key in keys)
    return 0.5 * distance if total_variation else distance


def born_distribution(state, measure, threshold=1e-15):
    """Outcome probabilities of a pure state over ``measure`` (qubit 0 most significant)"""
    amplitudes = np.asarray(state, dtype=complex).reshape(-1)
    n = int(round(np.log2(amplitudes.size)))
    probs = (np.abs(amplitudes) ** 2).reshape((2,) * n)
    others = tuple(q for q in range(n) if q not in measure)
    marginal = probs.sum(axis=others) if others else probs
    kept = sorted(measure)
    marginal = np.transpose(marginal, [kept.index(q) for q in measure]).reshape(-1)
    width = len(measure)
    return {format(i, f'0{width}b'): float(p) for i, p in enumerate(marginal) if p > threshold}
