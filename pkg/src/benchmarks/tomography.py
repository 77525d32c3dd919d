"""
Gate tomography sweeps.

For every angle the gate is applied to each preparation state, the result is
rotated into the X, Y or Z basis and read out. The per-angle error is the 1-norm
distance to the distribution the exact unitary predicts.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Tuple

import numpy as np
import pandas as pd

from src.benchmarks.metrics import born_distribution, counts_to_distribution, distance_1norm
from src.circuit import Circuit, Gate, circuit_unitary
from src.exceptions import DomainError
from src.simulator.backend import run_schedules
from src.transpiler.pass_manager import transpile

logger = logging.getLogger(__name__)

BASES = ('X', 'Y', 'Z')
FAMILIES = {'rx': 1, 'rzx': 2}
DEFAULT_ANGLES = tuple(np.linspace(0.0, math.pi, 20))


@dataclass
class TomographyResult:
    """Per-angle measured and ideal distributions in one measurement basis"""

    family: str
    basis: str
    angles: List[float]
    measured: List[Dict[str, float]] = field(default_factory=list)
    ideal: List[Dict[str, float]] = field(default_factory=list)
    errors: List[float] = field(default_factory=list)

    @property
    def mean_error(self):
        return float(np.mean(self.errors)) if self.errors else 0.0

    def to_frame(self):
        return pd.DataFrame({
            'family': self.family,
            'basis': self.basis,
            'theta': self.angles,
            'error': self.errors,
        })


def _basis_change(basis, qubits):
    gates = []
    for q in qubits:
        if basis == 'X':
            gates.append(Gate('h', (q,)))
        elif basis == 'Y':
            gates.extend([Gate('sdg', (q,)), Gate('h', (q,))])
    return gates


def _preparation(state):
    return [Gate('x', (q,)) for q, bit in enumerate(state) if bit == '1']


def local_circuit(family, theta, basis, state):
    """Preparation, gate and basis change on local qubits 0..k-1, without measurements"""
    width = FAMILIES[family]
    qubits = tuple(range(width))
    gate = Gate(family, qubits, (theta,))
    return Circuit(width, (*_preparation(state), gate, *_basis_change(basis, qubits)))


def _default_states(width):
    return tuple(format(i, f'0{width}b') for i in range(2 ** width)) if width > 1 else ('0',)


def tomography_sweep(family, backend, library, mode='squeeze', angles=DEFAULT_ANGLES, qubits=None,
                     shots=None, bases=BASES, states=None, noiseless=False):
    """{basis: TomographyResult} for Rx on one qubit or Rzx on one directed pair.

    ``shots=None`` reads exact outcome probabilities from the backend instead of
    sampling. Errors for several preparation states are averaged per angle.
    """
    if family not in FAMILIES:
        raise DomainError(f"tomography supports {sorted(FAMILIES)}, got {family!r}")
    width = FAMILIES[family]
    physical = tuple(qubits) if qubits is not None else tuple(range(width))
    if len(physical) != width:
        raise DomainError(f"{family} tomography needs {width} qubit(s), got {physical}")
    states = tuple(states) if states is not None else _default_states(width)
    n_device = max(physical) + 1

    results = {}
    for basis in bases:
        if basis not in BASES:
            raise DomainError(f"unknown measurement basis {basis!r}")
        result = TomographyResult(family, basis, [float(a) for a in angles])
        jobs: List[Tuple[int, Dict[str, float], object]] = []
        for index, theta in enumerate(result.angles):
            for state in states:
                local = local_circuit(family, theta, basis, state)
                ideal = born_distribution(circuit_unitary(local)[:, 0], tuple(range(width)))
                mapped = Circuit(n_device, tuple(g.remap(physical) for g in local.gates))
                mapped = mapped.then(*(Gate('measure', (q,)) for q in physical))
                schedule = transpile(mapped, library, mode).schedule
                jobs.append((index, ideal, schedule))

        measured = _measure([job[2] for job in jobs], backend, shots, noiseless)
        per_angle = [[] for _ in result.angles]
        for (index, ideal, _), dist in zip(jobs, measured):
            per_angle[index].append((dist, ideal, distance_1norm(dist, ideal)))
        for entries in per_angle:
            result.measured.append(entries[0][0])
            result.ideal.append(entries[0][1])
            result.errors.append(float(np.mean([e[2] for e in entries])))

        logger.info("📊 %s tomography, %s basis, %s mode: mean 1-norm error %.4g",
                    family, basis, mode, result.mean_error)
        results[basis] = result
    return results


def _measure(schedules, backend, shots, noiseless):
    if shots is None:
        return [backend.probabilities(schedule, noiseless=noiseless) for schedule in schedules]
    counts = run_schedules(backend, schedules, shots, noiseless=noiseless)
    return [counts_to_distribution(c, shots) for c in counts]


def sweep_frame(results):
    """Long-format table of a ``tomography_sweep`` result"""
    return pd.concat([r.to_frame() for r in results.values()], ignore_index=True)


def mean_error(results):
    return float(np.mean([r.mean_error for r in results.values()]))
