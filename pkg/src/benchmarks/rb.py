"""
Randomized benchmarking with Haar-random SU(2) and SU(4) sequences.

A sequence of depth k is k random gates followed by their inverses in reverse
order, so the ideal circuit returns to |0...0>. The all-zeros survival
probability decays as alpha * p**k + beta; the error per gate is
1 - p - (1 - p) / 2**n.
"""

import logging
import math
import warnings
from dataclasses import asdict, dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from scipy.optimize import OptimizeWarning, curve_fit
from scipy.stats import unitary_group

from src.benchmarks.metrics import counts_to_distribution
from src.circuit import Circuit, Gate, wrap_angle
from src.exceptions import DomainError, FitFailedError
from src.simulator.backend import run_schedules
from src.transpiler.pass_manager import transpile

logger = logging.getLogger(__name__)

FAMILIES = ('su2', 'su4')
MIN_DEPTHS = 4
AMPLITUDE_EPS = 1e-12


def u3_params(unitary):
    """(theta, phi, lam) with U3(theta, phi, lam) equal to ``unitary`` up to global phase"""
    u = np.asarray(unitary, dtype=complex)
    theta = 2.0 * math.atan2(abs(u[1, 0]), abs(u[0, 0]))
    if abs(u[1, 0]) < AMPLITUDE_EPS:
        return theta, 0.0, wrap_angle(float(np.angle(u[1, 1]) - np.angle(u[0, 0])))
    if abs(u[0, 0]) < AMPLITUDE_EPS:
        alpha = float(np.angle(u[1, 0]))
        return theta, 0.0, wrap_angle(float(np.angle(-u[0, 1])) - alpha)
    alpha = float(np.angle(u[0, 0]))
    phi = wrap_angle(float(np.angle(u[1, 0])) - alpha)
    lam = wrap_angle(float(np.angle(-u[0, 1])) - alpha)
    return theta, phi, lam


def random_u3(rng, qubit):
    params = u3_params(unitary_group.rvs(2, random_state=rng))
    return Gate('u3', (qubit,), params)


def random_su4(rng, pair=(0, 1)):
    """Canonical-form element: local U3 layers around Rxx, Ryy and Rzz with uniform angles"""
    a, b = pair
    interaction = [Gate(kind, pair, (float(rng.uniform(-math.pi, math.pi)),)) for kind in ('rxx', 'ryy', 'rzz')]
    return [random_u3(rng, a), random_u3(rng, b), *interaction, random_u3(rng, a), random_u3(rng, b)]


def rb_generate(n_qubits=1, family='su2', depth=1, seed=None):
    """Depth-k RB circuit without measurements; the identity up to global phase.

    ``su2`` applies one random gate to every qubit per layer; ``su4`` acts on
    qubits 0 and 1.
    """
    if family not in FAMILIES:
        raise DomainError(f"unknown RB family {family!r}; expected one of {FAMILIES}")
    if depth < 0:
        raise DomainError(f"depth must be non-negative, got {depth}")
    if family == 'su4' and n_qubits < 2:
        raise DomainError("SU(4) benchmarking needs two qubits")

    rng = np.random.default_rng(seed)
    gates = []
    for _ in range(depth):
        if family == 'su2':
            gates.extend(random_u3(rng, q) for q in range(n_qubits))
        else:
            gates.extend(random_su4(rng))
    forward = Circuit(n_qubits, tuple(gates))
    return forward.compose(forward.inverse())


def _decay(k, alpha, p, beta):
    return alpha * np.power(p, k) + beta


def error_per_gate(p, n_qubits):
    return 1.0 - p - (1.0 - p) / 2 ** n_qubits


@dataclass(frozen=True)
class RbFit:
    alpha: float
    beta: float
    p: float
    epsilon: float
    p_stderr: float = 0.0

    def to_dict(self):
        return asdict(self)


def rb_fit(points, n_qubits=1):
    """Least-squares fit of (k, P) pairs to alpha * p**k + beta"""
    depths = np.array([float(k) for k, _ in points])
    survival = np.array([float(v) for _, v in points])
    if len(set(depths)) < MIN_DEPTHS:
        raise DomainError(f"RB fit needs at least {MIN_DEPTHS} distinct depths, got {len(set(depths))}")

    floor = 0.5 ** n_qubits
    if np.ptp(survival) < 1e-12:
        # no observable decay
        return RbFit(float(survival[0]) - floor, floor, 1.0, 0.0, 0.0)

    order = np.argsort(depths)
    guess = (max(survival[order[0]] - survival[order[-1]], 1e-3), 0.95, float(survival[order[-1]]))
    try:
        with warnings.catch_warnings():
            warnings.simplefilter('ignore', OptimizeWarning)
            popt, pcov = curve_fit(_decay, depths, survival, p0=guess,
                                   bounds=([-2.0, 0.0, -1.0], [2.0, 1.0, 2.0]), maxfev=20000)
    except (RuntimeError, ValueError) as exc:
        raise FitFailedError(f"RB decay fit did not converge: {exc}") from exc

    alpha, p, beta = (float(v) for v in popt)
    if not 0.0 < p <= 1.0:
        raise FitFailedError(f"RB fit returned p={p:.4g} outside (0, 1]", best=(alpha, p, beta))
    p_stderr = float(np.sqrt(pcov[1, 1])) if np.all(np.isfinite(pcov)) else float('nan')
    return RbFit(alpha, beta, p, error_per_gate(p, n_qubits), p_stderr)


@dataclass
class RbSeries:
    """Mean all-zeros survival per depth and the fitted decay"""

    family: str
    mode: str
    n_qubits: int
    depths: List[int]
    survival: List[float]
    stderr: List[float] = field(default_factory=list)
    fit: Optional[RbFit] = None

    @property
    def epsilon(self):
        return self.fit.epsilon if self.fit else None

    @property
    def epsilon_stderr(self):
        """Standard error of epsilon propagated from the fitted p"""
        if self.fit is None:
            return None
        return self.fit.p_stderr * (1.0 - 0.5 ** self.n_qubits)

    def to_frame(self):
        return pd.DataFrame({
            'family': self.family,
            'mode': self.mode,
            'depth': self.depths,
            'survival': self.survival,
            'stderr': self.stderr or [float('nan')] * len(self.depths),
        })


def _zeros_probability(distribution, width):
    return float(distribution.get('0' * width, 0.0))


def rb_run(backend, library, mode='squeeze', family='su2', depths=(1, 2, 4, 8, 16, 32), sequences=5,
           qubits=None, seed=0, shots=None, noiseless=False):
    """Generate, compile and evaluate RB sequences on physical ``qubits``; fit the decay.

    ``shots=None`` evaluates each sequence with exact outcome probabilities.
    """
    width = 2 if family == 'su4' else 1
    physical: Tuple[int, ...] = tuple(qubits) if qubits is not None else tuple(range(width))
    n_qubits = len(physical)
    n_device = max(physical) + 1

    survival, stderr = [], []
    for depth in depths:
        schedules = []
        for index in range(sequences):
            local = rb_generate(n_qubits, family, depth, seed=(seed, depth, index))
            mapped = Circuit(n_device, tuple(g.remap(physical) for g in local.gates))
            mapped = mapped.then(*(Gate('measure', (q,)) for q in physical))
            schedules.append(transpile(mapped, library, mode).schedule)

        if shots is None:
            values = [_zeros_probability(backend.probabilities(s, noiseless=noiseless), n_qubits)
                      for s in schedules]
        else:
            counts = run_schedules(backend, schedules, shots, noiseless=noiseless)
            values = [_zeros_probability(counts_to_distribution(c, shots), n_qubits) for c in counts]
        survival.append(float(np.mean(values)))
        stderr.append(float(np.std(values, ddof=1) / math.sqrt(len(values))) if len(values) > 1 else 0.0)

    series = RbSeries(family, mode, n_qubits, list(depths), survival, stderr)
    series.fit = rb_fit(list(zip(depths, survival)), n_qubits)
    logger.info("📊 %s RB in %s mode: p=%.5f, error per gate %.3e", family, mode, series.fit.p, series.epsilon)
    return series


def rb_compare(backend, library, modes: Sequence[str], **kwargs):
    """One RB series per mode, sharing seeds so every mode sees identical sequences"""
    return {mode: rb_run(backend, library, mode, **kwargs) for mode in modes}
