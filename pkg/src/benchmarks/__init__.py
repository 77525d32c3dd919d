"""Benchmark harness: tomography, randomized benchmarking, algorithms and durations"""

from src.benchmarks.algorithms import (
    BENCHMARKS,
    bernstein_vazirani,
    cdkm_adder,
    ideal_output,
    make_benchmark,
    qaoa,
    qft,
    run_benchmark,
)
from src.benchmarks.durations import (
    duration_report,
    load_appendix,
    rzx_duration_table,
    single_qubit_library,
    single_qubit_table,
    speedup_summary,
)
from src.benchmarks.metrics import born_distribution, counts_to_distribution, distance_1norm
from src.benchmarks.rb import RbFit, RbSeries, error_per_gate, rb_fit, rb_generate, rb_run, u3_params
from src.benchmarks.tomography import TomographyResult, tomography_sweep

__all__ = [
    'BENCHMARKS', 'bernstein_vazirani', 'cdkm_adder', 'ideal_output', 'make_benchmark', 'qaoa', 'qft',
    'run_benchmark',
    'duration_report', 'load_appendix', 'rzx_duration_table', 'single_qubit_library', 'single_qubit_table',
    'speedup_summary',
    'born_distribution', 'counts_to_distribution', 'distance_1norm',
    'RbFit', 'RbSeries', 'error_per_gate', 'rb_fit', 'rb_generate', 'rb_run', 'u3_params',
    'TomographyResult', 'tomography_sweep',
]
