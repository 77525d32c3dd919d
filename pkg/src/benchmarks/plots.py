"""
Static figures for benchmark results (SVG or PNG, chosen by file suffix).
"""

import logging
from pathlib import Path

import matplotlib

matplotlib.use('Agg')

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
import seaborn as sns  # noqa: E402

logger = logging.getLogger(__name__)


def _save(fig, path):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    plt.tight_layout()
    fig.savefig(path, dpi=300, bbox_inches='tight')
    plt.close(fig)
    logger.info("📊 figure written to %s", path)
    return path


def plot_tomography(frame, path):
    """1-norm error against angle, one line per (mode, basis)"""
    sns.set_palette("husl")
    fig, ax = plt.subplots(figsize=(8, 5))
    hue = 'mode' if 'mode' in frame.columns else None
    sns.lineplot(data=frame, x='theta', y='error', hue=hue, style='basis', marker='o', ax=ax)
    ax.set_xlabel('rotation angle (rad)')
    ax.set_ylabel('1-norm error')
    ax.set_title('Gate tomography error')
    return _save(fig, path)


def plot_rb(series_by_mode, path):
    """Survival against depth with the fitted decay for each mode"""
    sns.set_palette("husl")
    fig, ax = plt.subplots(figsize=(8, 5))
    for mode, series in series_by_mode.items():
        depths = np.asarray(series.depths, dtype=float)
        ax.errorbar(depths, series.survival, yerr=series.stderr or None, fmt='o', label=f'{mode} data')
        if series.fit is not None:
            grid = np.linspace(0, depths.max(), 200)
            fit = series.fit
            ax.plot(grid, fit.alpha * fit.p ** grid + fit.beta,
                    label=f'{mode} fit (error/gate {fit.epsilon:.2e})')
    ax.set_xlabel('sequence depth k')
    ax.set_ylabel('P(all zeros)')
    ax.set_title('Randomized benchmarking')
    ax.legend()
    return _save(fig, path)


def plot_durations(summary, path):
    """Mean schedule duration per mode as bars"""
    sns.set_palette("husl")
    fig, ax = plt.subplots(figsize=(6, 4))
    sns.barplot(x=summary.index, y=summary['mean_dt'], ax=ax)
    ax.set_xlabel('mode')
    ax.set_ylabel('mean duration (dt)')
    ax.set_title('Schedule duration')
    return _save(fig, path)
