"""
Package definition for pulse-squeeze.

Installs the ``src`` package and the five command-line tools:
``transpile``, ``calibd``, ``bench``, ``query-server`` and ``sim-backend``.
"""

from pathlib import Path

from setuptools import find_packages, setup

HERE = Path(__file__).resolve().parent
RUNTIME = [
    'numpy>=1.24.3',
    'scipy>=1.10.0',
    'lmfit>=1.2.0',
    'networkx>=3.1',
    'pandas>=2.0.3',
    'matplotlib>=3.7.2',
    'seaborn>=0.12.2',
    'sqlalchemy>=2.0.19',
    'python-dotenv>=1.0.0',
    'pydantic>=2.0.0',
    'pydantic-settings>=2.0.0',
    'structlog>=23.0.0',
    'fastapi>=0.100.0',
    'uvicorn>=0.23.0',
    'httpx>=0.24.0',
]
TESTING = ['pytest>=7.4.0', 'pytest-cov>=4.1.0', 'pytest-mock>=3.11.1', 'pytest-xdist>=3.3.1']

setup(
    name='pulse-squeeze',
    version='1.0.0',
    description='Pulse-level quantum compilation with asynchronous calibration',
    long_description=(HERE / 'README.md').read_text(encoding='utf-8'),
    long_description_content_type='text/markdown',
    python_requires='>=3.9',
    packages=find_packages(include=['src', 'src.*']),
    data_files=[('data', ['data/appendix_durations.csv'])],
    install_requires=RUNTIME,
    extras_require={'test': TESTING},
    entry_points={
        'console_scripts': [
            'transpile=src.transpiler.cli:main',
            'calibd=src.daemon.cli:main',
            'bench=src.benchmarks.cli:main',
            'query-server=src.query_server.cli:main',
            'sim-backend=src.simulator.cli:main',
        ],
    },
    license='MIT',
)
