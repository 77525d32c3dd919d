"""
Pytest configuration shared by every test directory.
"""

import os

import pytest

# settings are read on first use; keep test runs away from a developer's .env
os.environ.setdefault('SQUEEZE_LOG_LEVEL', 'WARNING')


@pytest.fixture
def fresh_settings(monkeypatch, tmp_path):
    """Settings rebuilt from the environment, with logs and data under ``tmp_path``"""
    from src.config import get_settings

    monkeypatch.setenv('SQUEEZE_LOG_DIR', str(tmp_path / 'logs'))
    monkeypatch.setenv('SQUEEZE_DATA_DIR', str(tmp_path / 'runtime'))
    monkeypatch.delenv('SQUEEZE_QUERY_URL', raising=False)
    monkeypatch.delenv('SQUEEZE_BACKEND_URL', raising=False)
    get_settings.cache_clear()
    yield get_settings()
    get_settings.cache_clear()
