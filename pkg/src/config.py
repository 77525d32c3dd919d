"""
Process-wide settings.

Values come from ``SQUEEZE_*`` environment variables, optionally loaded from a
``.env`` file in the working directory.
"""

from functools import lru_cache
from pathlib import Path
from typing import Optional

from dotenv import load_dotenv
from pydantic_settings import BaseSettings, SettingsConfigDict

load_dotenv()


class Settings(BaseSettings):
    """Runtime configuration for services and command-line tools"""

    model_config = SettingsConfigDict(env_prefix='SQUEEZE_', env_file='.env', extra='ignore')

    data_dir: Path = Path('data/runtime')
    log_dir: Path = Path('logs')
    log_level: str = 'INFO'

    query_host: str = '127.0.0.1'
    query_port: int = 8400
    query_url: Optional[str] = None

    backend_host: str = '127.0.0.1'
    backend_port: int = 8401
    backend_url: Optional[str] = None

    default_mode: str = 'squeeze'
    default_shots: int = 1000
    queue_delay_s: float = 0.0
    http_timeout_s: float = 10.0


@lru_cache
def get_settings():
    """Cached settings instance"""
    return Settings()
