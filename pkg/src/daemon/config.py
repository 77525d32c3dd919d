"""
Daemon configuration, loaded from ``daemon.json``.
"""

from pathlib import Path
from typing import List, Optional, Tuple

from pydantic import BaseModel, Field

from src.config import get_settings


class DaemonConfig(BaseModel):
    backend: str = 'lima'
    query_url: Optional[str] = None
    data_dir: Path = Field(default_factory=lambda: get_settings().data_dir)
    cadence_s: float = Field(7200.0, gt=0)
    enable_rx: bool = True
    enable_zx: bool = True
    qubits: Optional[List[int]] = None
    pairs: Optional[List[Tuple[int, int]]] = None

    sweep_shots: int = Field(1000, gt=0)
    sample_shots: int = Field(1000, gt=0)
    sample_points: int = Field(16, ge=8)
    sample_repeats: int = Field(3, ge=1)
    validation_shots: int = Field(4000, gt=0)
    cr_shots: int = Field(1000, gt=0)
    window_s: float = Field(2 * 24 * 3600.0, gt=0)
    resweep_every: int = Field(12, ge=1)

    seed: int = 0
    max_backoff_s: float = Field(3600.0, gt=0)
    put_retries: int = Field(3, ge=0)

    @classmethod
    def from_file(cls, path):
        return cls.model_validate_json(Path(path).read_text())

    def to_file(self, path):
        Path(path).write_text(self.model_dump_json(indent=2))
