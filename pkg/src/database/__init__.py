"""Calibration results database"""

from src.database.calibration_db import CalibrationDB

__all__ = ['CalibrationDB']
