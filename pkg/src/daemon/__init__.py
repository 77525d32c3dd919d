"""Calibration daemon: cycles, reports and the service loop"""

from src.daemon.config import DaemonConfig
from src.daemon.cycle import CalibrationDaemon, CycleReport, KeyAction, write_report
from src.daemon.service import DaemonService

__all__ = ['DaemonConfig', 'CalibrationDaemon', 'CycleReport', 'KeyAction', 'write_report', 'DaemonService']
