"""pulse-squeeze: pulse-level compilation with live calibration"""

__version__ = '1.0.0'
