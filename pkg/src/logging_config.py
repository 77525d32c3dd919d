"""
Logging setup shared by every entry point.

Plain stdlib handlers (a log file under ``logs/`` plus the console) carry both
ordinary log records and structlog key/value events.
"""

import logging
from pathlib import Path

import structlog

LOG_FORMAT = '%(asctime)s - %(levelname)s - %(message)s'

_configured = False


def setup_logging(name='squeeze', level='INFO', log_dir='logs'):
    """Configure root logging once per process and return the named logger"""
    global _configured
    if not _configured:
        handlers = [logging.StreamHandler()]
        if log_dir:
            log_path = Path(log_dir)
            log_path.mkdir(parents=True, exist_ok=True)
            handlers.append(logging.FileHandler(log_path / f'{name}.log'))

        logging.basicConfig(
            level=getattr(logging, str(level).upper(), logging.INFO),
            format=LOG_FORMAT,
            handlers=handlers,
        )
        structlog.configure(
            processors=[
                structlog.stdlib.add_log_level,
                structlog.processors.TimeStamper(fmt='iso'),
                structlog.processors.KeyValueRenderer(key_order=['event']),
            ],
            logger_factory=structlog.stdlib.LoggerFactory(),
            wrapper_class=structlog.stdlib.BoundLogger,
            cache_logger_on_first_use=True,
        )
        _configured = True
    return logging.getLogger(name)


def get_logger(name):
    """Structured logger bound to a module name"""
    return structlog.get_logger(name)
