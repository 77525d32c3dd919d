"""
``sim-backend`` entry point: serve a simulated device over HTTP.
"""

import argparse
import sys

import uvicorn

from src.config import get_settings
from src.logging_config import setup_logging
from src.simulator.backend import SimulatedBackend
from src.simulator.models.device import PRESETS, load_device_config
from src.simulator.remote import create_backend_app


def build_parser():
    settings = get_settings()
    parser = argparse.ArgumentParser(description='Serve a simulated pulse backend')
    parser.add_argument('--device', default='lima', help=f"preset ({', '.join(PRESETS)}) or device JSON path")
    parser.add_argument('--host', default=settings.backend_host)
    parser.add_argument('--port', type=int, default=settings.backend_port)
    parser.add_argument('--seed', type=int, default=None, help='override the device seed')
    parser.add_argument('--log-level', default=settings.log_level)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    logger = setup_logging('sim-backend', args.log_level, get_settings().log_dir)
    config = load_device_config(args.device)
    if args.seed is not None:
        config = config.model_copy(update={'seed': args.seed})
    backend = SimulatedBackend(config)
    logger.info("🚀 %s backend (%d qubits) on %s:%d", config.name, config.n_qubits, args.host, args.port)
    try:
        uvicorn.run(create_backend_app(backend), host=args.host, port=args.port, log_level=args.log_level.lower())
    finally:
        backend.close()
    return 0


if __name__ == '__main__':
    sys.exit(main())
