"""
``transpile`` entry point: circuit JSON in, schedule JSON out.
"""

import argparse
import json
import sys
from pathlib import Path

from src.circuit import Circuit
from src.config import get_settings
from src.exceptions import BackendUnavailableError, CalibrationMissingError, SqueezeError
from src.logging_config import setup_logging
from src.pulse import schedule_to_json
from src.query_server.client import QueryClient
from src.simulator.models.device import DeviceModel, load_device_config
from src.transpiler.equivalence import MODES
from src.transpiler.library import PulseLibrary
from src.transpiler.pass_manager import transpile
from src.transpiler.routing import TOFFOLI_CHOICES


def build_parser():
    settings = get_settings()
    parser = argparse.ArgumentParser(description='Compile a circuit into a pulse schedule')
    parser.add_argument('--in', dest='input', required=True, help='circuit JSON file')
    parser.add_argument('--out', required=True, help='schedule JSON file to write')
    parser.add_argument('--mode', choices=MODES, default=settings.default_mode)
    parser.add_argument('--coupling', default=None, help='device preset or device JSON (coupling and default pulses)')
    parser.add_argument('--query-url', default=settings.query_url, help='query server base URL')
    parser.add_argument('--offline', default=None, help='pulse library JSON; bypasses the query server')
    parser.add_argument('--toffoli', choices=TOFFOLI_CHOICES, default='auto')
    parser.add_argument('--log-level', default=settings.log_level)
    return parser


def load_library(args, logger):
    if args.offline:
        return PulseLibrary.load(args.offline)
    if not args.coupling:
        raise SqueezeError("--coupling is required unless --offline is given")
    defaults = DeviceModel(load_device_config(args.coupling)).defaults()
    library = PulseLibrary.from_defaults(defaults)
    if not args.query_url:
        logger.warning("⚠️ no query server configured; using device defaults only")
        return library
    client = QueryClient(args.query_url, timeout=get_settings().http_timeout_s)
    try:
        return client.library(defaults)
    except BackendUnavailableError as exc:
        logger.warning("⚠️ %s; using device defaults only", exc)
        return library
    finally:
        client.close()


def main(argv=None):
    args = build_parser().parse_args(argv)
    logger = setup_logging('transpile', args.log_level, get_settings().log_dir)
    try:
        circuit = Circuit.from_json(Path(args.input).read_text())
        library = load_library(args, logger)
        coupling = None
        if args.coupling and args.offline:
            coupling = load_device_config(args.coupling).coupling_map()
        mode = args.mode
        try:
            result = transpile(circuit, library, mode, coupling, args.toffoli)
        except CalibrationMissingError as exc:
            if mode != 'squeeze':
                raise
            logger.warning("⚠️ %s; falling back to baseline mode", exc)
            mode = 'baseline'
            result = transpile(circuit, library, mode, coupling, args.toffoli)
        Path(args.out).write_text(schedule_to_json(result.schedule, indent=2))
    except (SqueezeError, OSError, json.JSONDecodeError) as exc:
        logger.error("❌ transpilation failed: %s", exc)
        return 1
    logger.info("✅ %s-mode schedule: %d dt, %d swap(s) -> %s", mode, result.duration, result.swaps, args.out)
    return 0


if __name__ == '__main__':
    sys.exit(main())
