"""
``calibd`` entry point.
"""

import argparse
import asyncio
import signal
import sys

from src.config import get_settings
from src.daemon.config import DaemonConfig
from src.daemon.cycle import CalibrationDaemon
from src.daemon.service import DaemonService
from src.exceptions import SqueezeError
from src.logging_config import setup_logging
from src.query_server.client import QueryClient
from src.simulator.remote import open_backend


def build_parser():
    parser = argparse.ArgumentParser(description='Asynchronous pulse calibration daemon')
    parser.add_argument('--config', required=True, help='daemon.json')
    parser.add_argument('--simulated-time', type=float, default=None, metavar='FACTOR',
                        help='advance the backend clock instead of sleeping; FACTOR simulated seconds per wall second')
    parser.add_argument('--cycles', type=int, default=None, help='stop after this many cycles')
    parser.add_argument('--log-level', default=get_settings().log_level)
    return parser


async def _serve(service, max_cycles):
    loop = asyncio.get_running_loop()
    for signum in (signal.SIGTERM, signal.SIGINT):
        try:
            loop.add_signal_handler(signum, service.stop)
        except NotImplementedError:
            pass
    await service.run(max_cycles=max_cycles)


def main(argv=None):
    args = build_parser().parse_args(argv)
    settings = get_settings()
    logger = setup_logging('calibd', args.log_level, settings.log_dir)
    try:
        config = DaemonConfig.from_file(args.config)
        backend = open_backend(config.backend, timeout=settings.http_timeout_s)
        client = None
        if config.query_url:
            client = QueryClient(config.query_url, timeout=settings.http_timeout_s, retries=config.put_retries)
        daemon = CalibrationDaemon(config, backend, client=client)
    except (SqueezeError, OSError, ValueError) as exc:
        logger.error("❌ could not start the daemon: %s", exc)
        return 1

    logger.info("🚀 calibrating %d qubit(s) and %d pair(s) every %.0fs",
                len(daemon.qubits), len(daemon.pairs), config.cadence_s)
    service = DaemonService(daemon, time_factor=args.simulated_time)
    try:
        asyncio.run(_serve(service, args.cycles))
    finally:
        if client is not None:
            client.close()
        close = getattr(backend, 'close', None)
        if close:
            close()
    logger.info("✅ daemon stopped after %d cycle(s)", len(service.reports))
    return 0


if __name__ == '__main__':
    sys.exit(main())
