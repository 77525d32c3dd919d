"""
``query-server`` entry point.
"""

import argparse
import sys

import uvicorn

from src.config import get_settings
from src.logging_config import setup_logging
from src.query_server.app import create_app
from src.query_server.store import ParamStore


def build_parser():
    settings = get_settings()
    parser = argparse.ArgumentParser(description='Serve the latest accepted pulse parameters')
    parser.add_argument('--host', default=settings.query_host)
    parser.add_argument('--port', type=int, default=settings.query_port)
    parser.add_argument('--data-dir', default=str(settings.data_dir), help='directory holding params.sqlite')
    parser.add_argument('--log-level', default=settings.log_level)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    logger = setup_logging('query-server', args.log_level, get_settings().log_dir)
    store = ParamStore(args.data_dir)
    logger.info("🚀 query server on %s:%d (data in %s)", args.host, args.port, args.data_dir)
    try:
        uvicorn.run(create_app(store), host=args.host, port=args.port, log_level=args.log_level.lower())
    finally:
        store.close()
    return 0


if __name__ == '__main__':
    sys.exit(main())
