"""Query server: stores and serves the latest accepted pulse parameters"""

from src.query_server.app import create_app
from src.query_server.client import QueryClient
from src.query_server.store import ParamStore

__all__ = ['create_app', 'QueryClient', 'ParamStore']
