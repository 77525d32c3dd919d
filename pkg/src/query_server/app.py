"""
HTTP surface of the parameter store.
"""

import logging

from fastapi import Body, FastAPI, HTTPException

from src.exceptions import NotFoundError, SchemaError
from src.query_server.schemas import ParamRecord, PutResponse

logger = logging.getLogger(__name__)


def create_app(store):
    """FastAPI application serving ``store``"""
    app = FastAPI(title='pulse-squeeze query server', version='1.0.0')
    app.state.store = store

    @app.get('/v1/params/{kind}/{key}', response_model=ParamRecord)
    def get_params(kind: str, key: str):
        try:
            return store.get(kind, key)
        except SchemaError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        except NotFoundError as exc:
            raise HTTPException(status_code=404, detail=str(exc)) from exc

    @app.put('/v1/params/{kind}/{key}', response_model=PutResponse)
    def put_params(kind: str, key: str, payload: dict = Body(...)):
        try:
            version = store.put(kind, key, payload)
        except SchemaError as exc:
            logger.warning("⚠️ rejected %s/%s: %s", kind, key, exc)
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        return PutResponse(kind=kind, key=store.get(kind, key).key, version=version)

    @app.get('/v1/snapshot')
    def snapshot():
        return store.snapshot()

    @app.get('/v1/health')
    def health():
        return store.health()

    return app
