"""
Parameter store behind the query server.

Records live in a SQLite table through SQLAlchemy Core and in an in-memory
map that is replaced wholesale on every write, so readers never take a lock
and always see complete records.
"""

import json
import logging
import threading
import time
from pathlib import Path
from types import MappingProxyType

from sqlalchemy import Column, Float, Integer, MetaData, String, Table, Text, create_engine, select
from sqlalchemy.dialects.sqlite import insert
from sqlalchemy.pool import StaticPool

from src.exceptions import NotFoundError
from src.query_server.schemas import KINDS, ParamRecord, normalize_key, validate_payload

logger = logging.getLogger(__name__)

metadata = MetaData()

params_table = Table(
    'params', metadata,
    Column('kind', String(8), primary_key=True),
    Column('key', String(32), primary_key=True),
    Column('version', Integer, nullable=False),
    Column('timestamp', Float, nullable=False),
    Column('payload', Text, nullable=False),
)


class ParamStore:
    """Last-writer-wins record per (kind, key), persisted before acknowledging"""

    def __init__(self, data_dir=None, clock=time.time):
        """Open (or create) ``params.sqlite`` under ``data_dir``; in-memory when None"""
        connect_args = {'check_same_thread': False}
        if data_dir is None:
            self.engine = create_engine('sqlite://', connect_args=connect_args, poolclass=StaticPool)
        else:
            path = Path(data_dir)
            path.mkdir(parents=True, exist_ok=True)
            self.engine = create_engine(f"sqlite:///{path / 'params.sqlite'}", connect_args=connect_args)
        metadata.create_all(self.engine)
        self._clock = clock
        self._write_lock = threading.Lock()
        self._records = MappingProxyType(self._load())
        logger.info("✅ parameter store ready with %d record(s)", len(self._records))

    def _load(self):
        records = {}
        with self.engine.connect() as conn:
            for row in conn.execute(select(params_table)):
                records[(row.kind, row.key)] = ParamRecord(
                    kind=row.kind, key=row.key, version=row.version,
                    timestamp=row.timestamp, payload=json.loads(row.payload),
                )
        return records

    def put(self, kind, key, payload):
        """Validate, persist and publish; returns the new version"""
        key = normalize_key(kind, key)
        payload = validate_payload(kind, payload)
        encoded = json.dumps(payload, sort_keys=True)

        with self._write_lock:
            current = self._records.get((kind, key))
            version = 1 if current is None else current.version + 1
            stamp = float(self._clock())
            statement = insert(params_table).values(kind=kind, key=key, version=version,
                                                    timestamp=stamp, payload=encoded)
            statement = statement.on_conflict_do_update(
                index_elements=['kind', 'key'],
                set_={'version': version, 'timestamp': stamp, 'payload': encoded},
            )
            with self.engine.begin() as conn:
                conn.execute(statement)

            record = ParamRecord(kind=kind, key=key, version=version, timestamp=stamp, payload=json.loads(encoded))
            updated = dict(self._records)
            updated[(kind, key)] = record
            self._records = MappingProxyType(updated)

        logger.debug("stored %s/%s version %d", kind, key, version)
        return version

    def get(self, kind, key):
        key = normalize_key(kind, key)
        record = self._records.get((kind, key))
        if record is None:
            raise NotFoundError(f"no {kind} parameters for {key}")
        return record

    def snapshot(self):
        """Point-in-time view: {'rx': {key: payload}, 'zx': {...}, 'versions': {...}}"""
        records = self._records
        view = {kind: {} for kind in KINDS}
        versions = {kind: {} for kind in KINDS}
        for (kind, key), record in records.items():
            view[kind][key] = record.payload
            versions[kind][key] = record.version
        view['versions'] = versions
        return view

    def health(self):
        records = self._records
        counts = {kind: sum(1 for k, _ in records if k == kind) for kind in KINDS}
        last = max((r.timestamp for r in records.values()), default=None)
        return {'status': 'ok', 'records': counts, 'last_update': last}

    def __len__(self):
        return len(self._records)

    def close(self):
        self.engine.dispose()
