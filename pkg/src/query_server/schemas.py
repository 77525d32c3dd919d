"""
Payload schemas for the two parameter kinds.

``rx`` records are keyed by qubit index ("0"), ``zx`` records by ordered pair
("0_1"). Payloads are validated on write and served back unchanged.
"""

from typing import Any, Dict, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from src.exceptions import SchemaError
from src.transpiler.library import parse_pair_key

KINDS = ('rx', 'zx')


class SinFitModel(BaseModel):
    a1: float = Field(gt=0)
    omega: float = Field(gt=0)
    phi: float
    delta: float
    residual: float = 0.0
    degenerate: bool = False


class RxPayload(BaseModel):
    """Fastest-Rx calibration of one qubit"""

    model_config = ConfigDict(extra='allow')

    a0: float = Field(ge=0, le=1)
    t0: int = Field(gt=0, multiple_of=16)
    sigma: float = Field(gt=0)
    beta: float = 0.0
    fit: SinFitModel
    timestamp: float = 0.0


class PulseModel(BaseModel):
    type: Literal['drag', 'gs']
    params: Dict[str, float]


class ZxPayload(BaseModel):
    """Best (c, k) particle and the pulses it scales"""

    model_config = ConfigDict(extra='allow')

    c: float = Field(ge=1)
    k: float = Field(gt=0)
    score: Optional[float] = Field(None, ge=0, le=1)
    base: PulseModel
    x_control: PulseModel
    x_target: PulseModel
    round: int = Field(0, ge=0)
    rounds_since_reset: int = Field(0, ge=0)
    resets: int = Field(0, ge=0)
    timestamp: float = 0.0


class ParamRecord(BaseModel):
    kind: str
    key: str
    version: int
    timestamp: float
    payload: Dict[str, Any]


class PutResponse(BaseModel):
    kind: str
    key: str
    version: int


def normalize_key(kind, key):
    """Canonical text key; raises SchemaError for unknown kinds or malformed keys"""
    if kind not in KINDS:
        raise SchemaError(f"unknown parameter kind {kind!r}; expected one of {', '.join(KINDS)}")
    if kind == 'rx':
        try:
            qubit = int(key)
        except (TypeError, ValueError) as exc:
            raise SchemaError(f"rx key must be a qubit index, got {key!r}") from exc
        if qubit < 0:
            raise SchemaError(f"rx key must be non-negative, got {qubit}")
        return str(qubit)
    control, target = parse_pair_key(key)
    if control == target or min(control, target) < 0:
        raise SchemaError(f"zx key must name two distinct qubits, got {key!r}")
    return f"{control}_{target}"


def validate_payload(kind, payload):
    """Validated copy of ``payload`` as a plain dict"""
    model = RxPayload if kind == 'rx' else ZxPayload
    if not isinstance(payload, dict):
        raise SchemaError(f"{kind} payload must be a JSON object")
    try:
        model.model_validate(payload)
    except ValidationError as exc:
        raise SchemaError(f"invalid {kind} payload: {exc.errors()[0]['msg']}") from exc
    return dict(payload)
