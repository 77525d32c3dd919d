"""
Exception hierarchy for pulse-squeeze.

Library code raises these; command-line entry points catch ``SqueezeError``,
log it and exit non-zero.
"""


class SqueezeError(Exception):
    """Base class for every error raised by the toolkit"""


class DomainError(SqueezeError, ValueError):
    """An argument lies outside the domain of an operation"""


class RangeError(DomainError):
    """An angle or parameter lies outside the accepted range"""


class UnsupportedGateError(SqueezeError):
    """A gate kind cannot be handled by the requested operation"""

    def __init__(self, kind, message=None):
        self.kind = kind
        super().__init__(message or f"unsupported gate kind: {kind}")


class ResourceError(SqueezeError):
    """A request exceeds a desk-scale resource bound"""


class RoutingError(SqueezeError):
    """No swap path exists between the qubits of a gate"""


class CalibrationMissingError(SqueezeError):
    """The pulse library has no entry for a qubit or pair"""

    def __init__(self, key, message=None):
        self.key = key
        super().__init__(message or f"no calibration for {key}")


class CalibrationInfeasibleError(SqueezeError):
    """The calibration sweep never reached its acceptance threshold"""


class FitFailedError(SqueezeError):
    """A curve fit did not converge; ``best`` holds the best-so-far parameters"""

    def __init__(self, message, best=None):
        self.best = best
        super().__init__(message)


class InversionDomainError(DomainError):
    """The arcsine argument of an amplitude inversion left [0, 1]"""


class AmplitudeOverflowError(DomainError):
    """A rescaled pulse amplitude exceeds 1"""


class WidthUnderflowError(DomainError):
    """A rescaled flat-top width became negative"""


class DeviceError(SqueezeError):
    """A schedule references a channel the device does not have"""


class BatchLimitError(SqueezeError):
    """A job request carries more schedules than one submission allows"""


class BackendUnavailableError(SqueezeError):
    """The backend could not be reached"""


class ValidationInconclusiveError(SqueezeError):
    """A validation run could not complete; nothing may be posted"""


class EmptyDataError(SqueezeError):
    """No samples remain after filtering"""


class NotFoundError(SqueezeError):
    """A requested record does not exist"""


class SchemaError(SqueezeError, ValueError):
    """A payload does not match its schema"""
