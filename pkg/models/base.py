class QCIError(Exception):
    """Shared base class for every error raised by the library."""


class InputError(QCIError):
    """The caller supplied something invalid (CLI exit code 2)."""


class InternalError(QCIError):
    """An internal invariant failed; never expected on valid input."""


class InconsistentSystem(InternalError):
    pass


class AlgebraMismatch(InputError):
    pass


class ZeroPoint(InputError):
    def __init__(self, what: str = "point"):
        super().__init__(f"{what} must be nonzero")
