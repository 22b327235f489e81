"""Exception types shared across the toolkit."""


class QubitkitError(Exception):
    """Base class for all toolkit errors."""


class CapacityError(QubitkitError):
    """Requested qubit count exceeds the simulator or backend cap."""


class UnknownBackendError(QubitkitError):
    """No backend registered under the requested name."""


class ValidationError(QubitkitError):
    """A user-supplied parameter failed validation.

    The message always names the offending parameter and the violated
    constraint, so front-ends can show it verbatim.
    """

    def __init__(self, param: str, message: str):
        self.param = param
        super().__init__(f"parameter '{param}': {message}")


class KeyTooShortError(QubitkitError):
    """Sifted key too short to split into verification and secret halves."""
