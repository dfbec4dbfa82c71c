"""Exception hierarchy shared by all zerobench modules."""


class ZerobenchError(Exception):
    """Base class for all zerobench errors."""

    pass


class InvalidParameterError(ZerobenchError, ValueError):
    """A parameter is outside its valid domain."""

    pass


class DegenerateInputError(ZerobenchError, ValueError):
    """Input data is too degenerate for the requested computation."""

    pass


class UnknownNameError(ZerobenchError, LookupError):
    """A signal, method, metric or test name is not registered."""

    def __init__(self, kind: str, name: str, available: list[str]) -> None:
        self.kind = kind
        self.name = name
        self.available = sorted(available)
        super().__init__(
            f"Unknown {kind} '{name}'. Available: {', '.join(self.available) or '(none)'}"
        )


class SignalFormatError(ZerobenchError):
    """A signal file cannot be read or has an unsupported layout."""

    pass
