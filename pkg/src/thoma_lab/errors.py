"""Shared exception types."""


class CapExceededError(RuntimeError):
    """A computation would exceed a configured size cap."""

    def __init__(self, what: str, needed, cap):
        super().__init__(f"{what} needs {needed} but the cap is {cap}")
        self.what = what
        self.needed = needed
        self.cap = cap


class ParameterError(ValueError):
    """Invalid Thoma parameter data."""


class ParseError(ValueError):
    """Malformed textual input; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position
