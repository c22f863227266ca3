"""Exception hierarchy shared by every module of the package."""


class HolantError(Exception):
    """Base class for all errors raised by pfholant."""


class CapExceeded(HolantError):
    """An exponential-size operation was asked to exceed its size cap."""

    def __init__(self, what, size, cap):
        super().__init__(f"{what}: size {size} exceeds cap {cap}")
        self.what = what
        self.size = size
        self.cap = cap


class InstanceError(HolantError):
    """Malformed or structurally invalid input (syntax, references, embedding)."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class NotRealizable(HolantError):
    """A signature is not a (rescaled) vector of sub-Pfaffians."""

    def __init__(self, message, vertex=None):
        if vertex is not None:
            message = f"vertex {vertex!r}: {message}"
        super().__init__(message)
        self.vertex = vertex


class ParityMismatch(HolantError):
    """Generator and recognizer parities cannot be matched by any edge relabelling."""

    def __init__(self, message, vertex=None):
        if vertex is not None:
            message = f"vertex {vertex!r}: {message}"
        super().__init__(message)
        self.vertex = vertex


class OddEdgeCount(HolantError):
    """The instance has an odd number of edges, which the Pfaffian pairing excludes."""
