"""Exception types shared across the package."""

from __future__ import annotations


class PrimsetError(Exception):
    """Base class for every error raised by this package."""


class DimensionMismatch(PrimsetError, ValueError):
    pass


class ParseError(PrimsetError, ValueError):
    pass


class CapExceeded(PrimsetError):
    """A configurable search or enumeration cap was hit before resolution."""

    def __init__(self, message: str, products_seen: int | None = None):
        super().__init__(message)
        self.products_seen = products_seen


class LetterCapExceeded(CapExceeded):
    def __init__(self, required: int, cap: int):
        super().__init__(f"selection functions required: {required} > cap {cap}")
        self.required = required
        self.cap = cap


class NotPrimitive(PrimsetError):
    pass


class NotComplete(PrimsetError):
    pass


class NotSynchronizing(PrimsetError):
    pass


class NotCarefullySynchronizing(PrimsetError):
    pass


class UndefinedTransition(PrimsetError):
    """A word hit an undefined transition, so it is not careful on the given set."""

    def __init__(self, state: int, position: int):
        super().__init__(f"letter at position {position} is undefined on state {state}")
        self.state = state
        self.position = position


class ProcedureStuck(PrimsetError):
    pass


class NoTotalSupport(PrimsetError):
    pass


class NoSink(PrimsetError):
    pass


class NotClassC(PrimsetError):
    pass


class NotNZ(PrimsetError):
    pass


class PreconditionViolated(PrimsetError):
    pass
