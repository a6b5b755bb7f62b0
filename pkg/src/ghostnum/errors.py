"""Exception hierarchy shared by every module."""

from __future__ import annotations


class GhostNumError(Exception):
    """Base class for all errors raised by the package."""


class NotAGroup(GhostNumError):
    def __init__(self, law: str, witness: tuple[int, ...], message: str = ""):
        self.law = law
        self.witness = witness
        super().__init__(message or f"{law} fails at {witness}")


class OrderNotPrimePower(GhostNumError):
    pass


class WrongPrime(GhostNumError):
    pass


class IndexOutOfRange(GhostNumError):
    pass


class NotNormal(GhostNumError):
    pass


class NotCentral(GhostNumError):
    pass


class OrderMismatch(GhostNumError):
    pass


class PrimeMismatch(GhostNumError):
    pass


class TrivialGroup(GhostNumError):
    pass


class InvalidSpec(GhostNumError):
    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class SizeCapExceeded(GhostNumError):
    pass


class DimensionMismatch(GhostNumError):
    pass


class NotEquivariant(GhostNumError):
    pass


class ShapeMismatch(GhostNumError):
    pass


class BudgetExceeded(GhostNumError):
    """Search exhausted without a certificate. This is not a proof of absence."""
