"""Exception hierarchy.

Every error raised by the library derives from :class:`GrcatError`, so callers
can catch one type. Validation errors carry the first offending tuple in their
message and in ``.witness``.
"""


class GrcatError(Exception):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class GroupError(GrcatError, ValueError):
    pass


class NotLatinSquare(GroupError):
    pass


class NoIdentity(GroupError):
    pass


class NoInverse(GroupError):
    pass


class NotAssociative(GroupError):
    pass


class GroupTooLarge(GrcatError):
    pass


class NotAHomomorphism(GrcatError, ValueError):
    pass


class SourceMismatch(GrcatError, ValueError):
    pass


class ModuleError(GrcatError, ValueError):
    pass


class NotAnAction(ModuleError):
    pass


class NotAdditive(ModuleError):
    pass


class NotAFactorChain(GrcatError, ValueError):
    """Invariant factors that do not form a divisibility chain."""


class DegreeTooHigh(GrcatError, ValueError):
    pass


class NotACocycle(GrcatError, ValueError):
    pass


class BruteForceTooLarge(GrcatError):
    pass


class InvalidPair(GrcatError, ValueError):
    pass


class SignatureMismatch(GrcatError, ValueError):
    pass


class CentralityViolation(GrcatError):
    pass


class ObstructionNonzero(GrcatError):
    pass


class NotAGroupoid(GrcatError):
    pass


class UnitEndomorphismsNotAbelian(GrcatError):
    pass


class NonInvertibleObject(GrcatError):
    pass


class NotStrict(GrcatError):
    pass


class ParseError(GrcatError, ValueError):
    pass
