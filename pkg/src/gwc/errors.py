"""Exception hierarchy.

Input problems derive from :class:`InputError` (CLI exit status 2); broken
internal invariants raise :class:`InvariantViolation` (exit status 3).
"""


class GWCError(Exception):
    """Base class for all errors raised by this package."""


class InputError(GWCError, ValueError):
    pass


class InvariantViolation(GWCError, RuntimeError):
    pass


# fields
class NotMonic(InputError):
    pass


class Reducible(InputError):
    pass


class ZeroFunction(InputError, ZeroDivisionError):
    pass


# polynomials
class ParseError(InputError):
    pass


class RingMismatch(InputError):
    pass


class IndexOutOfRange(InputError, IndexError):
    pass


class ZeroIdeal(InputError):
    pass


class NotZeroDimensional(InputError):
    pass


# local algebra
class NotIsolated(NotZeroDimensional):
    pass


class NotAtOrigin(InputError):
    pass


class SmoothPoint(InputError):
    pass


class ConstantTermPresent(InputError):
    pass


class ZeroElement(InvariantViolation):
    pass


# GW ring
class Degenerate(InputError):
    pass


class ZeroEntry(InputError):
    pass


class FieldMismatch(InputError):
    pass


class UnsupportedField(InputError):
    pass


class DegenerateTraceForm(InputError):
    pass


# conductor formulas
class MuMismatch(InputError):
    pass


class ParityViolation(InputError):
    pass


class NegativeGenus(InputError):
    pass


class NotSquarefree(InputError):
    pass


class SmoothnessCheckFailed(InputError):
    pass


class FactorizationInvalid(InputError):
    pass


class InconsistentGlobalData(InputError):
    pass


class InsufficientGlobalData(InputError):
    pass


class ValidationFailed(InputError):
    pass


class SchemaError(InputError):
    pass
