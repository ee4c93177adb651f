"""Kernel exception hierarchy.

Every kernel error carries a distinct ``exit_code`` so batch CLI runs can
signal the failure class through the process exit status.
"""


class KernelError(Exception):
    exit_code = 1


class OrderMismatch(KernelError):
    """Binary operation on cyclotomic numbers of incompatible orders."""

    exit_code = 2


class DivisionByZero(KernelError):
    exit_code = 3


class RootNotInField(KernelError):
    """The constant-root oracle cannot certify an n-th root of this scalar."""

    exit_code = 4


class WindowExceeded(KernelError):
    """An exponent left the configured per-coordinate support window."""

    exit_code = 5


class LatticeViolation(KernelError):
    """Fractional exponent where the ring only permits integers."""

    exit_code = 6


class SignatureMismatch(KernelError):
    """Operands belong to different ring signatures."""

    exit_code = 7


class ZeroValuation(KernelError):
    """The zero series has no valuation / leading term."""

    exit_code = 8


class NotAOneUnit(KernelError):
    """Series root requires constant term exactly 1."""

    exit_code = 9


class TwistObstruction(KernelError):
    """Support is not phase-commutative, so the graded root recursion
    does not apply."""

    exit_code = 10


class ExponentNotDivisible(KernelError):
    exit_code = 11


class DenominatorCapExceeded(KernelError):
    """Exponent denominator would exceed the configured lattice cap."""

    exit_code = 12


class NotInCenter(KernelError):
    """Support lies outside the declared commutative subring."""

    exit_code = 13


class GradingError(KernelError):
    """A term of weighted degree <= 0 appeared where the graded recursion
    needs strictly positive weight; raise the signature's radix."""

    exit_code = 14


class ParseError(KernelError):
    """Expression syntax error; ``position`` is the offset in the input."""

    exit_code = 15

    def __init__(self, message, position=None):
        super().__init__(message if position is None else f"{message} (at position {position})")
        self.position = position


class EvalError(KernelError):
    """Well-formed expression that cannot be evaluated (unknown name,
    arity mismatch, type mismatch)."""

    exit_code = 16
