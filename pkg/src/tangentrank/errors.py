"""Exception hierarchy for exact-arithmetic failures and contract violations."""


class TangentRankError(Exception):
    """Base class for all package-specific errors."""


class NonExactDivision(TangentRankError, ArithmeticError):
    """Exact division was requested but the divisor does not divide evenly."""


class DegreeMismatch(TangentRankError, ValueError):
    """Operands are homogeneous of different degrees."""


class NotDivisible(TangentRankError, ArithmeticError):
    """A polynomial is not divisible by the requested linear form."""


class DegreeZero(TangentRankError, ValueError):
    """Differentiation of a degree-0 polynomial."""


class BothZero(TangentRankError, ValueError):
    """gcd of two zero polynomials is undefined."""


class ShapeMismatch(TangentRankError, ValueError):
    """Matrix shapes are incompatible for the requested operation."""


class NotSquare(TangentRankError, ValueError):
    """Determinant of a non-square matrix."""


class OutOfScope(TangentRankError, ValueError):
    """(n, d) outside the supported range d >= n+1, n >= 2."""


class DegenerateParameters(TangentRankError, ValueError):
    """All maximal minors vanish: the parameters define no curve."""


class InconsistentDiagram(TangentRankError, RuntimeError):
    """The product LP*J failed the divisibility/cross-column checks.

    This cannot happen for minors-derived curves, so it flags an internal bug.
    """


class AllTrialsDegenerate(TangentRankError, RuntimeError):
    """Every resampling attempt hit degenerate parameters."""


class BudgetExceeded(TangentRankError, RuntimeError):
    """Symbolic computation exceeded its configured term budget."""


class NonzeroMinor(TangentRankError, RuntimeError):
    """A 2x2 minor expected to vanish identically is a nonzero polynomial."""

    def __init__(self, message, minor=None):
        super().__init__(message)
        self.minor = minor


class ParseError(TangentRankError, ValueError):
    """Malformed input text or file."""


class DimensionMismatch(TangentRankError, ValueError):
    """A params file does not match its declared (n, d)."""
