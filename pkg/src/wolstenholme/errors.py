"""Exception types shared across the package.

Every error raised by the library derives from WolstenholmeError, so callers
can catch one base class.  Most also subclass ValueError because they signal
bad argument values.
"""


class WolstenholmeError(Exception):
    pass


class NotPrimeError(WolstenholmeError, ValueError):
    """Modulus failed trial-division primality."""


class TooSmallError(WolstenholmeError, ValueError):
    """Modulus below the supported range (p >= 5)."""


class NotInvertibleError(WolstenholmeError, ValueError):
    """gcd(a, modulus) != 1; no modular inverse exists."""


class TopOutOfRangeError(WolstenholmeError, ValueError):
    """Binomial coefficient requested with top argument outside [0, p)."""


class ZeroDenominatorError(WolstenholmeError, ZeroDivisionError):
    """A negative-exponent base vanished at a k the sum did not exclude."""


class OffsetZeroError(WolstenholmeError, ValueError):
    """Offset a = 0 where a nonzero offset is required."""


class EqualOffsetsError(WolstenholmeError, ValueError):
    """Two offsets coincide where distinct offsets are required."""


class HypothesisViolationError(WolstenholmeError, ValueError):
    """Parameters outside the hypothesis domain of the requested formula."""


class ConversionInvalidError(WolstenholmeError, ValueError):
    """Ratio-to-product rewrite invalid (a denominator exponent equals p-1)."""


class DuplicateOffsetsError(WolstenholmeError, ValueError):
    """Offsets of a general sum must be pairwise distinct."""


class IndexNotInvertibleError(WolstenholmeError, ValueError):
    """Newton recursion would divide by an index that is 0 mod p."""


class ZeroPivotError(WolstenholmeError, ValueError):
    """Scaling reduction needs a nonzero pivot offset."""


class ModulusMismatchError(WolstenholmeError, ValueError):
    """Operands live over different moduli."""


class RangeViolationError(WolstenholmeError, ValueError):
    """Identity parameters outside their stated ranges."""


class ExpressionError(WolstenholmeError, ValueError):
    """Sum expression failed to parse or uses out-of-range exponents."""


class StrategyInapplicableError(WolstenholmeError, ValueError):
    """The requested evaluation strategy does not cover this sum shape."""


class DisagreementError(WolstenholmeError):
    """Two evaluation strategies returned different residues (always a bug)."""


class UnknownTheoremError(WolstenholmeError, ValueError):
    """Verification requested for an id not in the registry."""


class BadParamsError(WolstenholmeError, ValueError):
    """Table generation parameters invalid for the requested table kind."""
