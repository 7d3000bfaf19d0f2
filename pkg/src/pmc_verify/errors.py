"""Exception types shared across the engine."""


class ZeroDenominator(ArithmeticError):
    """Denominator reduces to zero modulo the circle ideal."""


class PoleAtPoint(ArithmeticError):
    """Exact evaluation hit a vanishing denominator; caller resamples."""


class UnknownId(KeyError):
    """Catalog lookup with an id that does not exist."""


class ReductionOverflow(RuntimeError):
    """A symbolic reduction exceeded the configured term budget."""


class UnsupportedSymbol(ValueError):
    """A jet symbol appeared at a rewrite level where it has been eliminated."""


class DegenerateLeadingCoefficient(ArithmeticError):
    """Cubic solve called with a (numerically) vanishing leading coefficient."""


class PoleNearPoint(ArithmeticError):
    """Floating evaluation with denominator below the pole tolerance."""


class AllRootsReal(ArithmeticError):
    """Cubic has no non-real root; the point is outside the general-type regime."""


class DerivativeDenominatorZero(ArithmeticError):
    """3*p16*P^2 + 2*p20*P + p21 vanished for a candidate root."""


class PoleEncountered(ArithmeticError):
    """ODE integration approached a pole; carries the last good alpha."""

    def __init__(self, message, last_alpha=None):
        super().__init__(message)
        self.last_alpha = last_alpha


class ExprSyntaxError(ValueError):
    """Parse failure with byte offset and the expected-token set."""

    def __init__(self, offset: int, expected, found: str):
        self.offset = offset
        self.expected = tuple(sorted(expected))
        self.found = found
        super().__init__(
            f"syntax error at offset {offset}: expected one of "
            f"{', '.join(self.expected)}; found {found!r}"
        )


class DomainError(ValueError):
    """Structurally valid input that violates a surface-language rule."""


class ConfigError(ValueError):
    """Invalid tolerance, budget or suite configuration."""
