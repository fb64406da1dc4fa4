"""Exception hierarchy shared across the package."""


class SolgenusError(Exception):
    """Base class for all domain errors raised by this package."""


class NotUnimodular(SolgenusError):
    """A matrix required to lie in GL2(Z) has determinant other than +-1."""


class DegenerateSpectrum(SolgenusError):
    """Characteristic polynomial is reducible over Q (square or zero discriminant)."""


class ImprimitiveForm(SolgenusError):
    """Binary quadratic form with gcd(a, b, c) > 1 where a primitive form is required."""


class DiscriminantMismatch(SolgenusError):
    """Two forms that must share a discriminant do not."""


class ParseError(SolgenusError):
    """Malformed matrix text.  ``position`` is the character offset of the problem."""

    def __init__(self, message: str, position: int = 0):
        super().__init__(f"{message} (at position {position})")
        self.position = position
