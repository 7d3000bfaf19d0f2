"""Exact Gaussian rational arithmetic.

A GaussianRational is a number q1 + q2*i with arbitrary-precision rational
parts.  Fraction keeps denominators positive and in lowest terms, so the
representation is canonical and every operation here is exact.
"""

from __future__ import annotations

from fractions import Fraction


class GaussianRational:
    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if type(re) is Fraction else Fraction(re)
        self.im = im if type(im) is Fraction else Fraction(im)

    # -- constructors -------------------------------------------------
    @classmethod
    def from_fraction(cls, q: Fraction) -> "GaussianRational":
        g = cls.__new__(cls)
        g.re = q
        g.im = _ZERO_FRAC
        return g

    # -- predicates ----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.re and not self.im

    def is_real(self) -> bool:
        return not self.im

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    # -- arithmetic ----------------------------------------------------
    def __add__(self, other: "GaussianRational") -> "GaussianRational":
        g = GaussianRational.__new__(GaussianRational)
        g.re = self.re + other.re
        g.im = self.im + other.im
        return g

    def __sub__(self, other: "GaussianRational") -> "GaussianRational":
        g = GaussianRational.__new__(GaussianRational)
        g.re = self.re - other.re
        g.im = self.im - other.im
        return g

    def __neg__(self) -> "GaussianRational":
        g = GaussianRational.__new__(GaussianRational)
        g.re = -self.re
        g.im = -self.im
        return g

    def __mul__(self, other: "GaussianRational") -> "GaussianRational":
        g = GaussianRational.__new__(GaussianRational)
        if not self.im and not other.im:
            g.re = self.re * other.re
            g.im = _ZERO_FRAC
        else:
            g.re = self.re * other.re - self.im * other.im
            g.im = self.re * other.im + self.im * other.re
        return g

    def __truediv__(self, other: "GaussianRational") -> "GaussianRational":
        if not other.re and not other.im:
            raise ZeroDivisionError("division by zero GaussianRational")
        g = GaussianRational.__new__(GaussianRational)
        if not other.im:
            g.re = self.re / other.re
            g.im = self.im / other.re
        else:
            n = other.re * other.re + other.im * other.im
            g.re = (self.re * other.re + self.im * other.im) / n
            g.im = (self.im * other.re - self.re * other.im) / n
        return g

    def __pow__(self, n: int) -> "GaussianRational":
        if n < 0:
            return ONE / self.__pow__(-n)
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conjugate(self) -> "GaussianRational":
        g = GaussianRational.__new__(GaussianRational)
        g.re = self.re
        g.im = -self.im
        return g

    # -- comparison / hashing -------------------------------------------
    def __eq__(self, other) -> bool:
        if not isinstance(other, GaussianRational):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self) -> str:
        if not self.im:
            return f"GR({self.re})"
        return f"GR({self.re}, {self.im})"


_ZERO_FRAC = Fraction(0)

ZERO = GaussianRational(0)
ONE = GaussianRational(1)
MINUS_ONE = GaussianRational(-1)
I = GaussianRational(0, 1)


def gr(re, im=0) -> GaussianRational:
    """Shorthand constructor accepting ints, Fractions or 'p/q' strings."""
    if isinstance(re, str):
        re = Fraction(re)
    if isinstance(im, str):
        im = Fraction(im)
    return GaussianRational(re, im)
