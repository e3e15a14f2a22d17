"""Exact complex numbers with rational real and imaginary parts."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Union

RationalLike = Union[int, Fraction, str]


def parse_rational(value) -> Fraction:
    """Parse ``"p/q"``, a decimal string, an int or a Fraction.

    Floats are accepted through their shortest decimal repr, so ``0.1``
    becomes ``1/10`` rather than the binary expansion.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(repr(value))
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"not a rational literal: {value!r}") from None
    raise TypeError(f"cannot read a rational from {type(value).__name__}")


def format_rational(q: Fraction) -> str:
    return str(q)


@dataclass(frozen=True)
class GaussianRational:
    re: Fraction
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", parse_rational(self.re))
        object.__setattr__(self, "im", parse_rational(self.im))

    @classmethod
    def coerce(cls, value) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, complex):
            return cls(Fraction(repr(value.real)), Fraction(repr(value.imag)))
        if isinstance(value, dict):
            return cls(value.get("re", 0), value.get("im", 0))
        return cls(value, 0)

    # arithmetic

    def __add__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        n = other.abs2()
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        num = self * other.conjugate()
        return GaussianRational(num.re / n, num.im / n)

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __eq__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def abs2(self) -> Fraction:
        """Squared modulus, exact."""
        return self.re * self.re + self.im * self.im

    def __abs__(self) -> float:
        return abs(complex(self))

    def is_real(self) -> bool:
        return self.im == 0

    def to_json(self) -> dict:
        return {"re": format_rational(self.re), "im": format_rational(self.im)}

    def __str__(self):
        if self.im == 0:
            return format_rational(self.re)
        sign = "-" if self.im < 0 else "+"
        return f"{format_rational(self.re)}{sign}{format_rational(abs(self.im))}i"

    def __repr__(self):
        return f"GaussianRational({self})"


def _lift(value):
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, (int, Rational)) and not isinstance(value, bool):
        return GaussianRational(Fraction(value), Fraction(0))
    return NotImplemented


I = GaussianRational(0, 1)


def gq(re: RationalLike = 0, im: RationalLike = 0) -> GaussianRational:
    """Shorthand constructor: ``gq("1/2", 1)``."""
    return GaussianRational(re, im)
