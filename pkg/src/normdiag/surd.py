"""Exact real numbers of the form Σ q_m √m with rational q_m and squarefree m.

Square roots of distinct squarefree integers are linearly independent over
ℚ, so an element is zero exactly when every coefficient is zero.  This is
enough to hold entries of projections assembled from Givens rotations whose
cosines and sines are square roots of rationals.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

from .gaussian import parse_rational


@lru_cache(maxsize=4096)
def squarefree_split(n: int):
    """n = s² · m with m squarefree; returns (s, m)."""
    if n <= 0:
        raise ValueError("squarefree_split needs a positive integer")
    s, m = 1, 1
    p = 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        s *= p ** (e // 2)
        if e % 2:
            m *= p
        p += 1 if p == 2 else 2
    return s, m * n


class Surd:
    __slots__ = ("terms",)

    def __init__(self, terms=None):
        # terms: {squarefree m: nonzero Fraction}
        if terms is None:
            terms = {}
        elif not isinstance(terms, dict):
            q = parse_rational(terms)
            terms = {1: q} if q else {}
        self.terms = terms

    @classmethod
    def sqrt(cls, q) -> "Surd":
        """√q for a nonnegative rational q."""
        q = Fraction(q)
        if q < 0:
            raise ValueError("square root of a negative rational")
        if q == 0:
            return cls()
        # √(a/b) = √(ab)/b
        s, m = squarefree_split(q.numerator * q.denominator)
        return cls({m: Fraction(s, q.denominator)})

    @staticmethod
    def lift(value):
        if isinstance(value, Surd):
            return value
        if isinstance(value, (int, Rational)) and not isinstance(value, bool):
            return Surd(Fraction(value))
        return NotImplemented

    def __add__(self, other):
        other = Surd.lift(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Surd(out)

    __radd__ = __add__

    def __neg__(self):
        return Surd({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = Surd.lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = Surd.lift(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = Surd.lift(other)
        if other is NotImplemented:
            return other
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                g = math.gcd(m1, m2)
                key = (m1 // g) * (m2 // g)
                v = out.get(key, 0) + c1 * c2 * g
                if v:
                    out[key] = v
                else:
                    out.pop(key, None)
        return Surd(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        other = Surd.lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if not self.terms:
            return hash(0)
        if set(self.terms) == {1}:
            return hash(self.terms[1])
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __float__(self):
        return float(sum(float(c) * math.sqrt(m) for m, c in self.terms.items()))

    def __complex__(self):
        return complex(float(self))

    def conjugate(self):
        return self

    def is_rational(self) -> bool:
        return set(self.terms) <= {1}

    def rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is irrational")
        return self.terms.get(1, Fraction(0))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms):
            c = self.terms[m]
            parts.append(str(c) if m == 1 else f"{c}*sqrt({m})")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"Surd({self})"
