"""Projections with a prescribed diagonal, built from a chain of Givens rotations.

A list d in [0,1]^n is the diagonal of a projection exactly when Σ d is an
integer (the trace of a projection is its rank).  The construction pairs
the two lowest-index fractional entries (d_i, d_j) and replaces them by
(0, d_i + d_j) when the sum is at most 1, or (d_i + d_j - 1, 1) otherwise.
An entry equal to 0 or 1 makes the corresponding basis vector an
eigenvector, so a rotation in the (i, j) plane maps the shorter diagonal
back to the original one.  The squared cosines and sines are rational, so
the result is exact over ℚ(√2, √3, ...).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple, Union

import numpy as np

from .gaussian import parse_rational
from .matrices import ExactMatrix
from .surd import Surd


class DiagonalRangeError(ValueError):
    pass


@dataclass(frozen=True)
class Rotation:
    """Rotation in the (i, j) plane with cos² = ``cos2`` and sin² = 1 - cos2."""

    i: int
    j: int
    cos2: Fraction

    @property
    def sin2(self) -> Fraction:
        return 1 - self.cos2


@dataclass(frozen=True)
class Realization:
    diagonal: Tuple[Fraction, ...]
    rank: int
    rotations: Tuple[Rotation, ...]
    projection: Union[ExactMatrix, np.ndarray]


@dataclass(frozen=True)
class DiagonalObstruction:
    """Σ d is not an integer; ``defect`` is Σ d mod 1."""

    diagonal: Tuple[Fraction, ...]
    total: Fraction
    defect: Fraction


def plan_rotations(d: Sequence[Fraction]) -> Tuple[List[Fraction], List[Rotation]]:
    """Rotations (outermost first) and the final 0/1 diagonal."""
    cur = list(d)
    rots = []
    while True:
        frac = [k for k, x in enumerate(cur) if 0 < x < 1]
        if not frac:
            return cur, rots
        if len(frac) == 1:
            raise AssertionError("a single fractional entry cannot have integer sum")
        i, j = frac[0], frac[1]
        di, dj = cur[i], cur[j]
        sigma = di + dj
        if sigma <= 1:
            # block diag(0, σ) -> (s²σ, c²σ)
            cos2 = dj / sigma
            cur[i], cur[j] = Fraction(0), sigma
        else:
            # block diag(σ-1, 1) -> (c²(σ-1) + s², s²(σ-1) + c²)
            cos2 = (1 - di) / (2 - sigma)
            cur[i], cur[j] = sigma - 1, Fraction(1)
        rots.append(Rotation(i, j, cos2))


def _rotate(P, rot: Rotation, c, s):
    """P <- G P G^T for G = [[c, s], [-s, c]] on the (i, j) plane, in place."""
    i, j = rot.i, rot.j
    ri, rj = P[i], P[j]
    P[i] = [c * a + s * b for a, b in zip(ri, rj)]
    P[j] = [c * b - s * a for a, b in zip(ri, rj)]
    for row in P:
        a, b = row[i], row[j]
        row[i] = c * a + s * b
        row[j] = c * b - s * a


def realize_diagonal_01(d: Sequence, exact: bool = True):
    """A projection with diagonal d, or the fractional defect of Σ d."""
    d = tuple(parse_rational(x) for x in d)
    for k, x in enumerate(d):
        if not 0 <= x <= 1:
            raise DiagonalRangeError(f"diagonal entry {k} = {x} is outside [0, 1]")
    total = sum(d, Fraction(0))
    if total.denominator != 1:
        return DiagonalObstruction(d, total, total - math.floor(total))
    final, rots = plan_rotations(d)
    n = len(d)
    if exact:
        P = [[Surd(final[a]) if a == b else Surd() for b in range(n)] for a in range(n)]
        for rot in reversed(rots):
            _rotate(P, rot, Surd.sqrt(rot.cos2), Surd.sqrt(rot.sin2))
        proj = ExactMatrix(P)
    else:
        P = [[float(final[a]) if a == b else 0.0 for b in range(n)] for a in range(n)]
        for rot in reversed(rots):
            _rotate(P, rot, math.sqrt(rot.cos2), math.sqrt(rot.sin2))
        proj = np.array(P, dtype=complex)
    return Realization(d, int(total), tuple(rots), proj)
