"""Decide whether a 3x3 doubly stochastic matrix is |u_ij|² for a unitary U.

Rows i and j of such a U are orthogonal, so the three complex numbers
u_ik conj(u_jk) close up into a triangle with side lengths
√(a_ik a_jk).  For 3x3 matrices the triangle inequality on those lengths is
also sufficient: phases closing the triangle give two orthonormal rows, and
the conjugated cross product completes them to a unitary whose third row
has the right moduli because the columns of A sum to 1.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple, Union

import numpy as np

from .gaussian import parse_rational
from .xdecomp import exact_sqrt


class NotDoublyStochasticError(ValueError):
    pass


@dataclass(frozen=True)
class RowPairViolation:
    """Rows (0-based) whose products a_ik a_jk fail the triangle inequality."""

    rows: Tuple[int, int]
    products: Tuple[Fraction, Fraction, Fraction]

    @property
    def moduli(self) -> Tuple[Union[Fraction, float], ...]:
        """√(a_ik a_jk), exact where rational."""
        out = []
        for p in self.products:
            r = exact_sqrt(p)
            out.append(r if r is not None else math.sqrt(p))
        return tuple(out)


@dataclass(frozen=True)
class OrthostochasticVerdict:
    orthostochastic: bool
    witness: Optional[np.ndarray] = None
    violation: Optional[RowPairViolation] = None

    def unitarity_defect(self) -> float:
        U = self.witness
        return float(np.linalg.norm(U @ U.conj().T - np.eye(U.shape[0])))

    def modulus_defect(self, A) -> float:
        A = np.array([[float(x) for x in r] for r in A])
        return float(np.abs(np.abs(self.witness) ** 2 - A).max())


def read_doubly_stochastic(A: Sequence[Sequence]) -> Tuple[Tuple[Fraction, ...], ...]:
    rows = tuple(tuple(parse_rational(x) for x in r) for r in A)
    if len(rows) != 3 or any(len(r) != 3 for r in rows):
        raise NotDoublyStochasticError("expected a 3x3 matrix")
    for i, r in enumerate(rows):
        for j, x in enumerate(r):
            if x < 0:
                raise NotDoublyStochasticError(f"entry ({i},{j}) = {x} is negative")
        if sum(r) != 1:
            raise NotDoublyStochasticError(f"row {i} sums to {sum(r)}, not 1")
    for j in range(3):
        col = sum(rows[i][j] for i in range(3))
        if col != 1:
            raise NotDoublyStochasticError(f"column {j} sums to {col}, not 1")
    return rows


def _sqrt_le_sum(x: Fraction, y: Fraction, z: Fraction) -> bool:
    """√x ≤ √y + √z, decided exactly."""
    t = x - y - z
    return t <= 0 or t * t <= 4 * y * z


def triangle_ok(p: Sequence[Fraction]) -> bool:
    a, b, c = p
    return _sqrt_le_sum(a, b, c) and _sqrt_le_sum(b, a, c) and _sqrt_le_sum(c, a, b)


def _close_triangle(lengths):
    """Phases φ with Σ L_k e^{iφ_k} = 0 (φ_0 = 0)."""
    L0, L1, L2 = lengths
    if L0 > 0 and L1 > 0:
        cos_a = (L2 * L2 - L0 * L0 - L1 * L1) / (2 * L0 * L1)
        alpha = math.acos(max(-1.0, min(1.0, cos_a)))
    else:
        alpha = 0.0
    w = L0 + L1 * cmath.exp(1j * alpha)
    beta = cmath.phase(-w) if abs(w) > 0 else 0.0
    return (0.0, alpha, beta)


def _witness(A) -> np.ndarray:
    a = np.array([[float(x) for x in r] for r in A])
    u1 = np.sqrt(a[0]).astype(complex)
    lengths = [math.sqrt(float(A[0][k] * A[1][k])) for k in range(3)]
    phases = _close_triangle(lengths)
    u2 = np.sqrt(a[1]) * np.exp(1j * np.array(phases))
    # rows 0 and 1 are orthogonal: Σ u1_k conj(u2_k) = Σ L_k e^{-iφ_k} = conj(0)
    u3 = np.conj(np.cross(u1, u2))
    return np.vstack([u1, u2, u3])


def orthostochastic_test_3x3(A: Sequence[Sequence]) -> OrthostochasticVerdict:
    A = read_doubly_stochastic(A)
    for i, j in ((0, 1), (0, 2), (1, 2)):
        prods = tuple(A[i][k] * A[j][k] for k in range(3))
        if not triangle_ok(prods):
            return OrthostochasticVerdict(False, violation=RowPairViolation((i, j), prods))
    return OrthostochasticVerdict(True, witness=_witness(A))
