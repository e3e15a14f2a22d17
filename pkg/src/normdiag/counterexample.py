"""End-to-end cases tying the obstruction to projection diagonals.

``three_point_counterexample`` reproduces a sequence over X = {0, 1, i}
whose renormalized sum vanishes yet which is not the diagonal of any
normal operator with spectrum X of infinite multiplicity.
``kadison_classifier`` decides the two-point case X = {0, 1}.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from .gaussian import GaussianRational, gq
from .geometry import GeometryError, VertexSet
from .obstruction import Verdict, build_lattice, obstruction_verdict
from .orthostochastic import OrthostochasticVerdict, orthostochastic_test_3x3
from .sequences import SequenceError, TailedSequence
from .xdecomp import decompose

THREE_POINTS = VertexSet.of(0, 1, gq(0, 1))

# rows are the diagonals of three mutually orthogonal rank-one projections
NON_ORTHOSTOCHASTIC = (
    (Fraction(1, 2), Fraction(0), Fraction(1, 2)),
    (Fraction(0), Fraction(1, 2), Fraction(1, 2)),
    (Fraction(1, 2), Fraction(1, 2), Fraction(0)),
)


def three_point_sequence() -> TailedSequence:
    half = Fraction(1, 2)
    return TailedSequence(THREE_POINTS, (gq(half), gq(0, half), gq(half, half)), (0, 1, 2))


@dataclass(frozen=True)
class CounterexampleReport:
    verdict: str
    raw_sum: GaussianRational
    lattice_basis: Tuple[GaussianRational, ...]
    obstruction: Verdict
    certificate: Tuple[int, ...]
    real_diagonal: Tuple[Fraction, ...]
    imag_diagonal: Tuple[Fraction, ...]
    rest_diagonal: Tuple[Fraction, ...]
    ranks: Tuple[Fraction, ...]
    decomposition_unique: bool
    tail_is_01: bool
    matrix: Tuple[Tuple[Fraction, ...], ...]
    matches_reference_matrix: bool
    orthostochastic: OrthostochasticVerdict

    @property
    def realizable(self) -> bool:
        return self.verdict != "NOT_REALIZABLE"

    def to_json(self) -> dict:
        v = self.orthostochastic.violation
        return {
            "verdict": self.verdict,
            "raw_sum": str(self.raw_sum),
            "lattice_basis": [str(b) for b in self.lattice_basis],
            "obstruction_verdict": self.obstruction.value,
            "certificate": list(self.certificate),
            "block_diagonals": {
                "P": [str(x) for x in self.real_diagonal],
                "Q": [str(x) for x in self.imag_diagonal],
                "R": [str(x) for x in self.rest_diagonal],
            },
            "block_ranks": [str(x) for x in self.ranks],
            "matrix": [[str(x) for x in r] for r in self.matrix],
            "matches_reference_matrix": self.matches_reference_matrix,
            "orthostochastic": self.orthostochastic.orthostochastic,
            "violated_rows": None if v is None else list(v.rows),
            "row_products": None if v is None else [str(x) for x in v.products],
            "row_moduli": None if v is None else [str(x) for x in v.moduli],
        }


def three_point_counterexample() -> CounterexampleReport:
    """Show s(d) = 0 while the 3x3 block forced by d is not orthostochastic.

    Beyond the head every real and imaginary part of d is 0 or 1, so both
    spectral projections fix e_4, e_5, ... and restrict to the span of the
    first three basis vectors.  There their diagonals are the real parts,
    the imaginary parts and the remainder of the head; each sums to 1, so
    each block is rank one, and the three diagonals form a doubly
    stochastic matrix that would have to be |u_ij|² for a unitary.
    """
    d = three_point_sequence()
    X = d.vertices
    L = build_lattice(X)
    report = obstruction_verdict(d, L)
    s = report.sum

    p = tuple(a.re for a in d.head)
    q = tuple(a.im for a in d.head)
    r = tuple(1 - a - b for a, b in zip(p, q))
    # The weights on the vertices 1, i and 0 must coincide with p, q, r.
    dec = decompose(d)
    k0, k1, ki = X.index(0), X.index(1), X.index(gq(0, 1))
    if dec.column(k1) != p or dec.column(ki) != q or dec.column(k0) != r:
        raise AssertionError("decomposition disagrees with real/imaginary parts")
    tail_01 = all(
        v.re in (0, 1) and v.im in (0, 1) for v in (X[k] for k in d.tail)
    )
    ranks = (sum(p), sum(q), sum(r))
    A = (p, q, r)
    ortho = orthostochastic_test_3x3(A)
    verdict = "NOT_REALIZABLE" if (
        s.is_zero and not ortho.orthostochastic and all(x == 1 for x in ranks) and tail_01
    ) else "UNDECIDED"
    return CounterexampleReport(
        verdict=verdict,
        raw_sum=s.raw_sum,
        lattice_basis=L.basis,
        obstruction=report.verdict,
        certificate=s.certificate.nu if s.certificate else (),
        real_diagonal=p,
        imag_diagonal=q,
        rest_diagonal=r,
        ranks=ranks,
        # three affinely independent vertices: barycentric weights are unique
        decomposition_unique=X.n == 3,
        tail_is_01=tail_01,
        matrix=A,
        matches_reference_matrix=A == NON_ORTHOSTOCHASTIC,
        orthostochastic=ortho,
    )


class KadisonClass(str, enum.Enum):
    REALIZABLE = "REALIZABLE"
    NOT_REALIZABLE = "NOT_REALIZABLE"


@dataclass(frozen=True)
class KadisonReport:
    """a = Σ_{d_n ≤ 1/2} d_n, b = Σ_{d_n > 1/2} (1 - d_n) over the head."""

    a: Fraction
    b: Fraction
    classification: KadisonClass
    integer: Optional[int]
    defect: Optional[Fraction]
    obstruction: Verdict
    agrees: bool

    @property
    def difference(self) -> Fraction:
        return self.a - self.b


def kadison_classifier(seq: TailedSequence) -> KadisonReport:
    """Classify a diagonal over X = {0, 1} through a - b ∈ ℤ, cross-checked with s(d)."""
    X = seq.vertices
    if X.n != 2 or set(X.vertices) != {GaussianRational(0), GaussianRational(1)}:
        raise GeometryError("the two-point classifier needs X = {0, 1}")
    if seq.missing_vertices():
        raise SequenceError(
            "both 0 and 1 must occur in the tail so that Σ d_n and Σ (1 - d_n) diverge"
        )
    a = b = Fraction(0)
    for v in seq.head:
        x = v.re
        if x <= Fraction(1, 2):
            a += x
        else:
            b += 1 - x
    diff = a - b
    ok = diff.denominator == 1
    verdict = obstruction_verdict(seq).verdict
    agrees = ok == (verdict == Verdict.NOT_OBSTRUCTED_N2)
    return KadisonReport(
        a,
        b,
        KadisonClass.REALIZABLE if ok else KadisonClass.NOT_REALIZABLE,
        int(diff) if ok else None,
        None if ok else diff - math.floor(diff),
        verdict,
        agrees,
    )
