"""The difference lattice K_X, the quotient Γ_X = ℂ/K_X, and the renormalized sum.

For Gaussian-rational vertices K_X is a discrete subgroup of ℚ² of rank at
most 2.  It is stored through the integer Hermite normal form of the
generators λ_k - λ_1 after clearing a common denominator, together with the
transform back to generator coordinates, so that membership returns an
explicit integer certificate.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from .gaussian import GaussianRational
from .geometry import VertexSet
from .hnf import hermite_normal_form, pivots
from .sequences import SequenceError, TailedSequence, VertexAssignment, nearest_assignment


class MissingVertexError(SequenceError):
    """Some vertex never occurs in the tail, so its weight sequence has a finite sum."""

    def __init__(self, missing):
        self.missing = list(missing)
        super().__init__(
            "necessary condition violated: vertices "
            f"{self.missing} do not occur in the tail, so their weights cannot "
            "diverge as required for a diagonal of a normal operator with "
            "spectrum X of infinite multiplicity"
        )


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


@dataclass(frozen=True)
class Certificate:
    """Integers ν with Σν_k = 0 and Σν_k λ_k equal to the certified value."""

    nu: Tuple[int, ...]

    def value(self, X: VertexSet) -> GaussianRational:
        total = GaussianRational(0)
        for k, c in enumerate(self.nu):
            total = total + c * X[k]
        return total

    def is_sound(self, X: VertexSet, z) -> bool:
        return sum(self.nu) == 0 and self.value(X) == GaussianRational.coerce(z)


@dataclass(frozen=True)
class KxLattice:
    """HNF data for K_X.

    ``hnf`` holds the nonzero rows of the integer HNF of ``denominator``
    times the generators; ``basis`` is the same rows divided back by the
    denominator.  Row i of ``transform`` expresses ``hnf[i]`` as an integer
    combination of the scaled generators.
    """

    vertices: VertexSet
    generators: Tuple[Tuple[Fraction, Fraction], ...]
    denominator: int
    hnf: Tuple[Tuple[int, int], ...]
    transform: Tuple[Tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.hnf)

    @property
    def basis(self) -> Tuple[GaussianRational, ...]:
        return tuple(
            GaussianRational(Fraction(r[0], self.denominator), Fraction(r[1], self.denominator))
            for r in self.hnf
        )

    def _scaled(self, z: GaussianRational):
        w0 = z.re * self.denominator
        w1 = z.im * self.denominator
        return [w0, w1]

    def coordinates(self, z) -> Optional[Tuple[int, ...]]:
        """Integer HNF coordinates of z, or ``None`` when z ∉ K_X."""
        z = GaussianRational.coerce(z)
        r = self._scaled(z)
        if any(x.denominator != 1 for x in r):
            return None
        r = [int(x) for x in r]
        coords = []
        for row, p in zip(self.hnf, pivots(self.hnf)):
            if r[p] % row[p]:
                return None
            m = r[p] // row[p]
            coords.append(m)
            r = [x - m * y for x, y in zip(r, row)]
        if any(r):
            return None
        return tuple(coords)

    def verify(self) -> bool:
        """Both spans agree: generators expand over the basis and vice versa."""
        for g in self.generators:
            if self.coordinates(GaussianRational(*g)) is None:
                return False
        for row, t in zip(self.hnf, self.transform):
            s0 = sum(c * g[0] for c, g in zip(t, self.generators)) * self.denominator
            s1 = sum(c * g[1] for c, g in zip(t, self.generators)) * self.denominator
            if (s0, s1) != tuple(row):
                return False
        return True

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "basis": [b.to_json() for b in self.basis],
            "denominator": self.denominator,
        }


def build_lattice(X: VertexSet) -> KxLattice:
    X._require_exact("K_X")
    base = X[0]
    gens = tuple(((v - base).re, (v - base).im) for v in X.vertices[1:])
    den = 1
    for g in gens:
        den = _lcm(den, g[0].denominator)
        den = _lcm(den, g[1].denominator)
    rows = [[int(g[0] * den), int(g[1] * den)] for g in gens]
    h, u = hermite_normal_form(rows)
    rank = sum(1 for r in h if any(r))
    hnf = tuple(tuple(r) for r in h[:rank])
    transform = tuple(tuple(r) for r in u[:rank])
    # den is the least D with D*K_X inside Z^2, so (den, hnf) is canonical for K_X.
    return KxLattice(X, gens, den, hnf, transform)


def kx_membership(z, L: KxLattice) -> Optional[Certificate]:
    """Certificate ν for z ∈ K_X, or ``None``."""
    coords = L.coordinates(z)
    if coords is None:
        return None
    n_gen = len(L.generators)
    c = [0] * n_gen
    for m, row in zip(coords, L.transform):
        for k in range(n_gen):
            c[k] += m * row[k]
    return Certificate(tuple([-sum(c)] + c))


@dataclass(frozen=True)
class GammaElement:
    """A coset z + K_X, stored by its canonical representative.

    The representative has its coordinate along each HNF pivot reduced into
    ``[0, pivot)``; for a rank-1 lattice the other coordinate is left free.
    """

    representative: GaussianRational
    lattice: KxLattice

    @property
    def is_zero(self) -> bool:
        return self.representative == 0

    def __eq__(self, other):
        if not isinstance(other, GammaElement):
            return NotImplemented
        return (
            self.representative == other.representative
            and self.lattice.hnf == other.lattice.hnf
            and self.lattice.denominator == other.lattice.denominator
        )

    def __hash__(self):
        return hash((self.representative, self.lattice.hnf, self.lattice.denominator))


def reduce(z, L: KxLattice) -> GammaElement:
    z = GaussianRational.coerce(z)
    r = [z.re * L.denominator, z.im * L.denominator]
    for row, p in zip(L.hnf, pivots(L.hnf)):
        m = math.floor(r[p] / row[p])
        r = [x - m * y for x, y in zip(r, row)]
    rep = GaussianRational(r[0] / L.denominator, r[1] / L.denominator)
    return GammaElement(rep, L)


@dataclass(frozen=True)
class RenormalizedSum:
    raw_sum: GaussianRational
    element: GammaElement
    certificate: Optional[Certificate]
    assignment: VertexAssignment

    @property
    def is_zero(self) -> bool:
        return self.certificate is not None


def renormalized_sum(
    seq: TailedSequence,
    lattice: Optional[KxLattice] = None,
    assignment: Optional[VertexAssignment] = None,
) -> RenormalizedSum:
    """s(d) with the nearest assignment unless another one is supplied."""
    L = lattice if lattice is not None else build_lattice(seq.vertices)
    x = assignment if assignment is not None else nearest_assignment(seq)
    raw = x.raw_sum(seq)
    return RenormalizedSum(raw, reduce(raw, L), kx_membership(raw, L), x)


class Verdict(str, enum.Enum):
    OBSTRUCTED = "OBSTRUCTED"
    NOT_OBSTRUCTED_N2 = "NOT_OBSTRUCTED_N2"
    NECESSARY_PASSED = "NECESSARY_PASSED"


@dataclass(frozen=True)
class VerdictReport:
    verdict: Verdict
    sum: RenormalizedSum

    def to_json(self) -> dict:
        s = self.sum
        return {
            "verdict": self.verdict.value,
            "raw_sum": str(s.raw_sum),
            "representative": str(s.element.representative),
            "certificate": None if s.certificate is None else list(s.certificate.nu),
        }


def obstruction_verdict(seq: TailedSequence, lattice: Optional[KxLattice] = None) -> VerdictReport:
    """Decide what the renormalized sum says about ``seq`` being a diagonal.

    A nonzero s(d) rules the sequence out.  When s(d) = 0 the sequence is
    realizable for two-point X; for N ≥ 3 this is only a necessary condition.
    """
    X = seq.vertices
    X.hull  # convex position
    if not seq.in_polygon:
        raise SequenceError("the verdict needs every term in conv X")
    missing = seq.missing_vertices()
    if missing:
        raise MissingVertexError(missing)
    s = renormalized_sum(seq, lattice)
    if not s.is_zero:
        v = Verdict.OBSTRUCTED
    elif X.n == 2:
        v = Verdict.NOT_OBSTRUCTED_N2
    else:
        v = Verdict.NECESSARY_PASSED
    return VerdictReport(v, s)


def surjective_preimage(z, X: VertexSet) -> TailedSequence:
    """A Lim¹(X) sequence whose renormalized sum is the coset of z."""
    z = GaussianRational.coerce(z)
    return TailedSequence(X, (z + X[0],), tuple(range(X.n)), in_polygon=False)
