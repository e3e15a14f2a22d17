"""Barycentric decompositions of polygon-valued sequences and the simplex constant.

The constant C bounds the ℓ¹ distance from a simplex point t to the nearest
corner by C times the Euclidean distance from x(t) = Σ t_k λ_k to X.  All
comparisons here are exact: C is kept through its square, which is rational.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from .gaussian import GaussianRational
from .geometry import ConvexityError, VertexSet, cross, distance_to_X, dot
from .sequences import TailedSequence


def exact_sqrt(q: Fraction) -> Optional[Fraction]:
    """√q when it is rational, else ``None``."""
    q = Fraction(q)
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def sqrt_lower(q: Fraction, bits: int = 64) -> Fraction:
    """A rational r with r ≤ √q, equal to √q whenever that is rational."""
    r = exact_sqrt(q)
    if r is not None:
        return r
    q = Fraction(q)
    n, d = q.numerator, q.denominator
    return Fraction(math.isqrt(n * d << (2 * bits)), d << bits)


def _fan(X: VertexSet, apex: int) -> tuple:
    h = list(X.hull)
    s = h.index(apex)
    return tuple(h[s:] + h[:s])


def barycentric(point, X: VertexSet, apex: int = 0) -> Tuple[Fraction, ...]:
    """Nonnegative rational weights on X summing to 1 that reproduce ``point``.

    The polygon is fanned from vertex ``apex`` along the counter-clockwise
    boundary; the first fan triangle containing the point is used, so at most
    three weights are nonzero.  Points outside conv X raise
    :class:`~normdiag.geometry.OutsidePolygonError`.
    """
    z = GaussianRational.coerce(point)
    X.require_contains(z)
    n = X.n
    w = [Fraction(0)] * n
    if n == 2:
        a, b = X.vertices
        t = dot(z - a, b - a) / (b - a).abs2()
        w[0], w[1] = 1 - t, t
        return tuple(w)
    ring = _fan(X, apex)
    A = X[ring[0]]
    for j in range(1, n - 1):
        B, C = X[ring[j]], X[ring[j + 1]]
        det = cross(A, B, C)
        s = cross(A, z, C) / det
        t = cross(A, B, z) / det
        if s >= 0 and t >= 0 and s + t <= 1:
            w[ring[0]] = 1 - s - t
            w[ring[j]] = s
            w[ring[j + 1]] = t
            return tuple(w)
    raise AssertionError("point in polygon but in no fan triangle")  # unreachable


@dataclass(frozen=True)
class XDecomposition:
    """Weights e_k(n) for the head; tail terms carry indicator weights."""

    sequence: TailedSequence
    head_weights: Tuple[Tuple[Fraction, ...], ...]

    def row(self, n: int) -> Tuple[Fraction, ...]:
        if n < self.sequence.head_length:
            return self.head_weights[n]
        k = self.sequence.tail_index(n)
        return tuple(Fraction(int(j == k)) for j in range(self.sequence.vertices.n))

    def column(self, k: int) -> Tuple[Fraction, ...]:
        """Head values of the weight sequence e_k."""
        return tuple(r[k] for r in self.head_weights)

    def is_valid(self) -> bool:
        X = self.sequence.vertices
        for a, r in zip(self.sequence.head, self.head_weights):
            if len(r) != X.n or any(x < 0 for x in r) or sum(r) != 1:
                return False
            if reconstruct(r, X) != a:
                return False
        return True


def reconstruct(weights: Sequence[Fraction], X: VertexSet) -> GaussianRational:
    total = GaussianRational(0)
    for w, v in zip(weights, X.vertices):
        total = total + w * v
    return total


def decompose(seq: TailedSequence, apex: int = 0) -> XDecomposition:
    X = seq.vertices
    return XDecomposition(seq, tuple(barycentric(a, X, apex) for a in seq.head))


def blended_decomposition(seq: TailedSequence, mix: Sequence[Sequence[Fraction]]) -> XDecomposition:
    """Per head term, a convex combination of the fan decompositions from every apex.

    ``mix[n]`` gives N nonnegative rationals summing to 1.  For N ≥ 4 this
    produces decompositions different from :func:`decompose`.
    """
    X = seq.vertices
    rows = []
    for a, lam in zip(seq.head, mix):
        acc = [Fraction(0)] * X.n
        for apex, c in enumerate(lam):
            if c:
                for k, w in enumerate(barycentric(a, X, apex)):
                    acc[k] += c * w
        rows.append(tuple(acc))
    return XDecomposition(seq, tuple(rows))


@dataclass(frozen=True)
class SimplexConstant:
    """Per-vertex constants C_k (kept exactly through C_k²) and C = max C_k.

    ``functionals[k]`` is the vector u with f_k(v) = <u, v> positive on every
    λ_j - λ_k; ``methods[k]`` records whether it came from the centroid
    direction or the edge-normal construction.
    """

    functionals: Tuple[Tuple[Fraction, Fraction], ...]
    methods: Tuple[str, ...]
    squares: Tuple[Fraction, ...]

    @property
    def per_vertex(self) -> Tuple[float, ...]:
        return tuple(math.sqrt(s) for s in self.squares)

    @property
    def square(self) -> Fraction:
        return max(self.squares)

    @property
    def value(self) -> float:
        return math.sqrt(self.square)

    @property
    def exact(self) -> Optional[Fraction]:
        return exact_sqrt(self.square)


def _functional(X: VertexSet, k: int):
    others = [X[j] - X[k] for j in range(X.n) if j != k]
    n_o = len(others)
    u = GaussianRational(sum((o.re for o in others), Fraction(0)) / n_o,
                         sum((o.im for o in others), Fraction(0)) / n_o)
    if all(dot(u, o) > 0 for o in others):
        return u, "centroid"
    # Sum of the inward normals of the two edges at λ_k; positive on the
    # whole tangent cone for a strictly convex vertex.
    ring = X.hull
    i = ring.index(k)
    e1 = X[ring[i - 1]] - X[k]
    e2 = X[ring[(i + 1) % len(ring)]] - X[k]
    n1 = GaussianRational(-e1.im, e1.re)
    if dot(n1, e2) < 0:
        n1 = -n1
    n2 = GaussianRational(-e2.im, e2.re)
    if dot(n2, e1) < 0:
        n2 = -n2
    u = n1 + n2
    if not all(dot(u, o) > 0 for o in others):
        raise ConvexityError(f"no supporting functional isolates vertex {k}")
    return u, "edge-normals"


def simplex_constant(X: VertexSet) -> SimplexConstant:
    X.hull  # raises ConvexityError unless X is in convex position
    funcs, methods, squares = [], [], []
    for k in range(X.n):
        u, how = _functional(X, k)
        m = min(dot(u, X[j] - X[k]) for j in range(X.n) if j != k)
        funcs.append((u.re, u.im))
        methods.append(how)
        squares.append(4 * u.abs2() / (m * m))
    return SimplexConstant(tuple(funcs), tuple(methods), tuple(squares))


def corner_distance(t: Sequence[Fraction]) -> Fraction:
    """ℓ¹ distance from a simplex point to its nearest corner: 2(1 - max t)."""
    return 2 * (1 - max(t))


def check_simplex_bound(t: Sequence[Fraction], X: VertexSet, C: SimplexConstant) -> bool:
    """Exact test of d(t, corners)₁ ≤ C·d(x(t), X)."""
    lhs = corner_distance(t)
    d2 = distance_to_X(reconstruct(t, X), X).squared
    return lhs * lhs <= C.square * d2


@dataclass(frozen=True)
class WeightSummabilityReport:
    """Per-vertex head sums of d(e_k(n), {0,1}) against C·Σ d(a_n, X).

    ``termwise`` is True when, for every head term and every k,
    d(e_k(n),{0,1}) ≤ d(t_n, corners) ≤ C·d(a_n, X) holds exactly.
    ``sums_exact`` is the summed inequality decided exactly for each k.
    """

    weight_sums: Tuple[Fraction, ...]
    distance_sum: float
    bound: float
    termwise: bool
    sums_exact: Tuple[bool, ...]

    @property
    def holds(self) -> bool:
        return self.termwise and all(self.sums_exact)


def verify_weight_summability(dec: XDecomposition, C: Optional[SimplexConstant] = None) -> WeightSummabilityReport:
    seq = dec.sequence
    X = seq.vertices
    C = C if C is not None else simplex_constant(X)
    n_v = X.n
    sums = [Fraction(0)] * n_v
    lower_total = Fraction(0)
    dist_total = 0.0
    termwise = True
    for a, t in zip(seq.head, dec.head_weights):
        q = distance_to_X(a, X).squared
        b = corner_distance(t)
        if b * b > C.square * q:
            termwise = False
        for k in range(n_v):
            e = min(t[k], 1 - t[k])
            if e > b:
                termwise = False
            sums[k] += e
        lower_total += sqrt_lower(C.square * q)
        dist_total += math.sqrt(q)
    # Σ_k-sum ≤ Σ_n (rational lower bound of C·d(a_n,X)) proves the summed bound;
    # otherwise the termwise chain (if it holds) implies it.
    sums_exact = tuple(s <= lower_total or termwise for s in sums)
    return WeightSummabilityReport(tuple(sums), dist_total, C.value * dist_total, termwise, sums_exact)
