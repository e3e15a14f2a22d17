"""Vertex sets, the polygon they span, distances and the vanishing polynomial.

Everything here works over Gaussian rationals when the vertex set is exact.
Square roots are never taken on the exact path: distances are compared
through their squares, and the float distance is only reported.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Optional, Sequence, Union

from .gaussian import GaussianRational

Number = Union[GaussianRational, complex, float, int]


class GeometryError(ValueError):
    """A vertex set or point violates a geometric precondition."""


class ConvexityError(GeometryError):
    """Vertices are not in strictly convex position."""


class OutsidePolygonError(GeometryError):
    """A point lies outside conv X.

    ``edge`` holds the pair of vertex indices whose supporting line
    separates the point from the polygon (the point is strictly on the
    outer side).
    """

    def __init__(self, message, point=None, edge=None):
        super().__init__(message)
        self.point = point
        self.edge = edge


def cross(o, a, b):
    """Orientation of (o, a, b): twice the signed area, exact for exact input."""
    return (a.re - o.re) * (b.im - o.im) - (a.im - o.im) * (b.re - o.re)


def dot(u, v):
    return u.re * v.re + u.im * v.im


@dataclass(frozen=True)
class VertexSet:
    """The finite set X = {λ_1, ..., λ_N}, N ≥ 2, in the order given.

    ``exact`` vertex sets hold :class:`GaussianRational` values; float vertex
    sets hold ``complex`` and only support the diagnostic operations.
    """

    vertices: tuple
    exact: bool = True

    def __post_init__(self):
        if self.exact:
            vs = tuple(GaussianRational.coerce(v) for v in self.vertices)
        else:
            vs = tuple(complex(v) for v in self.vertices)
        object.__setattr__(self, "vertices", vs)
        if len(vs) < 2:
            raise GeometryError(f"a vertex set needs N >= 2 points, got {len(vs)}")
        if len(set(vs)) != len(vs):
            raise GeometryError("vertices must be pairwise distinct (delta > 0)")

    @classmethod
    def of(cls, *values) -> "VertexSet":
        return cls(tuple(values))

    @classmethod
    def from_floats(cls, values: Sequence[complex]) -> "VertexSet":
        return cls(tuple(complex(v) for v in values), exact=False)

    def __len__(self):
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def __getitem__(self, k):
        return self.vertices[k]

    @property
    def n(self) -> int:
        return len(self.vertices)

    def complex_vertices(self) -> list:
        return [complex(v) for v in self.vertices]

    def index(self, value) -> int:
        """Index of a vertex; raises if ``value`` is not in X."""
        for k, v in enumerate(self.vertices):
            if v == value:
                return k
        raise GeometryError(f"{value} is not a vertex of X")

    # scalar invariants

    @cached_property
    def delta2(self):
        """Squared minimum pairwise distance."""
        vs = self.vertices
        return min(
            _abs2(vs[i] - vs[j]) for i in range(len(vs)) for j in range(i + 1, len(vs))
        )

    @cached_property
    def delta(self) -> float:
        return math.sqrt(self.delta2)

    @cached_property
    def radius2(self):
        return max(_abs2(v) for v in self.vertices)

    @cached_property
    def radius(self) -> float:
        return math.sqrt(self.radius2)

    # polygon structure

    @cached_property
    def hull(self) -> tuple:
        """Vertex indices in counter-clockwise boundary order, starting at index 0.

        For N = 2 this is ``(0, 1)``. Raises :class:`ConvexityError` when some
        vertex is not an extreme point (interior or collinear on an edge).
        """
        self._require_exact("convex position")
        n = self.n
        if n == 2:
            return (0, 1)
        pts = self.vertices
        order = sorted(range(n), key=lambda k: (pts[k].re, pts[k].im))

        def half(seq):
            out = []
            for k in seq:
                while len(out) >= 2 and cross(pts[out[-2]], pts[out[-1]], pts[k]) <= 0:
                    out.pop()
                out.append(k)
            return out

        lower = half(order)
        upper = half(reversed(order))
        ring = lower[:-1] + upper[:-1]
        if len(ring) != n:
            missing = sorted(set(range(n)) - set(ring))
            raise ConvexityError(
                "vertices are not in convex position: "
                f"vertex index(es) {missing} are not extreme points of the polygon"
            )
        start = ring.index(0)
        return tuple(ring[start:] + ring[:start])

    def is_convex_position(self) -> bool:
        try:
            self.hull
        except ConvexityError:
            return False
        return True

    def contains(self, z: GaussianRational) -> bool:
        return self.separating_edge(z) is None

    def separating_edge(self, z: GaussianRational) -> Optional[tuple]:
        """Return ``None`` if z ∈ conv X, else a witness edge ``(i, j)``.

        For N = 2 the witness is ``(0, 1)`` and means that z is off the
        segment (either off its line or beyond an endpoint).
        """
        z = GaussianRational.coerce(z)
        h = self.hull
        pts = self.vertices
        if self.n == 2:
            a, b = pts
            if cross(a, b, z) != 0:
                return (0, 1)
            t = dot(z - a, b - a)
            if t < 0 or t > _abs2(b - a):
                return (0, 1)
            return None
        for i in range(len(h)):
            j = h[(i + 1) % len(h)]
            if cross(pts[h[i]], pts[j], z) < 0:
                return (h[i], j)
        return None

    def require_contains(self, z: GaussianRational):
        edge = self.separating_edge(z)
        if edge is not None:
            raise OutsidePolygonError(
                f"point {z} lies outside conv X; separated by the line through "
                f"vertices {edge[0]} and {edge[1]}",
                point=z,
                edge=edge,
            )

    def _require_exact(self, what: str):
        if not self.exact:
            raise GeometryError(f"{what} requires an exact (Gaussian-rational) vertex set")

    def to_json(self) -> dict:
        if self.exact:
            return {"vertices": [v.to_json() for v in self.vertices]}
        return {"vertices": [{"re": repr(v.real), "im": repr(v.imag)} for v in self.vertices]}


def _abs2(z):
    if isinstance(z, GaussianRational):
        return z.abs2()
    z = complex(z)
    return z.real * z.real + z.imag * z.imag


def _is_exact_pair(z, X: VertexSet) -> bool:
    return X.exact and isinstance(z, (GaussianRational, int, Fraction))


@dataclass(frozen=True)
class Distance:
    """Distance from a point to X.

    ``squared`` is exact (a Fraction) when both the point and X are exact.
    ``nearest`` is the lowest index attaining the minimum.
    """

    value: float
    squared: Union[Fraction, float]
    nearest: int


def distance_to_X(z: Number, X: VertexSet) -> Distance:
    if _is_exact_pair(z, X):
        z = GaussianRational.coerce(z)
        sq = [(z - v).abs2() for v in X.vertices]
    else:
        z = complex(z)
        sq = [_abs2(z - complex(v)) for v in X.vertices]
    best = min(range(len(sq)), key=lambda k: (sq[k], k))
    return Distance(math.sqrt(sq[best]), sq[best], best)


def vanishing_poly(z: Number, X: VertexSet):
    """f(z) = (z - λ_1)...(z - λ_N); exact when z and X are exact."""
    if _is_exact_pair(z, X):
        z = GaussianRational.coerce(z)
        out = GaussianRational(1)
        for v in X.vertices:
            out = out * (z - v)
        return out
    z = complex(z)
    out = 1 + 0j
    for v in X.vertices:
        out *= z - complex(v)
    return out


@dataclass(frozen=True)
class BoundCheck:
    lhs: float
    rhs: float
    holds: bool


@dataclass(frozen=True)
class PolyDistanceReport:
    """Outcome of the three inequalities linking |f(z)| and d(z, X).

    ``lower`` is |f(z)| ≥ d(z,X)(δ/2)^(N-1), applicable when d(z,X) ≤ δ/2;
    ``upper`` is |f(z)| ≤ d(z,X)(3R)^(N-1), applicable when |z| ≤ 2R;
    ``power`` is |f(z)| ≥ d(z,X)^N, always applicable.
    A ``None`` entry means the precondition failed.
    """

    abs_f: float
    distance: float
    lower: Optional[BoundCheck]
    upper: Optional[BoundCheck]
    power: BoundCheck

    @property
    def all_hold(self) -> bool:
        return all(c is None or c.holds for c in (self.lower, self.upper, self.power))


def check_poly_distance_bounds(z: Number, X: VertexSet) -> PolyDistanceReport:
    n = X.n
    dist = distance_to_X(z, X)
    fz = vanishing_poly(z, X)
    f2 = _abs2(fz)
    d2 = dist.squared
    z2 = _abs2(GaussianRational.coerce(z) if _is_exact_pair(z, X) else complex(z))
    abs_f = math.sqrt(f2)

    # Comparisons are made between squares, which is exact on the exact path.
    lower = None
    if 4 * d2 <= X.delta2:
        rhs2 = d2 * (X.delta2 / 4) ** (n - 1)
        lower = BoundCheck(abs_f, math.sqrt(rhs2), f2 >= rhs2)
    upper = None
    if z2 <= 4 * X.radius2:
        rhs2 = d2 * (9 * X.radius2) ** (n - 1)
        upper = BoundCheck(abs_f, math.sqrt(rhs2), f2 <= rhs2)
    rhs2 = d2**n
    power = BoundCheck(abs_f, math.sqrt(rhs2), f2 >= rhs2)
    return PolyDistanceReport(abs_f, dist.value, lower, upper, power)
