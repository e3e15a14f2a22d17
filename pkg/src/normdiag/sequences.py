"""Tailed sequences, vertex assignments and Lim¹(X) diagnostics.

A :class:`TailedSequence` is a finite head of points followed by a periodic
pattern of vertex indices repeated forever.  Tail terms sit exactly on X, so
they contribute nothing to any of the sums computed here, while each vertex
that occurs in the pattern occurs infinitely often.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

from .gaussian import GaussianRational
from .geometry import GeometryError, VertexSet, distance_to_X, vanishing_poly


class SequenceError(GeometryError):
    pass


@dataclass(frozen=True)
class TailedSequence:
    """head + (tail pattern)^∞ over a vertex set.

    With ``in_polygon=True`` (the default) every head value must lie in
    conv X, which is the first necessary condition for being a diagonal.
    Turning it off gives a general Lim¹(X) element.
    """

    vertices: VertexSet
    head: tuple
    tail: tuple
    in_polygon: bool = True

    def __post_init__(self):
        X = self.vertices
        X._require_exact("a tailed sequence")
        head = tuple(GaussianRational.coerce(a) for a in self.head)
        tail = tuple(int(k) for k in self.tail)
        object.__setattr__(self, "head", head)
        object.__setattr__(self, "tail", tail)
        if not tail:
            raise SequenceError("the tail pattern must be nonempty")
        for k in tail:
            if not 0 <= k < X.n:
                raise SequenceError(f"tail entry {k} is not a vertex index of X (N={X.n})")
        if self.in_polygon:
            for n, a in enumerate(head):
                edge = X.separating_edge(a)
                if edge is not None:
                    raise SequenceError(
                        f"head[{n}] = {a} is not in conv X "
                        f"(outside the line through vertices {edge[0]} and {edge[1]})"
                    )

    @property
    def head_length(self) -> int:
        return len(self.head)

    def term(self, n: int) -> GaussianRational:
        """The n-th term (0-based)."""
        if n < len(self.head):
            return self.head[n]
        return self.vertices[self.tail_index(n)]

    def tail_index(self, n: int) -> int:
        if n < len(self.head):
            raise IndexError(f"position {n} lies in the head")
        return self.tail[(n - len(self.head)) % len(self.tail)]

    def prefix(self, count: int) -> list:
        return [self.term(n) for n in range(count)]

    def vertices_in_tail(self) -> tuple:
        """Per-vertex flag: does λ_k occur (infinitely often) in the tail?"""
        present = set(self.tail)
        return tuple(k in present for k in range(self.vertices.n))

    def missing_vertices(self) -> list:
        return [k for k, ok in enumerate(self.vertices_in_tail()) if not ok]

    def to_json(self) -> dict:
        return {"head": [a.to_json() for a in self.head], "tail": list(self.tail)}


@dataclass(frozen=True)
class VertexAssignment:
    """A choice x_n ∈ X for every term with finite ℓ¹ deviation.

    ``head`` gives indices for the head terms.  Tail positions map to their
    own vertex except for the finitely many absolute positions listed in
    ``overrides``.
    """

    head: tuple
    overrides: Mapping[int, int] = field(default_factory=dict)

    def index_at(self, seq: TailedSequence, n: int) -> int:
        if n < seq.head_length:
            return self.head[n]
        return self.overrides.get(n, seq.tail_index(n))

    def deviation_terms(self, seq: TailedSequence) -> list:
        """The finitely many nonzero terms a_n - x_n, with their positions."""
        X = seq.vertices
        out = []
        for n, a in enumerate(seq.head):
            out.append((n, a - X[self.head[n]]))
        for n, k in sorted(self.overrides.items()):
            if n < seq.head_length:
                raise SequenceError(f"override position {n} lies in the head")
            out.append((n, X[seq.tail_index(n)] - X[k]))
        return out

    def raw_sum(self, seq: TailedSequence) -> GaussianRational:
        total = GaussianRational(0)
        for _, term in self.deviation_terms(seq):
            total = total + term
        return total


def nearest_assignment(seq: TailedSequence) -> VertexAssignment:
    """Nearest vertex per head term; ties go to the lowest index."""
    X = seq.vertices
    return VertexAssignment(tuple(distance_to_X(a, X).nearest for a in seq.head))


@dataclass(frozen=True)
class Lim1Diagnostic:
    """Partial sums of d(a_n, X) and |f(a_n)| with the sandwich bounds.

    ``lower_*`` concerns terms with d(a_n, X) ≤ δ/2, where
    Σ|f(a_n)| ≥ (δ/2)^(N-1) Σ d(a_n, X); ``upper_*`` concerns terms with
    |a_n| ≤ 2R, where Σ|f(a_n)| ≤ (3R)^(N-1) Σ d(a_n, X).
    """

    count: int
    sum_distance: float
    sum_abs_f: float
    lower_count: int
    lower_sum_f: float
    lower_bound: float
    upper_count: int
    upper_sum_f: float
    upper_bound: float

    @property
    def lower_holds(self) -> bool:
        return self.lower_sum_f >= self.lower_bound * (1 - 1e-12)

    @property
    def upper_holds(self) -> bool:
        return self.upper_sum_f <= self.upper_bound * (1 + 1e-12)


def lim1_diagnostic(values: Iterable, X: VertexSet) -> Lim1Diagnostic:
    """Summability diagnostic for a finite list of samples (float arithmetic)."""
    n_vert = X.n
    half_delta = X.delta / 2
    two_r = 2 * X.radius
    count = 0
    sum_d = sum_f = 0.0
    lo_n = up_n = 0
    lo_f = lo_d = up_f = up_d = 0.0
    for a in values:
        count += 1
        d = distance_to_X(a, X).value
        f = abs(complex(vanishing_poly(a, X)))
        sum_d += d
        sum_f += f
        if d <= half_delta:
            lo_n += 1
            lo_f += f
            lo_d += d
        if abs(complex(a)) <= two_r:
            up_n += 1
            up_f += f
            up_d += d
    return Lim1Diagnostic(
        count,
        sum_d,
        sum_f,
        lo_n,
        lo_f,
        lo_d * half_delta ** (n_vert - 1),
        up_n,
        up_f,
        up_d * (3 * X.radius) ** (n_vert - 1),
    )


def all_vertex_sequence(X: VertexSet, tail: Optional[Sequence[int]] = None) -> TailedSequence:
    """Empty head, tail cycling through every vertex."""
    return TailedSequence(X, (), tuple(range(X.n)) if tail is None else tuple(tail))
