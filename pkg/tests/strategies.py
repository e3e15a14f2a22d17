"""Random generators and hypothesis strategies shared by the test modules."""

import random
from fractions import Fraction

from hypothesis import strategies as st

from normdiag import GaussianRational, TailedSequence, VertexSet, gq

UNIT_SQUARE = VertexSet.of(0, 1, gq(1, 1), gq(0, 1))
THREE = VertexSet.of(0, 1, gq(0, 1))
TWO = VertexSet.of(0, 1)


def circle_point(t: Fraction) -> GaussianRational:
    # rational points on the unit circle
    den = 1 + t * t
    return GaussianRational((1 - t * t) / den, 2 * t / den)


def random_quadrilateral(rng: random.Random) -> VertexSet:
    """Four rational points on the unit circle, listed in a shuffled order."""
    ts = set()
    while len(ts) < 4:
        ts.add(Fraction(rng.randint(-40, 40), rng.randint(1, 12)))
    pts = [circle_point(t) for t in ts]
    rng.shuffle(pts)
    return VertexSet(tuple(pts))


def random_weights(rng: random.Random, n: int, den: int = 12) -> tuple:
    raw = [rng.randint(0, den) for _ in range(n)]
    if not any(raw):
        raw[rng.randrange(n)] = 1
    s = sum(raw)
    return tuple(Fraction(r, s) for r in raw)


def random_point(rng: random.Random, X: VertexSet, den: int = 12) -> GaussianRational:
    w = random_weights(rng, X.n, den)
    total = GaussianRational(0)
    for c, v in zip(w, X.vertices):
        total = total + c * v
    return total


def random_sequence(rng: random.Random, X: VertexSet, max_head: int = 8, den: int = 12) -> TailedSequence:
    head = tuple(random_point(rng, X, den) for _ in range(rng.randint(0, max_head)))
    tail = list(range(X.n)) + [rng.randrange(X.n) for _ in range(rng.randint(0, 3))]
    rng.shuffle(tail)
    return TailedSequence(X, head, tuple(tail))


def random_01_sequence(rng: random.Random, max_head: int = 10) -> TailedSequence:
    """Sequences over {0, 1} with a mix of integer and non-integer a - b."""
    head = []
    for _ in range(rng.randint(0, max_head)):
        if rng.random() < 0.5:
            head.append(gq(rng.choice([Fraction(1, 2), Fraction(1, 2), Fraction(1, 4), Fraction(3, 4)])))
        else:
            head.append(gq(Fraction(rng.randint(0, 12), 12)))
    tail = [0, 1] if rng.random() < 0.5 else [1, 0, 0]
    return TailedSequence(TWO, tuple(head), tuple(tail))


rationals = st.fractions(min_value=-4, max_value=4, max_denominator=24)
gaussians = st.builds(GaussianRational, rationals, rationals)
unit_rationals = st.fractions(min_value=0, max_value=1, max_denominator=24)
