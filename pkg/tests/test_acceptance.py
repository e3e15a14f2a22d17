"""Acceptance criteria, one test each.  Every test prints a PASS/FAIL line.

Run ``pytest tests/test_acceptance.py -v`` or ``python tests/test_acceptance.py``.
"""

import math
import random
import sys
import time
from fractions import Fraction

import numpy as np
import pytest

from normdiag import Verdict, VertexSet, build_lattice, decompose, gq, simplex_constant
from normdiag.cli import RunConfig, cmd_verify_index
from normdiag.counterexample import NON_ORTHOSTOCHASTIC, kadison_classifier, three_point_counterexample
from normdiag.matrices import check_expectation_trace_identity, is_projection, random_projection
from normdiag.orthostochastic import orthostochastic_test_3x3
from normdiag.schur_horn import DiagonalObstruction, Realization, realize_diagonal_01
from normdiag.xdecomp import blended_decomposition, check_simplex_bound, verify_weight_summability

sys.path.insert(0, __file__.rsplit("/", 1)[0])
from strategies import random_01_sequence, random_quadrilateral, random_sequence, random_weights  # noqa: E402

TWO = VertexSet.of(0, 1)
THREE = VertexSet.of(0, 1, gq(0, 1))


def _report(capsys, number, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}"
    if capsys is None:
        print(line)
    else:
        with capsys.disabled():
            print("\n" + line)
    assert ok, line


def _polygons():
    rng = random.Random(2024)
    return [("{0,1}", TWO), ("{0,1,i}", THREE)] + [
        (f"quad{k}", random_quadrilateral(rng)) for k in range(10)
    ]


def test_criterion_1_counterexample(capsys):
    t0 = time.perf_counter()
    rep = three_point_counterexample()
    elapsed = time.perf_counter() - t0
    v = rep.orthostochastic.violation
    half = Fraction(1, 2)
    ok = (
        rep.raw_sum == gq(1, 1)
        and rep.certificate == (-2, 1, 1)
        and rep.lattice_basis == (gq(1), gq(0, 1))
        and rep.obstruction == Verdict.NECESSARY_PASSED
        and rep.matrix == NON_ORTHOSTOCHASTIC
        and not rep.orthostochastic.orthostochastic
        and v.rows == (0, 1)
        and v.moduli == (0, 0, half)
        and rep.verdict == "NOT_REALIZABLE"
        and elapsed < 1.0
    )
    _report(capsys, 1, ok, f"raw sum {rep.raw_sum}, s=0 via {rep.certificate}, rows {v.rows} "
            f"moduli {tuple(str(x) for x in v.moduli)}, {elapsed * 1000:.1f} ms")


def test_criterion_2_lattice_bases(capsys):
    b2 = build_lattice(TWO).basis
    b3 = build_lattice(THREE).basis
    ok = b2 == (gq(1),) and b3 == (gq(1), gq(0, 1))
    _report(capsys, 2, ok, f"K_{{0,1}} basis {[str(b) for b in b2]}, K_{{0,1,i}} basis {[str(b) for b in b3]}")


def test_criterion_3_kadison_agreement(capsys):
    rng = random.Random(3)
    t0 = time.perf_counter()
    agree = realizable = 0
    for _ in range(1000):
        rep = kadison_classifier(random_01_sequence(rng))
        agree += rep.agrees
        realizable += rep.integer is not None
    elapsed = time.perf_counter() - t0
    ok = agree == 1000 and elapsed < 10 and 0 < realizable < 1000
    _report(capsys, 3, ok, f"{agree}/1000 agree ({realizable} realizable), {elapsed:.2f} s")


def test_criterion_4_pair_index(capsys):
    t0 = time.perf_counter()
    counts = {}
    for n in (4, 8, 16, 40):
        out, _ = cmd_verify_index(RunConfig("verify-index", n=n, trials=1000, seed=4, tol=1e-6))
        counts[n] = out["passed"]
    elapsed = time.perf_counter() - t0
    ok = all(c == 1000 for c in counts.values()) and elapsed < 60
    _report(capsys, 4, ok, f"passed per n {counts}, {elapsed:.2f} s")


def test_criterion_5_trace_identity(capsys):
    rng = random.Random(5)
    exact_ok = 0
    for _ in range(100):
        n = rng.randint(1, 12)
        d = [Fraction(rng.randint(0, 8), 8) for _ in range(n - 1)]
        last = math.ceil(sum(d)) - sum(d)
        if last > 1:
            d[0] = Fraction(0)
            last = math.ceil(sum(d)) - sum(d)
        res = realize_diagonal_01(d + [last])
        rep = check_expectation_trace_identity(res.projection)
        exact_ok += rep.exact and rep.difference == 0
    gen = np.random.default_rng(5)
    worst = 0.0
    float_ok = 0
    for _ in range(1000):
        n = int(gen.integers(1, 31))
        rep = check_expectation_trace_identity(random_projection(n, int(gen.integers(0, n + 1)), gen))
        worst = max(worst, abs(rep.difference))
        float_ok += abs(rep.difference) <= 1e-9
    ok = exact_ok == 100 and float_ok == 1000
    _report(capsys, 5, ok, f"exact {exact_ok}/100 zero, float {float_ok}/1000 (max |diff| {worst:.1e})")


def _simplex_samples(rng, n, count):
    for s in range(count):
        if s % 2:
            t = list(random_weights(rng, n, 1000))
        else:
            # near a corner, where the bound is tightest
            k = rng.randrange(n)
            eps = Fraction(1, rng.choice([10, 100, 10**4, 10**6]))
            w = random_weights(rng, n, 50)
            t = [(1 - eps) * (j == k) + eps * w[j] for j in range(n)]
        yield tuple(t)


def test_criterion_6_simplex_constant(capsys):
    rng = random.Random(6)
    results = []
    for name, X in _polygons():
        C = simplex_constant(X)
        passed = sum(check_simplex_bound(t, X, C) for t in _simplex_samples(rng, X.n, 10_000))
        results.append((name, passed, C.value))
    c2 = simplex_constant(TWO).exact
    ok = all(p == 10_000 for _, p, _ in results) and c2 == 2
    worst = min(p for _, p, _ in results)
    _report(capsys, 6, ok, f"{len(results)} vertex sets, min passes {worst}/10000, C{{0,1}} = {c2}")


def test_criterion_7_weight_summability(capsys):
    rng = random.Random(7)
    total = good = 0
    for name, X in _polygons():
        C = simplex_constant(X)
        for _ in range(100):
            seq = random_sequence(rng, X)
            decs = [decompose(seq, apex) for apex in range(X.n)]
            decs.append(blended_decomposition(seq, [random_weights(rng, X.n, 7) for _ in seq.head]))
            for dec in decs:
                total += 1
                good += dec.is_valid() and all(verify_weight_summability(dec, C).sums_exact)
    ok = good == total
    _report(capsys, 7, ok, f"{good}/{total} decompositions satisfy the summed bound exactly")


def test_criterion_8_realizer(capsys):
    rng = random.Random(8)
    proj_ok = obs_ok = 0
    for _ in range(500):
        n = rng.randint(1, 12)
        while True:
            d = [Fraction(rng.randint(0, 10), 10) for _ in range(n - 1)]
            last = math.ceil(sum(d)) - sum(d)
            if last <= 1:
                break
        d.append(last)
        res = realize_diagonal_01(d)
        P = res.projection
        proj_ok += isinstance(res, Realization) and is_projection(P) and P.diagonal() == d and P.trace() == sum(d)
    for _ in range(500):
        n = rng.randint(1, 12)
        while True:
            d = [Fraction(rng.randint(0, 12), 12) for _ in range(n)]
            if sum(d).denominator != 1:
                break
        res = realize_diagonal_01(d)
        obs_ok += isinstance(res, DiagonalObstruction) and res.defect == sum(d) - math.floor(sum(d))
    ok = proj_ok == 500 and obs_ok == 500
    _report(capsys, 8, ok, f"{proj_ok}/500 exact projections, {obs_ok}/500 obstructions")


def test_criterion_9_orthostochastic(capsys):
    I3 = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    J = [[Fraction(1, 3)] * 3 for _ in range(3)]
    defects = []
    accepted = True
    for A in (I3, J):
        v = orthostochastic_test_3x3(A)
        accepted &= v.orthostochastic
        if v.orthostochastic:
            defects.append(max(v.unitarity_defect(), v.modulus_defect(A)))
    rejected = orthostochastic_test_3x3(NON_ORTHOSTOCHASTIC)
    ok = accepted and all(x <= 1e-10 for x in defects) and not rejected.orthostochastic
    _report(capsys, 9, ok, f"identity and 1/3-matrix accepted (max defect {max(defects, default=float('nan')):.1e}), "
            f"rejected matrix rows {rejected.violation.rows if rejected.violation else None}")


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn(None)
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
