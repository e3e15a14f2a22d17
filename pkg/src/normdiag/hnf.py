"""Row-style Hermite normal form over the integers, with the unimodular transform."""

from __future__ import annotations

from typing import List, Sequence, Tuple

IntMatrix = List[List[int]]


def hermite_normal_form(rows: Sequence[Sequence[int]]) -> Tuple[IntMatrix, IntMatrix]:
    """Return ``(H, U)`` with ``U @ A == H``, U unimodular and H in row HNF.

    H is upper echelon: each nonzero row has a positive pivot strictly to
    the right of the previous row's pivot, entries above a pivot lie in
    ``[0, pivot)``, and zero rows come last.  This form is unique for the
    row lattice of A.
    """
    a = [list(map(int, r)) for r in rows]
    m = len(a)
    ncols = len(a[0]) if m else 0
    u = [[int(i == j) for j in range(m)] for i in range(m)]

    def sub(dst, src, q):
        if q:
            a[dst] = [x - q * y for x, y in zip(a[dst], a[src])]
            u[dst] = [x - q * y for x, y in zip(u[dst], u[src])]

    def swap(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    p = 0
    for col in range(ncols):
        if p == m:
            break
        while True:
            live = [r for r in range(p, m) if a[r][col] != 0]
            if not live:
                break
            piv = min(live, key=lambda r: abs(a[r][col]))
            swap(p, piv)
            if len(live) == 1:
                break
            for r in range(p + 1, m):
                if a[r][col]:
                    sub(r, p, a[r][col] // a[p][col])
        if a[p][col] == 0:
            continue
        if a[p][col] < 0:
            a[p] = [-x for x in a[p]]
            u[p] = [-x for x in u[p]]
        for r in range(p):
            sub(r, p, a[r][col] // a[p][col])
        p += 1
    return a, u


def pivots(h: Sequence[Sequence[int]]) -> List[int]:
    """Pivot column of each nonzero row of an echelon matrix."""
    out = []
    for row in h:
        for c, x in enumerate(row):
            if x:
                out.append(c)
                break
    return out


def matmul(a, b):
    return [[sum(x * y for x, y in zip(row, col)) for col in zip(*b)] for row in a]
