"""Small dense matrices, exact or float, and the finite-dimensional projection identities.

Float matrices are plain ``numpy`` complex arrays.  Exact matrices use
:class:`ExactMatrix`, whose entries are any exact scalar supporting ``+``,
``*`` and ``conjugate()`` (Fractions, Gaussian rationals, surds).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

FLOAT_TOL = 1e-10
RANK_CUTOFF = 1e-8
RANK_AMBIGUOUS = 1e-6


class MatrixError(ValueError):
    pass


class ExactMatrix:
    """Immutable matrix of exact scalars."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        rows = tuple(tuple(r) for r in rows)
        if rows and len({len(r) for r in rows}) != 1:
            raise MatrixError("ragged matrix")
        self.rows = rows

    @classmethod
    def zeros(cls, n, m=None, zero=0):
        m = n if m is None else m
        return cls([[zero] * m for _ in range(n)])

    @classmethod
    def identity(cls, n, one=1, zero=0):
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def diagonal_matrix(cls, values, zero=0):
        n = len(values)
        return cls([[values[i] if i == j else zero for j in range(n)] for i in range(n)])

    @property
    def shape(self):
        return (len(self.rows), len(self.rows[0]) if self.rows else 0)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and all(
            a == b for r, s in zip(self.rows, other.rows) for a, b in zip(r, s)
        )

    __hash__ = None

    def __add__(self, other):
        return ExactMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other):
        return ExactMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __matmul__(self, other):
        cols = list(zip(*other.rows))
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                acc = 0
                for a, b in zip(r, c):
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return ExactMatrix(out)

    def adjoint(self) -> "ExactMatrix":
        return ExactMatrix([[_conj(a) for a in col] for col in zip(*self.rows)])

    def diagonal(self) -> list:
        return [self.rows[i][i] for i in range(min(self.shape))]

    def trace(self):
        acc = 0
        for x in self.diagonal():
            acc = acc + x
        return acc

    def is_zero(self) -> bool:
        return not any(a for r in self.rows for a in r)

    def to_numpy(self) -> np.ndarray:
        return np.array([[complex(a) for a in r] for r in self.rows], dtype=complex)

    def __repr__(self):
        return "ExactMatrix(" + repr([[str(a) for a in r] for r in self.rows]) + ")"


def _conj(a):
    return a.conjugate() if hasattr(a, "conjugate") else a


Matrix = Union[np.ndarray, ExactMatrix]


def is_exact(A) -> bool:
    return isinstance(A, ExactMatrix)


def _square(A):
    n, m = A.shape
    if n != m:
        raise MatrixError(f"expected a square matrix, got {n}x{m}")
    return n


def trace_of_product(A: ExactMatrix, B: ExactMatrix):
    """trace(AB) without forming AB."""
    acc = 0
    n, m = A.shape
    for i in range(n):
        for k in range(m):
            a, b = A.rows[i][k], B.rows[k][i]
            if a and b:
                acc = acc + a * b
    return acc


def is_projection(P: Matrix, tol: float = FLOAT_TOL) -> bool:
    """P² = P = P*; exact for ExactMatrix, Frobenius tolerance for arrays."""
    _square(P)
    if is_exact(P):
        return P == P.adjoint() and (P @ P) == P
    P = np.asarray(P, dtype=complex)
    return (
        np.linalg.norm(P @ P - P) <= tol and np.linalg.norm(P - P.conj().T) <= tol
    )


def conditional_expectation(A: Matrix) -> Matrix:
    """Keep the diagonal, zero everything else."""
    n = _square(A)
    if is_exact(A):
        return ExactMatrix([[A.rows[i][i] if i == j else 0 for j in range(n)] for i in range(n)])
    A = np.asarray(A)
    return np.diag(np.diag(A))


@dataclass(frozen=True)
class TraceIdentityReport:
    """trace((P - E(P))²) against trace(E(P) - E(P)²)."""

    lhs: object
    rhs: object
    difference: object
    exact: bool

    @property
    def holds(self) -> bool:
        if self.exact:
            return self.difference == 0
        return abs(self.difference) <= 1e-9


def check_expectation_trace_identity(P: Matrix, validate: bool = True) -> TraceIdentityReport:
    if validate and not is_projection(P):
        raise MatrixError("check_expectation_trace_identity needs a projection (P^2 = P = P*)")
    E = conditional_expectation(P)
    if is_exact(P):
        M = P - E
        lhs = trace_of_product(M, M)
        rhs = 0
        for d in E.diagonal():
            rhs = rhs + (d - d * d)
        return TraceIdentityReport(lhs, rhs, lhs - rhs, True)
    P = np.asarray(P, dtype=complex)
    M = P - E
    lhs = np.trace(M @ M)
    d = np.diag(E)
    rhs = np.sum(d - d * d)
    return TraceIdentityReport(complex(lhs), complex(rhs), complex(lhs - rhs), False)


# float linear algebra


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary via QR of a complex Ginibre matrix."""
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def projection_onto(columns: np.ndarray) -> np.ndarray:
    """Orthogonal projection onto the span of orthonormal columns."""
    if columns.shape[1] == 0:
        return np.zeros((columns.shape[0],) * 2, dtype=complex)
    return columns @ columns.conj().T


def random_projection(n: int, rank: int, rng: np.random.Generator) -> np.ndarray:
    return projection_onto(random_unitary(n, rng)[:, :rank])


@dataclass(frozen=True)
class KernelDim:
    dim: int
    indeterminate: bool
    gap: float


def kernel_dimension(
    A: np.ndarray,
    cutoff: float = RANK_CUTOFF,
    ambiguous: float = RANK_AMBIGUOUS,
    floor: float = 1.0,
) -> KernelDim:
    """dim ker A from singular values relative to s = max(‖A‖₂, floor).

    Singular values below ``cutoff·s`` count as zero; any value in
    ``[cutoff, ambiguous)·s`` makes the answer indeterminate.  The floor
    keeps a matrix made only of rounding noise (e.g. 1 - P with P = 1)
    from being read as full rank.
    """
    A = np.asarray(A)
    n_cols = A.shape[1]
    if A.size == 0:
        return KernelDim(n_cols, False, np.inf)
    s = np.linalg.svd(A, compute_uv=False)
    scale = max(float(s[0]) if s.size else 0.0, floor)
    rel = np.concatenate([s / scale, np.zeros(n_cols - s.size)])
    zero = rel < cutoff
    band = (rel >= cutoff) & (rel < ambiguous)
    nonzero = rel[~zero]
    gap = float(nonzero.min()) if nonzero.size else np.inf
    return KernelDim(int(zero.sum()), bool(band.any()), gap)


@dataclass(frozen=True)
class PairIndexReport:
    """Index data for a pair of projections P (onto M) and Q (onto N)."""

    trace: float
    dim_m_cap_nperp: int
    dim_n_cap_mperp: int
    indeterminate: bool
    tol: float = 1e-6

    @property
    def nearest_integer(self) -> int:
        return int(round(self.trace))

    @property
    def integer_ok(self) -> bool:
        return abs(self.trace - round(self.trace)) <= self.tol

    @property
    def identity_ok(self) -> bool:
        return abs(self.trace - (self.dim_m_cap_nperp - self.dim_n_cap_mperp)) <= self.tol

    @property
    def holds(self) -> bool:
        return not self.indeterminate and self.integer_ok and self.identity_ok

    def to_json(self) -> dict:
        return {
            "trace": self.trace,
            "dim_M_cap_Nperp": self.dim_m_cap_nperp,
            "dim_N_cap_Mperp": self.dim_n_cap_mperp,
            "indeterminate": self.indeterminate,
            "integer": self.integer_ok,
            "identity": self.identity_ok,
        }


@dataclass(frozen=True)
class ProjectionPair:
    P: np.ndarray
    Q: np.ndarray

    def __post_init__(self):
        if self.P.shape != self.Q.shape:
            raise MatrixError("projections in a pair must have equal size")
        for name, M in (("P", self.P), ("Q", self.Q)):
            if not is_projection(M):
                raise MatrixError(f"{name} is not a projection within {FLOAT_TOL}")


def pair_index(pair: ProjectionPair, tol: float = 1e-6) -> PairIndexReport:
    P = np.asarray(pair.P, dtype=complex)
    Q = np.asarray(pair.Q, dtype=complex)
    n = P.shape[0]
    one = np.eye(n)
    Qp = one - Q
    T = Q @ P @ Q + Qp @ P @ Qp - Q
    tr = float(np.trace(T).real)
    # ker((1-P) + Q) = M ∩ N^⊥ and ker((1-Q) + P) = N ∩ M^⊥ for projections.
    a = kernel_dimension((one - P) + Q)
    b = kernel_dimension((one - Q) + P)
    return PairIndexReport(tr, a.dim, b.dim, a.indeterminate or b.indeterminate, tol)


@dataclass(frozen=True)
class FredholmReport:
    """trace(1 - A*A) - trace(1 - AA*) against dim ker A - dim ker A*."""

    trace_side: float
    dim_ker: int
    dim_coker: int
    indeterminate: bool

    @property
    def index(self) -> int:
        return self.dim_ker - self.dim_coker

    @property
    def holds(self) -> bool:
        return not self.indeterminate and abs(self.trace_side - self.index) <= 1e-8


def fredholm_identity(A: np.ndarray) -> FredholmReport:
    """A maps C^n to C^m, so A has shape (m, n)."""
    A = np.asarray(A, dtype=complex)
    m, n = A.shape
    lhs = float((np.trace(np.eye(n) - A.conj().T @ A) - np.trace(np.eye(m) - A @ A.conj().T)).real)
    k = kernel_dimension(A)
    c = kernel_dimension(A.conj().T)
    return FredholmReport(lhs, k.dim, c.dim, k.indeterminate or c.indeterminate)


def random_pair(n: int, rng: np.random.Generator, planted: bool = False):
    """A random projection pair, optionally with planted intersections.

    Returns ``(pair, expected)`` where ``expected`` is the pair of
    intersection dimensions the construction guarantees for a generic draw
    (``None`` for the unplanted case).
    """
    U = random_unitary(n, rng)
    if not planted:
        r, s = rng.integers(0, n + 1, size=2)
        P = projection_onto(U[:, :r])
        V = random_unitary(n, rng)
        Q = projection_onto(V[:, :s])
        return ProjectionPair(P, Q), (max(0, r - s), max(0, s - r))
    # Split C^n = A ⊕ B ⊕ C ⊕ R: M ⊇ A ⊕ C, N ⊇ B ⊕ C, with generic subspaces of R on top.
    alpha, beta, gamma = (int(x) for x in rng.integers(0, max(1, n // 4) + 1, size=3))
    rest = n - alpha - beta - gamma
    A = U[:, :alpha]
    B = U[:, alpha:alpha + beta]
    C = U[:, alpha + beta:alpha + beta + gamma]
    R = U[:, alpha + beta + gamma:]
    r2, s2 = (int(x) for x in rng.integers(0, rest + 1, size=2))
    W1 = random_unitary(rest, rng) if rest else np.zeros((0, 0))
    W2 = random_unitary(rest, rng) if rest else np.zeros((0, 0))
    Mcols = np.hstack([A, C, R @ W1[:, :r2]])
    Ncols = np.hstack([B, C, R @ W2[:, :s2]])
    pair = ProjectionPair(projection_onto(Mcols), projection_onto(Ncols))
    return pair, (alpha + max(0, r2 - s2), beta + max(0, s2 - r2))
