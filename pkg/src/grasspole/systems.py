"""Linear systems, their factorizations, and the pole placement determinants.

A factored system is the p x (m+p) polynomial matrix M(s) = [N(s) D(s)];
a projective compensator is a full-rank m x (m+p) constant matrix
[K1 K2].  The closed-loop polynomial of [K1 K2] is the determinant of
[K1 K2] stacked on top of M(s).
"""

from __future__ import annotations

import enum
import functools
import itertools
import random
from dataclasses import dataclass, field as dc_field

import numpy as np

from .batch import batch_matvec, to_index_array
from .errors import (
    DependentAtInfinity,
    DimensionMismatch,
    InfiniteField,
    NotObservable,
    RankDeficient,
    RankDeficientCompensator,
)
from .fields import Field, Scalar
from .grassmann import (
    PluckerVector,
    complement,
    grassmannian_plucker,
    index_matrix_to_const,
    klein_quadric,
    plucker_of_matrix,
)
from .matrix import (
    ConstMatrix,
    PolyMatrix,
    adjugate,
    left_kernel_min_basis,
    maximal_minors,
    stacked_det,
)
from .poly import NEG_INF, Poly, poly_gcd


@dataclass(frozen=True)
class StateSpace:
    """x(t+1) = A x(t) + B u(t), y(t) = C x(t)."""

    A: ConstMatrix
    B: ConstMatrix
    C: ConstMatrix

    def __post_init__(self):
        n = self.A.nrows
        if self.A.ncols != n or self.B.nrows != n or self.C.ncols != n:
            raise DimensionMismatch(
                f"A {self.A.shape}, B {self.B.shape}, C {self.C.shape} are inconsistent"
            )
        if not (self.A.field is self.B.field is self.C.field):
            raise DimensionMismatch("A, B, C must share one field")

    @property
    def field(self) -> Field:
        return self.A.field

    @property
    def n(self) -> int:
        return self.A.nrows

    @property
    def m(self) -> int:
        return self.B.ncols

    @property
    def p(self) -> int:
        return self.C.nrows

    def is_minimal(self) -> bool:
        return observability_rank(self) == self.n and reachability_rank(self) == self.n


@dataclass(frozen=True, eq=False)
class FactoredSystem:
    """M(s) = [N(s) D(s)] with N of size p x m and D of size p x p.

    ``minors`` (lex order over p-subsets of the m+p columns) and ``degree``
    are computed once at construction.
    """

    N: PolyMatrix
    D: PolyMatrix
    minors: tuple = dc_field(init=False, repr=False)
    degree: int | float = dc_field(init=False)

    def __post_init__(self):
        if self.N.nrows != self.D.nrows or self.D.nrows != self.D.ncols:
            raise DimensionMismatch(f"N {self.N.shape} and D {self.D.shape} are inconsistent")
        mins = tuple(maximal_minors(self.M))
        object.__setattr__(self, "minors", mins)
        object.__setattr__(self, "degree", max((g.degree for g in mins), default=NEG_INF))

    @classmethod
    def from_matrix(cls, M: PolyMatrix, m: int) -> "FactoredSystem":
        p, cols = M.shape
        if cols != m + p:
            raise DimensionMismatch(f"{M.shape} is not p x (m+p) for m={m}")
        return cls(M.take_columns(range(m)), M.take_columns(range(m, m + p)))

    @functools.cached_property
    def M(self) -> PolyMatrix:
        return self.N.hstack(self.D)

    @property
    def field(self) -> Field:
        return self.N.field

    @property
    def m(self) -> int:
        return self.N.ncols

    @property
    def p(self) -> int:
        return self.D.nrows

    def det_D(self) -> Poly:
        return self.minors[-1]

    def is_coprime(self) -> bool:
        g = Poly.zero(self.field)
        for mi in self.minors:
            g = poly_gcd(g, mi)
        return g.degree == 0

    def __eq__(self, other):
        if not isinstance(other, FactoredSystem):
            return NotImplemented
        return self.N == other.N and self.D == other.D

    def __hash__(self):
        return hash((self.N, self.D))


@dataclass(frozen=True)
class Compensator:
    """Static output feedback u = K y, K of size m x p."""

    K: ConstMatrix


@dataclass(frozen=True)
class ProjectiveCompensator:
    """Full-rank m x (m+p) matrix [K1 K2]."""

    matrix: ConstMatrix
    m: int = dc_field(init=False)

    def __post_init__(self):
        m, N = self.matrix.shape
        if m == 0 or N < m or self.matrix.rank() != m:
            raise RankDeficientCompensator(f"[K1 K2] of shape {self.matrix.shape} lacks rank {m}")
        object.__setattr__(self, "m", m)

    @classmethod
    def from_feedback(cls, K: Compensator | ConstMatrix) -> "ProjectiveCompensator":
        """[I K]."""
        K = K.K if isinstance(K, Compensator) else K
        return cls(ConstMatrix.identity(K.field, K.nrows).hstack(K))

    @property
    def field(self) -> Field:
        return self.matrix.field

    @property
    def p(self) -> int:
        return self.matrix.ncols - self.m

    @property
    def K1(self) -> ConstMatrix:
        return self.matrix.take_columns(range(self.m))

    @property
    def K2(self) -> ConstMatrix:
        return self.matrix.take_columns(range(self.m, self.matrix.ncols))

    def plucker(self) -> PluckerVector:
        return plucker_of_matrix(self.matrix)


@dataclass(frozen=True)
class CoefficientMatrix:
    """(n+1) x C(m+p, m) matrix of the central projection k -> sum k_a g_a(s).

    Column j belongs to the j-th m-subset beta (lex order) of the
    compensator columns; it holds the coefficients (degree 0..n) of the
    complementary maximal minor of M(s) times the Laplace sign
    (-1)^(m(m+1)/2 + sum of the 1-based entries of beta).  Hence the
    closed-loop coefficients are ``matrix @ plucker(K)``.
    """

    matrix: ConstMatrix
    m: int
    p: int
    n: int

    @property
    def field(self) -> Field:
        return self.matrix.field

    @property
    def subsets(self) -> list[tuple[int, ...]]:
        return list(itertools.combinations(range(self.m + self.p), self.m))

    def apply(self, k: PluckerVector) -> Poly:
        f = self.field
        out = []
        for row in self.matrix.rows:
            acc = f.zero
            for a, b in zip(row, k.coords):
                acc = f.add(acc, f.mul(a, b))
            out.append(acc)
        return Poly._raw(f, out)

    def kernel(self) -> ConstMatrix:
        """Rows form a basis of {k : C k = 0}."""
        return self.matrix.nullspace()

    def rank(self) -> int:
        return self.matrix.rank()


# ---------------------------------------------------------------------------
# closed-loop polynomials


def _feedback_matrix(K) -> ConstMatrix:
    return K.K if isinstance(K, Compensator) else K


def closed_loop_charpoly(ss: StateSpace, K: Compensator | ConstMatrix) -> Poly:
    """det(sI - A - B K C)."""
    K = _feedback_matrix(K)
    if K.shape != (ss.m, ss.p):
        raise DimensionMismatch(f"K must be {ss.m} x {ss.p}, got {K.shape}")
    closed = ss.A + ss.B @ K @ ss.C
    return PolyMatrix.s_minus(closed).det()


def _as_projective(pk) -> ProjectiveCompensator:
    if isinstance(pk, ProjectiveCompensator):
        return pk
    return ProjectiveCompensator(pk)


def charpoly_via_factors(fs: FactoredSystem, pk: ProjectiveCompensator | ConstMatrix) -> Poly:
    """det [[K1, K2], [N(s), D(s)]]."""
    pk = _as_projective(pk)
    if pk.matrix.shape != (fs.m, fs.m + fs.p):
        raise DimensionMismatch(f"compensator {pk.matrix.shape} vs system m={fs.m}, p={fs.p}")
    return stacked_det(pk.matrix, fs.M)


def lemma2_form(ss: StateSpace, pk: ProjectiveCompensator | ConstMatrix) -> Poly:
    """det [[sI - A, B], [K2 C, K1]]."""
    pk = _as_projective(pk)
    if pk.matrix.shape != (ss.m, ss.m + ss.p):
        raise DimensionMismatch(f"compensator {pk.matrix.shape} vs m={ss.m}, p={ss.p}")
    top = PolyMatrix.s_minus(ss.A).hstack(ss.B)
    bottom = (pk.K2 @ ss.C).hstack(pk.K1).to_poly()
    return top.vstack(bottom).det()


# ---------------------------------------------------------------------------
# realization side


def _krylov_rank(blocks: list[ConstMatrix], stack) -> int:
    M = blocks[0]
    for b in blocks[1:]:
        M = stack(M, b)
    return M.rank()


def observability_rank(ss: StateSpace) -> int:
    """Rank of [C; CA; ...; CA^(n-1)]."""
    blocks = [ss.C]
    for _ in range(ss.n - 1):
        blocks.append(blocks[-1] @ ss.A)
    return _krylov_rank(blocks, lambda a, b: a.vstack(b))


def reachability_rank(ss: StateSpace) -> int:
    """Rank of [B, AB, ..., A^(n-1) B]."""
    blocks = [ss.B]
    for _ in range(ss.n - 1):
        blocks.append(ss.A @ blocks[-1])
    return _krylov_rank(blocks, lambda a, b: a.hstack(b))


def left_coprime_factorization(ss: StateSpace) -> FactoredSystem:
    """D^{-1}(s) N(s) = C (sI - A)^{-1} B with det D = det(sI - A).

    The rows [X | D] of a minimal basis of the left kernel of
    [[sI - A], [C]] give N = -X B; the first row is rescaled so that det D
    equals det(sI - A) exactly.
    """
    if observability_rank(ss) != ss.n:
        raise NotObservable("(C, A) is not observable")
    n, p = ss.n, ss.p
    sIA = PolyMatrix.s_minus(ss.A)
    basis = left_kernel_min_basis(sIA.vstack(ss.C), degree_bound=n)
    X = basis.take_columns(range(n))
    D = basis.take_columns(range(n, n + p))
    N = -(X @ ss.B)
    ratio = sIA.det().leading / D.det().leading
    D = D.scale_row(0, ratio)
    N = N.scale_row(0, ratio)
    return FactoredSystem(N, D)


def verify_factorization(ss: StateSpace, fs: FactoredSystem) -> bool:
    """N det(sI-A) = D C adj(sI-A) B and det D = det(sI-A)."""
    sIA = PolyMatrix.s_minus(ss.A)
    chi = sIA.det()
    lhs = fs.N.scale(chi)
    rhs = fs.D @ ss.C.to_poly() @ adjugate(sIA) @ ss.B.to_poly()
    return lhs == rhs and fs.det_D() == chi


# ---------------------------------------------------------------------------
# central projection and degeneracy


def laplace_sign(beta: tuple[int, ...]) -> int:
    m = len(beta)
    return -1 if (m * (m + 1) // 2 + sum(beta) + m) % 2 else 1


def coefficient_matrix(fs: FactoredSystem, n: int | None = None) -> CoefficientMatrix:
    """The central projection k -> sum_a k_a g_a(s) as an (n+1)-row matrix."""
    f = fs.field
    m, p = fs.m, fs.p
    N = m + p
    if n is None:
        n = int(fs.degree) if fs.degree != NEG_INF else 0
    minor_of = dict(zip(itertools.combinations(range(N), p), fs.minors))
    cols = []
    for beta in itertools.combinations(range(N), m):
        g = minor_of[complement(beta, N)]
        if laplace_sign(beta) < 0:
            g = -g
        cols.append(g.padded(n + 1))
    rows = [[col[d] for col in cols] for d in range(n + 1)]
    return CoefficientMatrix(ConstMatrix._raw(f, rows), m, p, n)


def is_degenerate_rational(
    fs: FactoredSystem, field: Field | None = None
) -> ProjectiveCompensator | None:
    """First Grassmannian point (RREF order) with identically zero closed loop.

    Scans every F_q-rational point of Grass(m, F_q^{m+p}); ``None`` only
    certifies that no *rational* witness exists.
    """
    F = fs.field
    if field is not None and field is not F:
        raise DimensionMismatch(f"system over {F}, asked about {field}")
    if not F.is_finite:
        raise InfiniteField("rational degeneracy scan needs a finite field")
    Chat = coefficient_matrix(fs)
    A = to_index_array(F, Chat.matrix.rows)
    X, P = grassmannian_plucker(fs.m, fs.m + fs.p, F)
    images = batch_matvec(F.tables, A, P)
    hits = np.flatnonzero(~images.any(axis=1))
    if hits.size == 0:
        return None
    return ProjectiveCompensator(index_matrix_to_const(F, X[hits[0]]))


class Verdict(str, enum.Enum):
    DEGENERATE = "degenerate"
    NONDEGENERATE = "nondegenerate"
    UNSUPPORTED = "unsupported"


def is_degenerate_exact(fs: FactoredSystem) -> Verdict:
    """Degeneracy over the algebraic closure, where it is decidable here.

    min(m, p) = 1: every point of P(ker C) is decomposable, so the system is
    degenerate iff the coefficient matrix has a kernel.
    m = p = 2: a kernel of dimension >= 2 contains a projective line, which
    meets the Klein quadric over a closed field; a one-dimensional kernel
    is degenerate iff its generator lies on the quadric.
    """
    m, p = fs.m, fs.p
    if min(m, p) != 1 and (m, p) != (2, 2):
        return Verdict.UNSUPPORTED
    ker = coefficient_matrix(fs).kernel()
    dim = ker.nrows
    if dim == 0:
        return Verdict.NONDEGENERATE
    if min(m, p) == 1 or dim >= 2:
        return Verdict.DEGENERATE
    v = PluckerVector(fs.field, 2, 4, ker.rows[0])
    return Verdict.DEGENERATE if not klein_quadric(v) else Verdict.NONDEGENERATE


def evaluate_curve_point(fs: FactoredSystem, lam) -> PluckerVector:
    """Plücker vector of the row space of M(lambda)."""
    Mx = fs.M.evaluate(lam)
    try:
        return plucker_of_matrix(Mx)
    except RankDeficient:
        raise RankDeficient(f"M(s) drops rank at s = {lam}") from None


def recover_feedback(pk: ProjectiveCompensator | ConstMatrix) -> Compensator:
    """K = K1^{-1} K2."""
    pk = _as_projective(pk)
    K1 = pk.K1
    if K1.rank() < pk.m:
        raise DependentAtInfinity("K1 is singular")
    return Compensator(K1.inverse() @ pk.K2)


# ---------------------------------------------------------------------------
# random instances


def random_matrix(field: Field, r: int, c: int, rng: random.Random) -> ConstMatrix:
    q = field.order
    if q is None:
        return ConstMatrix(field, [[rng.randint(-5, 5) for _ in range(c)] for _ in range(r)])
    return ConstMatrix._raw(
        field, [[field.from_index(rng.randrange(q)) for _ in range(c)] for _ in range(r)]
    )


def random_state_space(
    field: Field, n: int, m: int, p: int, rng: random.Random, minimal: bool = False
) -> StateSpace:
    """Random observable (and optionally reachable) triple."""
    while True:
        ss = StateSpace(
            random_matrix(field, n, n, rng),
            random_matrix(field, n, m, rng),
            random_matrix(field, p, n, rng),
        )
        if observability_rank(ss) != n:
            continue
        if minimal and reachability_rank(ss) != n:
            continue
        return ss


def random_full_rank(field: Field, r: int, c: int, rng: random.Random) -> ConstMatrix:
    while True:
        M = random_matrix(field, r, c, rng)
        if M.rank() == r:
            return M
