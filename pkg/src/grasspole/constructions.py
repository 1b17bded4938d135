"""Osculating normal curves, monomial systems, and MDS coefficient matrices."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .batch import all_matrices, batch_det
from .errors import DegreeLawViolation, DimensionMismatch, FieldTooSmall, InfiniteField
from .fields import Field
from .matrix import ConstMatrix, PolyMatrix, maximal_minors, multi_indices
from .poly import BINOMIALS, Poly, falling_factorial
from .systems import FactoredSystem


# ---------------------------------------------------------------------------
# osculating normal curves


def osculating_curve_classical(p: int, m: int, field: Field) -> PolyMatrix:
    """Entry (i, j) is the i-th ordinary derivative of s^j."""
    rows = []
    for i in range(p):
        row = []
        for j in range(m + p):
            c = falling_factorial(j, i) if j >= i else 0
            row.append(Poly.monomial(field, j - i, c) if j >= i else Poly.zero(field))
        rows.append(row)
    return PolyMatrix._raw(field, rows)


def osculating_curve_hasse(p: int, m: int, field: Field) -> PolyMatrix:
    """Entry (i, j) is C(j, i) s^(j-i) reduced into the field."""
    rows = []
    for i in range(p):
        row = []
        for j in range(m + p):
            row.append(Poly.monomial(field, j - i, BINOMIALS(j, i)) if j >= i else Poly.zero(field))
        rows.append(row)
    return PolyMatrix._raw(field, rows)


def zero_rows(M: PolyMatrix) -> list[int]:
    return [i for i in range(M.nrows) if all(e.is_zero() for e in M.rows[i])]


def find_zero_maximal_minor(M: PolyMatrix) -> tuple[int, ...] | None:
    """Lex-least column subset whose maximal minor vanishes identically."""
    for cols in multi_indices(M.ncols, M.nrows):
        if M.minor(range(M.nrows), cols).is_zero():
            return cols
    return None


def column_family_minor(p: int, c: int, field: Field) -> Poly:
    """Minor of the Hasse curve matrix on columns 0, ..., p-2, c.

    The matrix is unit upper triangular apart from the corner C(c, p-1),
    so the minor is C(c, p-1) s^(c-p+1).
    """
    M = osculating_curve_hasse(p, max(c - p + 1, 1), field)
    return M.minor(range(p), list(range(p - 1)) + [c])


# ---------------------------------------------------------------------------
# degree matrices and monomial systems


@dataclass(frozen=True)
class DegreeMatrix:
    """p x (m+p) nonnegative integer exponents."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(d) for d in r) for r in self.rows)
        if not rows or len({len(r) for r in rows}) != 1:
            raise DimensionMismatch("degree matrix must be rectangular and nonempty")
        if any(d < 0 for r in rows for d in r):
            raise ValueError("degrees must be nonnegative")
        object.__setattr__(self, "rows", rows)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.rows[0])

    def __getitem__(self, ij) -> int:
        i, j = ij
        return self.rows[i][j]

    def potentials(self, support=None) -> tuple[list[int], list[int]] | None:
        """(r, c) with d[i][j] = r[i] + c[j] on ``support``, or None.

        ``support`` is a set of (i, j) positions (default: all).  Connected
        components of the bipartite row/column graph are solved by
        propagation; r and c may be negative.
        """
        p, N = self.shape
        if support is None:
            support = {(i, j) for i in range(p) for j in range(N)}
        r: list[int | None] = [None] * p
        c: list[int | None] = [None] * N
        by_row = {i: [j for j in range(N) if (i, j) in support] for i in range(p)}
        by_col = {j: [i for i in range(p) if (i, j) in support] for j in range(N)}
        for start in range(p):
            if r[start] is not None:
                continue
            r[start] = 0
            stack = [("r", start)]
            while stack:
                kind, k = stack.pop()
                if kind == "r":
                    for j in by_row[k]:
                        want = self.rows[k][j] - r[k]
                        if c[j] is None:
                            c[j] = want
                            stack.append(("c", j))
                        elif c[j] != want:
                            return None
                else:
                    for i in by_col[k]:
                        want = self.rows[i][k] - c[k]
                        if r[i] is None:
                            r[i] = want
                            stack.append(("r", i))
                        elif r[i] != want:
                            return None
        return [x or 0 for x in r], [x or 0 for x in c]

    def satisfies_law(self, support=None) -> bool:
        return self.potentials(support) is not None


@dataclass(frozen=True)
class MonomialSystem:
    coefficients: ConstMatrix
    degrees: DegreeMatrix
    matrix: PolyMatrix

    @property
    def p(self) -> int:
        return self.matrix.nrows

    @property
    def m(self) -> int:
        return self.matrix.ncols - self.matrix.nrows

    def factored(self) -> FactoredSystem:
        return FactoredSystem.from_matrix(self.matrix, self.m)

    def minor_exponent(self, cols: Sequence[int]) -> int:
        """Exponent of the monomial maximal minor on ``cols``."""
        support = self._support()
        r, c = self.degrees.potentials(support)
        return sum(r) + sum(c[j] for j in cols)

    def _support(self):
        f = self.coefficients.field
        return {
            (i, j)
            for i, row in enumerate(self.coefficients.rows)
            for j, v in enumerate(row)
            if v != f.zero
        }


def monomial_matrix(coeffs: ConstMatrix, degrees: DegreeMatrix | Sequence) -> MonomialSystem:
    """Realize alpha_ij s^d_ij and check that every maximal minor is a monomial.

    The additive degree law is enforced on the support of the coefficient
    matrix; entries with a zero coefficient carry no degree.
    """
    if not isinstance(degrees, DegreeMatrix):
        degrees = DegreeMatrix(tuple(map(tuple, degrees)))
    if degrees.shape != coeffs.shape:
        raise DimensionMismatch(f"coefficients {coeffs.shape} vs degrees {degrees.shape}")
    if coeffs.nrows > coeffs.ncols:
        raise DimensionMismatch("need p <= m + p columns")
    f = coeffs.field
    support = {
        (i, j) for i, row in enumerate(coeffs.rows) for j, v in enumerate(row) if v != f.zero
    }
    if not degrees.satisfies_law(support):
        raise DegreeLawViolation("d_ij is not of the form r_i + c_j on the coefficient support")
    rows = [
        [Poly._raw(f, [f.zero] * degrees[i, j] + [v]) for j, v in enumerate(row)]
        for i, row in enumerate(coeffs.rows)
    ]
    M = PolyMatrix._raw(f, rows)
    for g in maximal_minors(M):
        if g and not g.is_monomial():
            raise DegreeLawViolation(f"maximal minor {g} is not a monomial")
    return MonomialSystem(coeffs, degrees, M)


# ---------------------------------------------------------------------------
# MDS and superregular matrices


def mds_check(M: ConstMatrix) -> bool:
    """All maximal minors nonzero."""
    p, N = M.shape
    if p > N:
        raise DimensionMismatch("MDS needs at most as many rows as columns")
    return all(bool(M.take_columns(cols).det()) for cols in multi_indices(N, p))


def superregular_check(R: ConstMatrix) -> bool:
    """All square minors of all sizes nonzero."""
    r, c = R.shape
    for k in range(1, min(r, c) + 1):
        for rows in itertools.combinations(range(r), k):
            for cols in itertools.combinations(range(c), k):
                if not R.submatrix(rows, cols).det():
                    return False
    return True


def exhaustive_mds_search(p: int, N: int, field: Field) -> ConstMatrix | None:
    """First p x N MDS matrix over a finite field (index order), or None."""
    if not field.is_finite:
        raise InfiniteField("exhaustive search needs a finite field")
    t = field.tables
    X = all_matrices(field.order, p, N)
    alive = np.ones(X.shape[0], dtype=bool)
    for cols in itertools.combinations(range(N), p):
        idx = np.flatnonzero(alive)
        if idx.size == 0:
            return None
        d = batch_det(t, X[idx][:, :, list(cols)])
        alive[idx[d == 0]] = False
    hits = np.flatnonzero(alive)
    if hits.size == 0:
        return None
    return ConstMatrix._raw(field, [[field.from_index(int(v)) for v in r] for r in X[hits[0]]])


def cauchy_matrix(xs: Sequence, ys: Sequence, field: Field) -> ConstMatrix:
    """R_ij = 1 / (x_i + y_j)."""
    xs = [field.convert(x) for x in xs]
    ys = [field.convert(y) for y in ys]
    return ConstMatrix._raw(field, [[field.inv(field.add(x, y)) for y in ys] for x in xs])


def cauchy_parameters(p: int, m: int, field: Field) -> tuple[list, list]:
    """Distinct x's, distinct y's with every x_i + y_j nonzero.

    Tries x_i = i, y_j = p + j first; otherwise takes distinct field
    elements e_0, e_1, ... and sets x_i = e_i, y_j = -e_(p+j).
    """
    f = field
    xs = [f.from_int(i) for i in range(p)]
    ys = [f.from_int(p + j) for j in range(m)]
    if _cauchy_valid(xs, ys, f):
        return xs, ys
    if f.order is not None and f.order < p + m:
        raise FieldTooSmall(f"a superregular {p} x {m} Cauchy matrix needs q >= {p + m}")
    elems = f.raw_elements()
    xs = list(elems[:p])
    ys = [f.neg(e) for e in elems[p : p + m]]
    return xs, ys


def _cauchy_valid(xs, ys, f: Field) -> bool:
    return (
        len(set(xs)) == len(xs)
        and len(set(ys)) == len(ys)
        and all(f.add(x, y) != f.zero for x in xs for y in ys)
    )


def main_theorem_degrees(p: int, m: int, n: int | None = None) -> DegreeMatrix:
    """d_ij = max(j - i, 0); the last column is raised by n - mp."""
    n = m * p if n is None else n
    if n < m * p:
        raise ValueError("the construction needs n >= mp")
    rows = [[max(j - i, 0) for j in range(m + p)] for i in range(p)]
    for i in range(p):
        rows[i][-1] += n - m * p
    return DegreeMatrix(tuple(map(tuple, rows)))


def main_theorem_system(p: int, m: int, field: Field, n: int | None = None) -> MonomialSystem:
    """[I_p R(s)] with a Cauchy coefficient block and staircase degrees."""
    xs, ys = cauchy_parameters(p, m, field)
    R = cauchy_matrix(xs, ys, field)
    if not superregular_check(R):
        raise FieldTooSmall("Cauchy block is not superregular")
    coeffs = ConstMatrix.identity(field, p).hstack(R)
    return monomial_matrix(coeffs, main_theorem_degrees(p, m, n))
