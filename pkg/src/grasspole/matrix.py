"""Matrices over a field (:class:`ConstMatrix`) and over F[s] (:class:`PolyMatrix`).

Column subsets ("multi-indices") are 0-based strictly increasing tuples,
enumerated in lexicographic order by :func:`itertools.combinations`.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Sequence

from .errors import DegreeBoundExceeded, DimensionMismatch, FieldMismatch, NonSquare
from .fields import Field, Scalar
from .poly import NEG_INF, Poly, poly_gcd


def _check_same_field(a, b):
    if a.field is not b.field:
        raise FieldMismatch(f"{a.field} vs {b.field}")


# ---------------------------------------------------------------------------
# raw row-reduction kernels (lists of lists of raw field values)


def _rref_rows(field: Field, rows: list[list]) -> tuple[list[list], tuple[int, ...]]:
    """Reduced row echelon form of a raw matrix (copied)."""
    M = [list(r) for r in rows]
    if not M:
        return M, ()
    ncols = len(M[0])
    zero, one = field.zero, field.one
    add, mul, neg, inv = field.add, field.mul, field.neg, field.inv
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c] != zero), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        lead = M[r][c]
        if lead != one:
            li = inv(lead)
            M[r] = [mul(li, v) for v in M[r]]
        pr = M[r]
        for i in range(len(M)):
            if i != r:
                f = M[i][c]
                if f != zero:
                    nf = neg(f)
                    row = M[i]
                    M[i] = [add(x, mul(nf, y)) if y != zero else x for x, y in zip(row, pr)]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M, tuple(pivots)


def _nullspace_rows(field: Field, rows: list[list], ncols: int) -> list[list]:
    """Basis of {x : M x = 0} as raw vectors, one per free column."""
    R, pivots = _rref_rows(field, rows) if rows else ([], ())
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        x = [field.zero] * ncols
        x[fc] = field.one
        for i, pc in enumerate(pivots):
            x[pc] = field.neg(R[i][fc])
        basis.append(x)
    return basis


def _rank_rows(field: Field, rows: list[list]) -> int:
    return len(_rref_rows(field, rows)[1]) if rows else 0


# ---------------------------------------------------------------------------
# constant matrices


class ConstMatrix:
    """Immutable matrix of raw field values stored row-major."""

    __slots__ = ("field", "rows")

    def __init__(self, field: Field, rows: Iterable[Iterable]):
        conv = field.convert
        self.field = field
        self.rows = tuple(tuple(conv(x) for x in r) for r in rows)
        if len({len(r) for r in self.rows}) > 1:
            raise DimensionMismatch("ragged matrix rows")

    @classmethod
    def _raw(cls, field: Field, rows) -> "ConstMatrix":
        obj = object.__new__(cls)
        obj.field = field
        obj.rows = tuple(tuple(r) for r in rows)
        return obj

    @classmethod
    def identity(cls, field: Field, n: int) -> "ConstMatrix":
        z, o = field.zero, field.one
        return cls._raw(field, [[o if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, field: Field, r: int, c: int) -> "ConstMatrix":
        return cls._raw(field, [[field.zero] * c for _ in range(r)])

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij) -> Scalar:
        i, j = ij
        return Scalar(self.field, self.rows[i][j])

    def tolist(self) -> list[list[Scalar]]:
        return [[Scalar(self.field, v) for v in r] for r in self.rows]

    def __eq__(self, other) -> bool:
        if not isinstance(other, ConstMatrix):
            return NotImplemented
        return self.field is other.field and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.field.spec, self.rows))

    def __repr__(self) -> str:
        fmt = self.field.format
        body = "; ".join(" ".join(fmt(v) for v in r) for r in self.rows)
        return f"ConstMatrix([{body}], {self.field.spec})"

    # --- structure
    @property
    def T(self) -> "ConstMatrix":
        return ConstMatrix._raw(self.field, zip(*self.rows)) if self.rows else self

    def take_columns(self, cols: Sequence[int]) -> "ConstMatrix":
        return ConstMatrix._raw(self.field, [[r[c] for c in cols] for r in self.rows])

    def take_rows(self, idx: Sequence[int]) -> "ConstMatrix":
        return ConstMatrix._raw(self.field, [self.rows[i] for i in idx])

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "ConstMatrix":
        return ConstMatrix._raw(self.field, [[self.rows[i][c] for c in cols] for i in rows])

    def hstack(self, *others: "ConstMatrix") -> "ConstMatrix":
        for o in others:
            _check_same_field(self, o)
            if o.nrows != self.nrows:
                raise DimensionMismatch("hstack row counts differ")
        rows = [list(r) for r in self.rows]
        for o in others:
            for r, orow in zip(rows, o.rows):
                r.extend(orow)
        return ConstMatrix._raw(self.field, rows)

    def vstack(self, *others: "ConstMatrix") -> "ConstMatrix":
        for o in others:
            _check_same_field(self, o)
            if o.ncols != self.ncols:
                raise DimensionMismatch("vstack column counts differ")
        rows = list(self.rows)
        for o in others:
            rows.extend(o.rows)
        return ConstMatrix._raw(self.field, rows)

    # --- arithmetic
    def __matmul__(self, other: "ConstMatrix") -> "ConstMatrix":
        _check_same_field(self, other)
        if self.ncols != other.nrows:
            raise DimensionMismatch(f"{self.shape} @ {other.shape}")
        f = self.field
        add, mul, zero = f.add, f.mul, f.zero
        cols = list(zip(*other.rows)) if other.rows else []
        out = []
        for r in self.rows:
            row = []
            for col in cols:
                acc = zero
                for x, y in zip(r, col):
                    if x != zero and y != zero:
                        acc = add(acc, mul(x, y))
                row.append(acc)
            out.append(row)
        return ConstMatrix._raw(f, out)

    def __add__(self, other: "ConstMatrix") -> "ConstMatrix":
        _check_same_field(self, other)
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} + {other.shape}")
        add = self.field.add
        return ConstMatrix._raw(
            self.field, [[add(x, y) for x, y in zip(a, b)] for a, b in zip(self.rows, other.rows)]
        )

    def __neg__(self) -> "ConstMatrix":
        neg = self.field.neg
        return ConstMatrix._raw(self.field, [[neg(x) for x in r] for r in self.rows])

    def __sub__(self, other: "ConstMatrix") -> "ConstMatrix":
        return self + (-other)

    def scale(self, k) -> "ConstMatrix":
        f = self.field
        kv = f.convert(k)
        return ConstMatrix._raw(f, [[f.mul(kv, x) for x in r] for r in self.rows])

    def is_zero(self) -> bool:
        z = self.field.zero
        return all(v == z for r in self.rows for v in r)

    # --- linear algebra
    def rref(self) -> tuple["ConstMatrix", int, tuple[int, ...]]:
        R, piv = _rref_rows(self.field, [list(r) for r in self.rows])
        return ConstMatrix._raw(self.field, R), len(piv), piv

    def rank(self) -> int:
        return _rank_rows(self.field, [list(r) for r in self.rows])

    def row_space_equals(self, other: "ConstMatrix") -> bool:
        r = self.rank()
        return r == other.rank() and self.vstack(other).rank() == r

    def det(self) -> Scalar:
        """Determinant by Gaussian elimination."""
        n = self.nrows
        if n != self.ncols:
            raise NonSquare(f"{self.shape} is not square")
        f = self.field
        M = [list(r) for r in self.rows]
        zero = f.zero
        d = f.one
        for c in range(n):
            piv = next((i for i in range(c, n) if M[i][c] != zero), None)
            if piv is None:
                return Scalar(f, zero)
            if piv != c:
                M[c], M[piv] = M[piv], M[c]
                d = f.neg(d)
            lead = M[c][c]
            d = f.mul(d, lead)
            li = f.inv(lead)
            for i in range(c + 1, n):
                if M[i][c] != zero:
                    t = f.neg(f.mul(M[i][c], li))
                    M[i] = [f.add(x, f.mul(t, y)) for x, y in zip(M[i], M[c])]
        return Scalar(f, d)

    def det_cofactor(self) -> Scalar:
        if self.nrows != self.ncols:
            raise NonSquare(f"{self.shape} is not square")
        f = self.field
        return Scalar(f, _cofactor(self.rows, f.zero, f.one, f.add, f.sub, f.mul))

    def nullspace(self) -> "ConstMatrix":
        """Rows form a basis of the right kernel {x : M x = 0}."""
        basis = _nullspace_rows(self.field, [list(r) for r in self.rows], self.ncols)
        return ConstMatrix._raw(self.field, basis) if basis else ConstMatrix._raw(self.field, [])

    def left_nullspace(self) -> "ConstMatrix":
        """Rows form a basis of {y : y M = 0}."""
        return self.T.nullspace()

    def solve(self, b: Sequence) -> list[Scalar] | None:
        """One solution x of M x = b (b raw or Scalars), or None."""
        f = self.field
        bv = [f.convert(x) for x in b]
        if len(bv) != self.nrows:
            raise DimensionMismatch("right-hand side length")
        aug = [list(r) + [v] for r, v in zip(self.rows, bv)]
        R, piv = _rref_rows(f, aug)
        n = self.ncols
        if n in piv:
            return None
        x = [f.zero] * n
        for i, pc in enumerate(piv):
            x[pc] = R[i][n]
        return [Scalar(f, v) for v in x]

    def inverse(self) -> "ConstMatrix":
        n = self.nrows
        if n != self.ncols:
            raise NonSquare(f"{self.shape} is not square")
        aug = self.hstack(ConstMatrix.identity(self.field, n))
        R, rank, piv = aug.rref()
        if piv[:n] != tuple(range(n)) or rank < n:
            from .errors import DivisionByZero

            raise DivisionByZero("singular matrix")
        return R.take_columns(range(n, 2 * n))

    def to_poly(self) -> "PolyMatrix":
        f = self.field
        return PolyMatrix._raw(f, [[Poly._raw(f, (v,)) for v in r] for r in self.rows])


def _cofactor(rows, zero, one, add, sub, mul):
    n = len(rows)
    if n == 0:
        return one
    if n == 1:
        return rows[0][0]
    total = zero
    for j, a in enumerate(rows[0]):
        if a == zero:
            continue
        minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
        term = mul(a, _cofactor(minor, zero, one, add, sub, mul))
        total = add(total, term) if j % 2 == 0 else sub(total, term)
    return total


# ---------------------------------------------------------------------------
# polynomial matrices


class PolyMatrix:
    """Immutable matrix of :class:`Poly` entries."""

    __slots__ = ("field", "rows")

    def __init__(self, field: Field, rows: Iterable[Iterable]):
        def conv(x):
            if isinstance(x, Poly):
                if x.field is not field:
                    raise FieldMismatch(f"{x.field} vs {field}")
                return x
            if isinstance(x, (list, tuple)):
                return Poly(field, x)
            return Poly.const(field, x)

        self.field = field
        self.rows = tuple(tuple(conv(x) for x in r) for r in rows)
        if len({len(r) for r in self.rows}) > 1:
            raise DimensionMismatch("ragged matrix rows")

    @classmethod
    def _raw(cls, field: Field, rows) -> "PolyMatrix":
        obj = object.__new__(cls)
        obj.field = field
        obj.rows = tuple(tuple(r) for r in rows)
        return obj

    @classmethod
    def identity(cls, field: Field, n: int) -> "PolyMatrix":
        return ConstMatrix.identity(field, n).to_poly()

    @classmethod
    def s_minus(cls, A: ConstMatrix) -> "PolyMatrix":
        """sI - A."""
        f = A.field
        n = A.nrows
        if n != A.ncols:
            raise NonSquare("sI - A needs square A")
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                c = [f.neg(A.rows[i][j])]
                if i == j:
                    c.append(f.one)
                row.append(Poly._raw(f, c))
            rows.append(row)
        return cls._raw(f, rows)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij) -> Poly:
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.field is other.field and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.field.spec, self.rows))

    def __repr__(self) -> str:
        body = "; ".join(", ".join(str(p) for p in r) for r in self.rows)
        return f"PolyMatrix([{body}], {self.field.spec})"

    @property
    def degree(self) -> int | float:
        return max((p.degree for r in self.rows for p in r), default=NEG_INF)

    def is_zero(self) -> bool:
        return all(not p for r in self.rows for p in r)

    @property
    def T(self) -> "PolyMatrix":
        return PolyMatrix._raw(self.field, zip(*self.rows)) if self.rows else self

    def take_columns(self, cols: Sequence[int]) -> "PolyMatrix":
        return PolyMatrix._raw(self.field, [[r[c] for c in cols] for r in self.rows])

    def take_rows(self, idx: Sequence[int]) -> "PolyMatrix":
        return PolyMatrix._raw(self.field, [self.rows[i] for i in idx])

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "PolyMatrix":
        return PolyMatrix._raw(self.field, [[self.rows[i][c] for c in cols] for i in rows])

    def hstack(self, *others) -> "PolyMatrix":
        others = [o.to_poly() if isinstance(o, ConstMatrix) else o for o in others]
        for o in others:
            _check_same_field(self, o)
            if o.nrows != self.nrows:
                raise DimensionMismatch("hstack row counts differ")
        rows = [list(r) for r in self.rows]
        for o in others:
            for r, orow in zip(rows, o.rows):
                r.extend(orow)
        return PolyMatrix._raw(self.field, rows)

    def vstack(self, *others) -> "PolyMatrix":
        others = [o.to_poly() if isinstance(o, ConstMatrix) else o for o in others]
        for o in others:
            _check_same_field(self, o)
            if o.ncols != self.ncols:
                raise DimensionMismatch("vstack column counts differ")
        rows = list(self.rows)
        for o in others:
            rows.extend(o.rows)
        return PolyMatrix._raw(self.field, rows)

    def to_poly(self) -> "PolyMatrix":
        return self

    def __matmul__(self, other) -> "PolyMatrix":
        if isinstance(other, ConstMatrix):
            other = other.to_poly()
        _check_same_field(self, other)
        if self.ncols != other.nrows:
            raise DimensionMismatch(f"{self.shape} @ {other.shape}")
        zero = Poly.zero(self.field)
        cols = list(zip(*other.rows))
        out = []
        for r in self.rows:
            row = []
            for col in cols:
                acc = zero
                for x, y in zip(r, col):
                    if x and y:
                        acc = acc + x * y
                row.append(acc)
            out.append(row)
        return PolyMatrix._raw(self.field, out)

    def __rmatmul__(self, other) -> "PolyMatrix":
        if isinstance(other, ConstMatrix):
            return other.to_poly() @ self
        return NotImplemented

    def __add__(self, other) -> "PolyMatrix":
        if isinstance(other, ConstMatrix):
            other = other.to_poly()
        _check_same_field(self, other)
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} + {other.shape}")
        return PolyMatrix._raw(
            self.field, [[x + y for x, y in zip(a, b)] for a, b in zip(self.rows, other.rows)]
        )

    def __neg__(self) -> "PolyMatrix":
        return PolyMatrix._raw(self.field, [[-x for x in r] for r in self.rows])

    def __sub__(self, other) -> "PolyMatrix":
        if isinstance(other, ConstMatrix):
            other = other.to_poly()
        return self + (-other)

    def scale(self, k) -> "PolyMatrix":
        """Multiply every entry by a polynomial or scalar."""
        if not isinstance(k, Poly):
            k = Poly.const(self.field, k)
        return PolyMatrix._raw(self.field, [[k * x for x in r] for r in self.rows])

    def scale_row(self, i: int, k) -> "PolyMatrix":
        rows = [list(r) for r in self.rows]
        rows[i] = [x.scale(k) for x in rows[i]]
        return PolyMatrix._raw(self.field, rows)

    def evaluate(self, x) -> ConstMatrix:
        f = self.field
        return ConstMatrix._raw(f, [[p.eval(x).value for p in r] for r in self.rows])

    def coefficient(self, k: int) -> ConstMatrix:
        """Constant matrix of s^k coefficients."""
        f = self.field
        return ConstMatrix._raw(
            f, [[p.c[k] if k < len(p.c) else f.zero for p in r] for r in self.rows]
        )

    def det(self) -> Poly:
        return _bareiss_det(self)

    def det_cofactor(self) -> Poly:
        if self.nrows != self.ncols:
            raise NonSquare(f"{self.shape} is not square")
        f = self.field
        zero, one = Poly.zero(f), Poly.one(f)
        return _cofactor(
            [list(r) for r in self.rows], zero, one,
            lambda a, b: a + b, lambda a, b: a - b, lambda a, b: a * b,
        )

    def minor(self, rows: Sequence[int], cols: Sequence[int]) -> Poly:
        return self.submatrix(rows, cols).det()

    def maximal_minors(self) -> list[Poly]:
        return maximal_minors(self)


def _bareiss_det(M: PolyMatrix) -> Poly:
    """Fraction-free (Bareiss) elimination over F[s]; divisions are exact."""
    n = M.nrows
    if n != M.ncols:
        raise NonSquare(f"{M.shape} is not square")
    f = M.field
    if n == 0:
        return Poly.one(f)
    A = [list(r) for r in M.rows]
    sign = 1
    prev = Poly.one(f)
    for k in range(n - 1):
        if not A[k][k]:
            piv = next((i for i in range(k + 1, n) if A[i][k]), None)
            if piv is None:
                return Poly.zero(f)
            A[k], A[piv] = A[piv], A[k]
            sign = -sign
        akk = A[k][k]
        for i in range(k + 1, n):
            aik = A[i][k]
            for j in range(k + 1, n):
                num = akk * A[i][j]
                if aik and A[k][j]:
                    num = num - aik * A[k][j]
                A[i][j] = num.exact_div(prev) if prev.degree > 0 else num.scale(Scalar(f, f.inv(prev.c[0])))
        prev = akk
    d = A[n - 1][n - 1]
    return -d if sign < 0 else d


# ---------------------------------------------------------------------------
# module-level operations


def det(M):
    """Determinant of a square ConstMatrix (Scalar) or PolyMatrix (Poly)."""
    return M.det()


def rref(M: ConstMatrix) -> tuple[ConstMatrix, int, tuple[int, ...]]:
    return M.rref()


def multi_indices(N: int, r: int) -> list[tuple[int, ...]]:
    """All r-subsets of range(N) in lexicographic order."""
    return list(itertools.combinations(range(N), r))


def maximal_minors(M) -> list:
    """r x r minors of an r x N matrix, columns in lex subset order."""
    r, N = M.shape
    if r > N:
        raise DimensionMismatch(f"{M.shape} has no maximal minors")
    rows = range(r)
    return [M.submatrix(rows, cols).det() for cols in itertools.combinations(range(N), r)]


def stacked_det(K: ConstMatrix, M: PolyMatrix) -> Poly:
    """det of the square matrix with K stacked on top of M."""
    if K.ncols != M.ncols or K.nrows + M.nrows != M.ncols:
        raise DimensionMismatch(f"cannot stack {K.shape} over {M.shape}")
    return K.to_poly().vstack(M).det()


def poly_rank(M: PolyMatrix) -> int:
    """Rank over the rational function field F(s)."""
    A = [list(r) for r in M.rows]
    rank = 0
    ncols = M.ncols
    for c in range(ncols):
        piv = next((i for i in range(rank, len(A)) if A[i][c]), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        p = A[rank][c]
        for i in range(rank + 1, len(A)):
            if A[i][c]:
                a = A[i][c]
                g = poly_gcd(a, p)
                ca, cp = p.exact_div(g), a.exact_div(g)
                A[i] = [ca * x - cp * y for x, y in zip(A[i], A[rank])]
        rank += 1
    return rank


def _coefficient_space_vector(row: Sequence[Poly], length: int, shift: int, width: int, field):
    """Flatten s^shift * row into coefficient blocks w_0..w_{length-1}."""
    v = [field.zero] * (width * length)
    for r, p in enumerate(row):
        for k, c in enumerate(p.c):
            v[(k + shift) * width + r] = c
    return v


def left_kernel_min_basis(T: PolyMatrix, degree_bound: int | None = None) -> PolyMatrix:
    """Minimal polynomial basis of the left kernel {w(s) : w T = 0}.

    Degrees are swept upward; at each degree d the coefficient-wise linear
    system is solved over the field and the kernel vectors not generated by
    shifts of the rows already found are added.  Rows come out sorted by
    degree, and their leading row-coefficient matrix has full rank.
    """
    f = T.field
    R, n = T.shape
    target = R - poly_rank(T)
    if degree_bound is None:
        degree_bound = n * max(int(T.degree), 1) if T.degree != NEG_INF else 0
    if target == 0:
        return PolyMatrix._raw(f, [])
    tdeg = max(int(T.degree), 0)
    coeffs = [T.coefficient(l).rows for l in range(tdeg + 1)]
    found: list[tuple[int, list[Poly]]] = []
    for d in range(degree_bound + 1):
        width = R
        nunk = width * (d + 1)
        neq = (d + tdeg + 1) * n
        # G[unknown][equation]; the kernel is {x : x G = 0}
        G = [[f.zero] * neq for _ in range(nunk)]
        for k in range(d + 1):
            for l, Tl in enumerate(coeffs):
                e = k + l
                for r in range(width):
                    row = Tl[r]
                    dst = G[k * width + r]
                    for c in range(n):
                        if row[c] != f.zero:
                            dst[e * n + c] = row[c]
        GT = [list(col) for col in zip(*G)]
        kernel = _nullspace_rows(f, GT, nunk)
        span = [
            _coefficient_space_vector(row, d + 1, j, width, f)
            for deg, row in found
            for j in range(d - deg + 1)
        ]
        rank = _rank_rows(f, span)
        for vec in kernel:
            if len(found) == target:
                break
            trial = span + [vec]
            tr = _rank_rows(f, trial)
            if tr > rank:
                span, rank = trial, tr
                row = [
                    Poly._raw(f, [vec[k * width + r] for k in range(d + 1)]) for r in range(width)
                ]
                found.append((d, row))
        if len(found) == target:
            basis = PolyMatrix._raw(f, [row for _, row in found])
            return basis
    raise DegreeBoundExceeded(f"no kernel basis with row degrees <= {degree_bound}")


def leading_row_coefficients(M: PolyMatrix) -> ConstMatrix:
    """Row i holds the coefficients of s^(deg row i)."""
    f = M.field
    out = []
    for r in M.rows:
        d = max(p.degree for p in r)
        out.append([p.c[d] if d != NEG_INF and p.degree == d else f.zero for p in r])
    return ConstMatrix._raw(f, out)


def is_left_prime(M: PolyMatrix) -> bool:
    """gcd of the maximal minors is a nonzero constant."""
    g = Poly.zero(M.field)
    for m in maximal_minors(M):
        g = poly_gcd(g, m)
        if g.degree == 0:
            return True
    return g.degree == 0


def system_degree(M: PolyMatrix) -> int | float:
    """Largest maximal-minor degree (NEG_INF if every minor vanishes)."""
    return max((m.degree for m in maximal_minors(M)), default=NEG_INF)


def adjugate(M: PolyMatrix) -> PolyMatrix:
    n = M.nrows
    if n != M.ncols:
        raise NonSquare(f"{M.shape} is not square")
    idx = list(range(n))
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            rows = [r for r in idx if r != j]
            cols = [c for c in idx if c != i]
            d = M.submatrix(rows, cols).det() if n > 1 else Poly.one(M.field)
            row.append(-d if (i + j) % 2 else d)
        out.append(row)
    return PolyMatrix._raw(M.field, out)
