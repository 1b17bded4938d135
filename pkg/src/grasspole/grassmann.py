"""Plücker coordinates and Grassmannians Grass(m, F^N).

Coordinates are indexed by 0-based m-subsets of range(N) in lex order.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .batch import batch_plucker
from .errors import InfiniteField, NotDecomposable, RankDeficient, ZeroVector
from .fields import Field, Scalar
from .matrix import ConstMatrix, multi_indices


@functools.lru_cache(maxsize=None)
def subset_ranks(N: int, r: int) -> dict[tuple[int, ...], int]:
    return {a: i for i, a in enumerate(itertools.combinations(range(N), r))}


def lex_rank(alpha: Sequence[int], N: int) -> int:
    return subset_ranks(N, len(alpha))[tuple(alpha)]


def complement(alpha: Sequence[int], N: int) -> tuple[int, ...]:
    s = set(alpha)
    return tuple(i for i in range(N) if i not in s)


def sort_with_sign(seq: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """(sign, sorted) of an index sequence; sign 0 when an index repeats."""
    if len(set(seq)) < len(seq):
        return 0, ()
    s = list(seq)
    sign = 1
    for i in range(len(s)):
        for j in range(len(s) - 1 - i):
            if s[j] > s[j + 1]:
                s[j], s[j + 1] = s[j + 1], s[j]
                sign = -sign
    return sign, tuple(s)


@dataclass(frozen=True)
class PluckerVector:
    """Plücker coordinates of an m-dimensional subspace of F^N (raw values)."""

    field: Field
    size: int
    ambient: int
    coords: tuple

    def __post_init__(self):
        import math

        if len(self.coords) != math.comb(self.ambient, self.size):
            raise ValueError("coordinate count does not match C(N, m)")

    @classmethod
    def from_values(cls, field: Field, size: int, ambient: int, values) -> "PluckerVector":
        return cls(field, size, ambient, tuple(field.convert(v) for v in values))

    def __getitem__(self, alpha: Sequence[int]) -> Scalar:
        return Scalar(self.field, self.coords[lex_rank(alpha, self.ambient)])

    def signed(self, seq: Sequence[int]):
        """Raw coordinate for an unsorted index sequence (alternating)."""
        sign, s = sort_with_sign(seq)
        if sign == 0:
            return self.field.zero
        v = self.coords[lex_rank(s, self.ambient)]
        return v if sign > 0 else self.field.neg(v)

    @property
    def values(self) -> list[Scalar]:
        return [Scalar(self.field, v) for v in self.coords]

    def is_zero(self) -> bool:
        z = self.field.zero
        return all(v == z for v in self.coords)

    def normalized(self) -> "PluckerVector":
        """Scale so the first nonzero coordinate is one."""
        f = self.field
        lead = next((v for v in self.coords if v != f.zero), None)
        if lead is None:
            raise ZeroVector("zero Plücker vector")
        inv = f.inv(lead)
        return PluckerVector(f, self.size, self.ambient, tuple(f.mul(inv, v) for v in self.coords))

    def proportional_to(self, other: "PluckerVector") -> bool:
        try:
            return self.normalized().coords == other.normalized().coords
        except ZeroVector:
            return False

    def map(self, fn, field: Field) -> "PluckerVector":
        return PluckerVector(field, self.size, self.ambient, tuple(fn(v) for v in self.coords))


def plucker_of_matrix(M: ConstMatrix) -> PluckerVector:
    """r x r minors of a full-row-rank r x N matrix in lex order."""
    r, N = M.shape
    coords = tuple(M.take_columns(cols).det().value for cols in itertools.combinations(range(N), r))
    v = PluckerVector(M.field, r, N, coords)
    if v.is_zero():
        raise RankDeficient(f"{M.shape} matrix is not of full row rank")
    return v


@functools.lru_cache(maxsize=None)
def plucker_relations(m: int, N: int) -> tuple[tuple[tuple[int, int, int], ...], ...]:
    """Every Grassmann-Plücker relation as (sign, rank_a, rank_b) terms.

    For each (m-1)-subset sigma and (m+1)-subset tau the relation is
    sum_k (-1)^k p[sigma + tau_k] p[tau - tau_k]; terms with a repeated
    index are dropped.  Relations that vanish identically, and repeats up
    to sign, are omitted.
    """
    ranks = subset_ranks(N, m)
    rels = []
    seen = set()
    for sigma in itertools.combinations(range(N), m - 1):
        for tau in itertools.combinations(range(N), m + 1):
            acc: dict[tuple[int, int], int] = {}
            for k, t in enumerate(tau):
                sgn, a = sort_with_sign(sigma + (t,))
                if sgn == 0:
                    continue
                b = tau[:k] + tau[k + 1 :]
                key = tuple(sorted((ranks[a], ranks[b])))
                acc[key] = acc.get(key, 0) + sgn * (-1) ** k
            terms = tuple((c, a, b) for (a, b), c in sorted(acc.items()) if c)
            if not terms:
                continue
            if terms[0][0] < 0:
                terms = tuple((-c, a, b) for c, a, b in terms)
            if terms not in seen:
                seen.add(terms)
                rels.append(terms)
    return tuple(rels)


def is_decomposable(v: PluckerVector) -> bool:
    """True iff every Grassmann-Plücker relation vanishes at v."""
    if v.is_zero():
        raise ZeroVector("zero vector is not a projective point")
    f = v.field
    x = v.coords
    zero = f.zero
    for terms in plucker_relations(v.size, v.ambient):
        acc = zero
        for c, a, b in terms:
            t = f.mul(x[a], x[b])
            if c != 1:
                t = f.mul(f.from_int(c), t)
            acc = f.add(acc, t)
        if acc != zero:
            return False
    return True


def klein_quadric(v: PluckerVector) -> Scalar:
    """p12 p34 - p13 p24 + p14 p23 for Grass(2, 4)."""
    if (v.size, v.ambient) != (2, 4):
        raise ValueError("the Klein quadric lives on Grass(2, 4)")
    f = v.field
    x = v.coords
    val = f.add(f.sub(f.mul(x[0], x[5]), f.mul(x[1], x[4])), f.mul(x[2], x[3]))
    return Scalar(f, val)


def reconstruct_matrix(v: PluckerVector) -> ConstMatrix:
    """A basis matrix whose row space has Plücker vector proportional to v.

    Built from the first nonzero coordinate beta: the columns beta carry
    the identity and entry (i, j) is p[beta with beta_i replaced by j] / p[beta].
    """
    if v.is_zero():
        raise ZeroVector("zero Plücker vector")
    if not is_decomposable(v):
        raise NotDecomposable("vector violates the Plücker relations")
    f = v.field
    m, N = v.size, v.ambient
    subsets = multi_indices(N, m)
    k = next(i for i, c in enumerate(v.coords) if c != f.zero)
    beta = subsets[k]
    inv = f.inv(v.coords[k])
    rows = []
    for i in range(m):
        row = []
        for j in range(N):
            seq = beta[:i] + (j,) + beta[i + 1 :]
            row.append(f.mul(inv, v.signed(seq)))
        rows.append(row)
    return ConstMatrix._raw(f, rows)


def gaussian_binomial(N: int, m: int, q: int) -> int:
    """Number of m-dimensional subspaces of GF(q)^N."""
    if m < 0 or m > N:
        return 0
    num = den = 1
    for i in range(m):
        num *= q ** (N - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def _free_positions(pivots: Sequence[int], N: int) -> list[tuple[int, int]]:
    pset = set(pivots)
    return [(i, j) for i, p in enumerate(pivots) for j in range(p + 1, N) if j not in pset]


def enumerate_grassmannian(m: int, N: int, field: Field) -> Iterator[ConstMatrix]:
    """Each m-subspace of field^N exactly once, as its RREF basis matrix.

    Order: pivot tuples lexicographically, then free entries in
    field-index order (last free position varying fastest).
    """
    if not field.is_finite:
        raise InfiniteField("cannot enumerate a Grassmannian over an infinite field")
    elems = field.raw_elements()
    zero, one = field.zero, field.one
    for pivots in itertools.combinations(range(N), m):
        free = _free_positions(pivots, N)
        for vals in itertools.product(elems, repeat=len(free)):
            rows = [[zero] * N for _ in range(m)]
            for i, p in enumerate(pivots):
                rows[i][p] = one
            for (i, j), v in zip(free, vals):
                rows[i][j] = v
            yield ConstMatrix._raw(field, rows)


def grassmannian_indices(m: int, N: int, field: Field) -> np.ndarray:
    """All RREF points as an index array of shape (count, m, N), same order."""
    if not field.is_finite:
        raise InfiniteField("cannot enumerate a Grassmannian over an infinite field")
    q = field.order
    blocks = []
    for pivots in itertools.combinations(range(N), m):
        free = _free_positions(pivots, N)
        count = q ** len(free)
        block = np.zeros((count, m, N), dtype=np.int64)
        for i, p in enumerate(pivots):
            block[:, i, p] = 1
        if free:
            grid = np.indices((q,) * len(free)).reshape(len(free), -1)
            for k, (i, j) in enumerate(free):
                block[:, i, j] = grid[k]
        blocks.append(block)
    if not blocks:
        return np.zeros((0, m, N), dtype=np.int64)
    return np.concatenate(blocks)


def grassmannian_plucker(m: int, N: int, field: Field) -> tuple[np.ndarray, np.ndarray]:
    """(RREF index matrices, their Plücker index vectors) for every point."""
    X = grassmannian_indices(m, N, field)
    return X, batch_plucker(field.tables, X)


def index_matrix_to_const(field: Field, X: np.ndarray) -> ConstMatrix:
    return ConstMatrix._raw(field, [[field.from_index(int(v)) for v in r] for r in X])
