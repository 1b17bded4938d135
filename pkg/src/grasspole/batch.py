"""Vectorised finite-field arithmetic on element *indices* via lookup tables.

Every exhaustive scan (Grassmannian degeneracy scans, censuses, MDS
searches) runs through here.  Arrays hold element indices (0 is zero,
1 is one); arithmetic is table lookup, so prime and extension fields are
handled the same way.
"""

from __future__ import annotations

import itertools

import numpy as np

from .fields import Field, FieldTables


def _perm_sign(perm) -> int:
    sign = 1
    seen = list(perm)
    for i in range(len(seen)):
        while seen[i] != i:
            j = seen[i]
            seen[i], seen[j] = seen[j], seen[i]
            sign = -sign
    return sign


def batch_det(t: FieldTables, X: np.ndarray) -> np.ndarray:
    """Determinants of a stack of r x r index matrices, shape (B, r, r)."""
    B, r, _ = X.shape
    total = np.zeros(B, dtype=np.int64)
    if r == 0:
        return np.ones(B, dtype=np.int64)
    for perm in itertools.permutations(range(r)):
        term = X[:, 0, perm[0]]
        for i in range(1, r):
            term = t.mul[term, X[:, i, perm[i]]]
        if _perm_sign(perm) < 0:
            term = t.neg[term]
        total = t.add[total, term]
    return total


def batch_plucker(t: FieldTables, X: np.ndarray) -> np.ndarray:
    """Maximal minors of a stack of r x N matrices, lex subset order, (B, C(N,r))."""
    B, r, N = X.shape
    subsets = list(itertools.combinations(range(N), r))
    out = np.empty((B, len(subsets)), dtype=np.int64)
    for k, cols in enumerate(subsets):
        out[:, k] = batch_det(t, X[:, :, list(cols)])
    return out


def batch_matvec(t: FieldTables, A: np.ndarray, V: np.ndarray) -> np.ndarray:
    """Rows of V (B, c) mapped through the index matrix A (r, c): returns (B, r)."""
    r, c = A.shape
    out = np.zeros((V.shape[0], r), dtype=np.int64)
    for i in range(r):
        acc = np.zeros(V.shape[0], dtype=np.int64)
        for j in range(c):
            a = int(A[i, j])
            if a:
                acc = t.add[acc, t.mul[a, V[:, j]]]
        out[:, i] = acc
    return out


def batch_normalize(t: FieldTables, V: np.ndarray) -> np.ndarray:
    """Scale each nonzero row so its first nonzero entry is one."""
    nz = V != 0
    first = nz.argmax(axis=1)
    lead = V[np.arange(V.shape[0]), first]
    scale = t.inv[lead]
    return t.mul[scale[:, None], V]


def encode_rows(V: np.ndarray, q: int) -> np.ndarray:
    """Injective integer key per row (base-q digits, first column most significant)."""
    keys = np.zeros(V.shape[0], dtype=object if q ** V.shape[1] >= 2**62 else np.int64)
    for j in range(V.shape[1]):
        keys = keys * q + V[:, j]
    return keys


def all_matrices(q: int, r: int, c: int) -> np.ndarray:
    """Every r x c index matrix over a field of order q, shape (q^(rc), r, c)."""
    n = r * c
    grid = np.indices((q,) * n).reshape(n, -1).T if n else np.zeros((1, 0), dtype=np.int64)
    return grid.reshape(-1, r, c).astype(np.int64)


def to_index_array(field: Field, rows) -> np.ndarray:
    return np.array([[field.index(v) for v in r] for r in rows], dtype=np.int64)
