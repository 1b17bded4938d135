"""Schubert numbers, pole placement censuses, the (2,2,4) fiber solver,
and the exhaustive check that no system over GF(2) has an onto map
Grass(2, GF(2)^4) -> P^4(GF(2)).
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field as dc_field

import numpy as np

from .batch import (
    all_matrices,
    batch_matvec,
    batch_normalize,
    batch_plucker,
    encode_rows,
    to_index_array,
)
from .errors import DegenerateSystem, DimensionMismatch, InfiniteField, UnsupportedShape
from .fields import Field, Scalar, make_field, quadratic_extension
from .grassmann import (
    PluckerVector,
    enumerate_grassmannian,
    grassmannian_plucker,
    is_decomposable,
    klein_quadric,
    plucker_of_matrix,
    reconstruct_matrix,
)
from .matrix import ConstMatrix, PolyMatrix, stacked_det
from .poly import Poly, roots_in_field
from .systems import (
    Compensator,
    FactoredSystem,
    Verdict,
    coefficient_matrix,
    is_degenerate_exact,
)

CENSUS_MISSED_LIMIT = 100_000
"""Missed targets are listed only when the target space is at most this big."""


def schubert_number(m: int, p: int) -> int:
    """1! 2! ... (p-1)! (mp)! / (m! (m+1)! ... (m+p-1)!)."""
    if m < 1 or p < 1:
        raise ValueError("m and p must be positive")
    num = math.factorial(m * p)
    for i in range(1, p):
        num *= math.factorial(i)
    den = 1
    for i in range(m, m + p):
        den *= math.factorial(i)
    q, r = divmod(num, den)
    assert r == 0
    return q


# ---------------------------------------------------------------------------
# censuses


@dataclass
class CensusReport:
    field: str
    mode: str
    n: int
    domain_size: int
    image_size: int
    target_size: int
    histogram: dict[int, int]
    zero_count: int = 0
    deficient_count: int = 0
    missed: list[tuple] | None = None
    fibers: dict[tuple, int] = dc_field(default_factory=dict, repr=False)

    @property
    def missed_count(self) -> int:
        return self.target_size - self.image_size

    @property
    def surjective(self) -> bool:
        return self.image_size == self.target_size

    def check_counts(self) -> bool:
        hits = sum(size * count for size, count in self.histogram.items())
        return hits + self.zero_count + self.deficient_count == self.domain_size


def _projective_points(q: int, length: int):
    """Normalized index vectors of P^(length-1)(GF(q)) in lex order."""
    for lead in range(length):
        for tail in itertools.product(range(q), repeat=length - lead - 1):
            yield (0,) * lead + (1,) + tail


def census(fs: FactoredSystem, mode: str = "projective") -> CensusReport:
    """Image statistics of the pole placement map at rational points.

    ``affine``: every K in F^(m x p) via [I K]; targets are the monic
    degree-n polynomials (coefficients 0..n-1).  ``projective``: every
    point of Grass(m, F^(m+p)); targets are points of P^n.
    """
    F = fs.field
    if not F.is_finite:
        raise InfiniteField("a census needs a finite field")
    if mode not in ("affine", "projective"):
        raise ValueError(f"unknown census mode {mode!r}")
    q = F.order
    t = F.tables
    m, p = fs.m, fs.p
    Chat = coefficient_matrix(fs)
    n = Chat.n
    A = to_index_array(F, Chat.matrix.rows)
    if mode == "projective":
        _, P = grassmannian_plucker(m, m + p, F)
    else:
        K = all_matrices(q, m, p)
        eye = np.zeros((K.shape[0], m, m), dtype=np.int64)
        eye[:, range(m), range(m)] = 1
        P = batch_plucker(t, np.concatenate([eye, K], axis=2))
    images = batch_matvec(t, A, P)
    domain = images.shape[0]
    nonzero = images.any(axis=1)
    zero_count = int(domain - nonzero.sum())
    deficient = 0
    if mode == "projective":
        vecs = batch_normalize(t, images[nonzero])
        target_size = (q ** (n + 1) - 1) // (q - 1)
        keys_of = vecs
    else:
        full = images[:, n] != 0
        deficient = int((nonzero & ~full).sum())
        sel = images[full]
        vecs = t.mul[t.inv[sel[:, n]][:, None], sel]
        target_size = q**n
        keys_of = vecs[:, :n]
    fibers: Counter = Counter()
    if keys_of.shape[0]:
        uniq, counts = np.unique(keys_of, axis=0, return_counts=True)
        for row, c in zip(uniq, counts):
            fibers[tuple(int(x) for x in row)] = int(c)
    histogram = Counter(fibers.values())
    missed = None
    if target_size <= CENSUS_MISSED_LIMIT:
        if mode == "projective":
            space = _projective_points(q, n + 1)
        else:
            space = itertools.product(range(q), repeat=n)
        missed = [v for v in space if v not in fibers]
    return CensusReport(
        field=str(F.spec),
        mode=mode,
        n=n,
        domain_size=domain,
        image_size=len(fibers),
        target_size=target_size,
        histogram=dict(sorted(histogram.items())),
        zero_count=zero_count,
        deficient_count=deficient,
        missed=missed,
        fibers=dict(fibers),
    )


# ---------------------------------------------------------------------------
# the (2,2,4) fiber solver


def quadric_polarization(x: PluckerVector, y: PluckerVector) -> Scalar:
    """B(x, y) with Q(x + t y) = Q(x) + t B(x, y) + t^2 Q(y)."""
    f = x.field
    a, b = x.coords, y.coords
    terms = [
        f.add(f.mul(a[0], b[5]), f.mul(b[0], a[5])),
        f.neg(f.add(f.mul(a[1], b[4]), f.mul(b[1], a[4]))),
        f.add(f.mul(a[2], b[3]), f.mul(b[2], a[3])),
    ]
    acc = f.zero
    for v in terms:
        acc = f.add(acc, v)
    return Scalar(f, acc)


@dataclass
class FiberEntry:
    """One point of the fiber (or a conjugate pair described symbolically)."""

    field: str
    multiplicity: int
    parameter: Scalar | None = None
    point: PluckerVector | None = None
    compensator_matrix: ConstMatrix | None = None
    k1_invertible: bool | None = None
    compensator: Compensator | None = None
    rational: bool = True
    verified: bool = False
    symbolic: str | None = None


@dataclass
class FiberSolution:
    target: Poly
    entries: list[FiberEntry]
    discriminant: Scalar | None = None
    extension: str | None = None

    @property
    def total_multiplicity(self) -> int:
        return sum(e.multiplicity for e in self.entries)

    @property
    def rational_entries(self) -> list[FiberEntry]:
        return [e for e in self.entries if e.rational and e.point is not None]


def _embed_poly_matrix(M: PolyMatrix, fn, ext: Field) -> PolyMatrix:
    return PolyMatrix._raw(ext, [[g.map_coeffs(fn, ext) for g in row] for row in M.rows])


def _solve_quadratic(a: Scalar, b: Scalar, c: Scalar):
    """Roots of a t^2 + b t + c (a != 0) as (values, field, embed_raw, disc).

    Values are raw elements of ``field`` with multiplicities; ``field`` is
    the base field when the roots are rational there and its quadratic
    extension otherwise.  Over QQ with irrational roots ``field`` is None.
    """
    F = a.field
    ident = lambda v: v  # noqa: E731
    if F.characteristic == 2:
        poly = Poly._raw(F, (c.value, b.value, a.value))
        roots = roots_in_field(poly)
        if sum(mu for _, mu in roots) == 2:
            return [(r.value, mu) for r, mu in roots], F, ident, None
        qe = quadratic_extension(F)
        roots = roots_in_field(poly.map_coeffs(qe.embed_raw, qe.field))
        return [(r.value, mu) for r, mu in roots], qe.field, qe.embed_raw, None
    disc = b * b - 4 * a * c
    two_a = 2 * a
    if not disc:
        return [((-b / two_a).value, 2)], F, ident, disc
    root = F.sqrt(disc.value)
    if root is not None:
        r = Scalar(F, root)
        return [(((-b + r) / two_a).value, 1), (((-b - r) / two_a).value, 1)], F, ident, disc
    if not F.is_finite:
        return [], None, None, disc
    qe = quadratic_extension(F)
    E = qe.field
    r = Scalar(E, E.sqrt(qe.embed_raw(disc.value)))
    mb, ta = qe.embed(-b), qe.embed(two_a)
    return [(((mb + r) / ta).value, 1), (((mb - r) / ta).value, 1)], E, qe.embed_raw, disc


def fiber_solve_2x2(fs: FactoredSystem, target: Poly) -> FiberSolution:
    """All compensators of a nondegenerate 2x4 system with closed loop ``target``.

    The preimage of the target in Plücker space is the line k0 + t v with
    C k0 = target and v spanning ker C; intersecting it with the Klein
    quadric gives a quadratic in t whose leading coefficient Q(v) is
    nonzero.
    """
    if (fs.m, fs.p) != (2, 2):
        raise UnsupportedShape(f"fiber solver handles m = p = 2, got ({fs.m}, {fs.p})")
    if fs.degree != 4:
        raise UnsupportedShape(f"fiber solver needs degree 4, got {fs.degree}")
    if is_degenerate_exact(fs) is not Verdict.NONDEGENERATE:
        raise DegenerateSystem("the system is degenerate")
    F = fs.field
    if target.field is not F:
        raise DimensionMismatch(f"target over {target.field}, system over {F}")
    if not target or target.degree > 4:
        raise ValueError("target must be a nonzero polynomial of degree <= 4")
    Chat = coefficient_matrix(fs, 4)
    sol = Chat.matrix.solve([Scalar(F, v) for v in target.padded(5)])
    k0 = PluckerVector(F, 2, 4, tuple(x.value for x in sol))
    v = PluckerVector(F, 2, 4, Chat.kernel().rows[0])
    a = klein_quadric(v)
    b = quadric_polarization(k0, v)
    c = klein_quadric(k0)
    roots, E, embed_raw, disc = _solve_quadratic(a, b, c)
    if E is None:
        sym = f"t = (-({b}) +/- sqrt({disc})) / (2*({a}))"
        entry = FiberEntry("QQ(sqrt(%s))" % disc, 2, rational=False, symbolic=sym)
        return FiberSolution(target, [entry], discriminant=disc)
    M = fs.M if E is F else _embed_poly_matrix(fs.M, embed_raw, E)
    goal = target if E is F else target.map_coeffs(embed_raw, E)
    k0e, ve = k0.map(embed_raw, E), v.map(embed_raw, E)
    entries = []
    for t_raw, mult in roots:
        coords = tuple(E.add(x, E.mul(t_raw, y)) for x, y in zip(k0e.coords, ve.coords))
        point = PluckerVector(E, 2, 4, coords)
        entry = FiberEntry(str(E.spec), mult, Scalar(E, t_raw), point, rational=E is F)
        if is_decomposable(point):
            K = reconstruct_matrix(point)
            entry.compensator_matrix = K
            got = stacked_det(K, M)
            entry.verified = bool(got) and got.monic() == goal.monic()
            K1 = K.take_columns([0, 1])
            entry.k1_invertible = K1.rank() == 2
            if entry.k1_invertible:
                entry.compensator = Compensator(K1.inverse() @ K.take_columns([2, 3]))
        entries.append(entry)
    return FiberSolution(
        target, entries, discriminant=disc, extension=None if E is F else str(E.spec)
    )


# ---------------------------------------------------------------------------
# the GF(2) theorem

# Plücker axes in lex order: 12, 13, 14, 23, 24, 34.
LISTED_OFF_QUADRIC = (
    (1, 0, 0, 0, 0, 1), (0, 1, 0, 0, 1, 0), (0, 0, 1, 1, 0, 0), (1, 1, 1, 1, 1, 1),
    (1, 1, 0, 0, 0, 1), (1, 0, 1, 0, 0, 1), (1, 0, 0, 1, 0, 1), (1, 0, 0, 0, 1, 1),
    (1, 1, 0, 0, 1, 0), (0, 1, 1, 0, 1, 0), (0, 1, 0, 1, 1, 0), (0, 1, 0, 0, 1, 1),
    (1, 0, 1, 1, 0, 0), (0, 1, 1, 1, 0, 0), (0, 0, 1, 1, 1, 0), (0, 0, 1, 1, 0, 1),
    (0, 0, 1, 1, 1, 1), (0, 1, 0, 1, 1, 1), (0, 1, 1, 0, 1, 1), (0, 1, 1, 1, 0, 1),
    (1, 0, 0, 1, 1, 1), (1, 0, 1, 0, 1, 1), (1, 0, 1, 1, 1, 0), (1, 1, 0, 1, 0, 1),
    (1, 1, 0, 1, 1, 0), (1, 1, 1, 0, 0, 1), (1, 1, 1, 0, 1, 0), (1, 1, 1, 1, 0, 0),
)

LISTED_SWAPS = (
    ((0, 5),),
    ((1, 4),),
    ((2, 3),),
    ((0, 1), (5, 4)),
    ((0, 2), (5, 3)),
    ((1, 2), (4, 3)),
)


def _cm(*rows):
    return tuple(tuple(r) for r in rows)


CANONICAL_CASES = (
    (
        (1, 0, 0, 0, 0, 1),
        _cm((1, 0, 0, 0, 0, 1), (0, 1, 0, 0, 0, 0), (0, 0, 1, 0, 0, 0),
            (0, 0, 0, 1, 0, 0), (0, 0, 0, 0, 1, 0)),
        (1, 1, 1, 0, 1),
    ),
    (
        (1, 1, 0, 0, 0, 1),
        _cm((1, 0, 0, 0, 0, 1), (0, 1, 0, 0, 0, 1), (0, 0, 1, 0, 0, 0),
            (0, 0, 0, 1, 0, 0), (0, 0, 0, 0, 1, 0)),
        (1, 1, 1, 1, 0),
    ),
    (
        (0, 0, 1, 1, 1, 1),
        _cm((1, 0, 0, 0, 0, 0), (0, 1, 0, 0, 0, 0), (0, 0, 1, 0, 0, 1),
            (0, 0, 0, 1, 0, 1), (0, 0, 0, 0, 1, 1)),
        (0, 1, 0, 0, 1),
    ),
    (
        (1, 1, 1, 1, 1, 1),
        _cm((1, 0, 0, 0, 0, 1), (0, 1, 0, 0, 0, 1), (0, 0, 1, 0, 0, 1),
            (0, 0, 0, 1, 0, 1), (0, 0, 0, 0, 1, 1)),
        (1, 1, 0, 0, 1),
    ),
)


def swap_permutation(swap: tuple[tuple[int, int], ...], size: int = 6) -> tuple[int, ...]:
    perm = list(range(size))
    for i, j in swap:
        perm[i], perm[j] = perm[j], perm[i]
    return tuple(perm)


def _apply(perm: tuple[int, ...], v: tuple) -> tuple:
    out = [0] * len(v)
    for i, x in enumerate(v):
        out[perm[i]] = x
    return tuple(out)


def orbit_decomposition(points, swaps) -> list[tuple[tuple, list[tuple]]]:
    """Orbits of ``points`` under the group generated by axis permutations.

    ``swaps`` are permutations (tuples of images) or transposition lists.
    Returns (lex-least representative, sorted orbit) pairs sorted by
    representative.  Orbits are closed under the group even if they leave
    ``points``.
    """
    perms = [
        s if s and isinstance(s[0], int) else swap_permutation(s, len(next(iter(points))))
        for s in swaps
    ]
    remaining = set(map(tuple, points))
    orbits = []
    while remaining:
        start = min(remaining)
        seen = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for g in perms:
                y = _apply(g, x)
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        remaining -= seen
        orbit = sorted(seen)
        orbits.append((orbit[0], orbit))
    orbits.sort()
    return orbits


def annihilator_matrix(v: tuple, field: Field) -> ConstMatrix:
    """RREF basis of {k : v . k = 0}, as rows."""
    N = ConstMatrix(field, [list(v)]).nullspace()
    R, _, _ = N.rref()
    return R


@dataclass
class F2Case:
    generator: tuple
    matrix: tuple
    image_size: int
    missed: list[tuple]
    rechecked: bool

    @property
    def surjective(self) -> bool:
        return self.image_size == 31


@dataclass
class F2Report:
    quadric_count: int
    off_quadric_count: int
    decomposable_matches_quadric: bool
    matches_listed: bool
    cases: list[F2Case]
    canonical: list[dict]
    swaps_preserve_quadric: bool
    orbits: list[tuple[tuple, list[tuple]]]
    listed_reps_cover: bool

    @property
    def all_non_surjective(self) -> bool:
        return len(self.cases) == 28 and not any(c.surjective for c in self.cases)

    @property
    def passed(self) -> bool:
        return (
            self.quadric_count == 35
            and self.off_quadric_count == 28
            and self.decomposable_matches_quadric
            and self.matches_listed
            and self.all_non_surjective
            and all(c.rechecked for c in self.cases)
            and all(c["passed"] for c in self.canonical)
            and self.swaps_preserve_quadric
            and self.listed_reps_cover
        )


def _image_f2(Chat: ConstMatrix, grass: list[tuple]) -> set[tuple]:
    rows = Chat.rows
    out = set()
    for k in grass:
        out.add(tuple(sum(a * b for a, b in zip(r, k)) % 2 for r in rows))
    out.discard((0,) * len(rows))
    return out


def verify_f2_theorem() -> F2Report:
    F2 = make_field(2)
    vectors = [v for v in itertools.product((0, 1), repeat=6) if any(v)]

    def Q(v):
        return (v[0] * v[5] + v[1] * v[4] + v[2] * v[3]) % 2

    on = [v for v in vectors if Q(v) == 0]
    off = [v for v in vectors if Q(v) == 1]
    decomp_ok = all(
        is_decomposable(PluckerVector(F2, 2, 4, v)) == (Q(v) == 0) for v in vectors
    )
    grass = [tuple(plucker_of_matrix(X).coords) for X in enumerate_grassmannian(2, 4, F2)]
    targets = [v for v in itertools.product((0, 1), repeat=5) if any(v)]

    # vectorised images for every off-quadric generator
    t = F2.tables
    P = np.array(grass, dtype=np.int64)
    cases = []
    matrices = {}
    for v in off:
        Chat = annihilator_matrix(v, F2)
        matrices[v] = Chat
        A = to_index_array(F2, Chat.rows)
        img = batch_matvec(t, A, P)
        keys = {tuple(int(x) for x in r) for r in img if r.any()}
        missed = [w for w in targets if w not in keys]
        # independent pure-Python rescan of every missed target
        rescan = _image_f2(Chat, grass)
        rechecked = all(w not in rescan for w in missed) and len(rescan) == len(keys)
        cases.append(F2Case(v, Chat.rows, len(keys), missed, rechecked))

    canonical = []
    by_gen = {c.generator: c for c in cases}
    for gen, mat, miss in CANONICAL_CASES:
        M = ConstMatrix(F2, [list(r) for r in mat])
        ours = matrices[gen]
        annihilates = all(sum(a * b for a, b in zip(r, gen)) % 2 == 0 for r in mat)
        canonical.append(
            {
                "generator": gen,
                "row_space_equal": M.row_space_equals(ours) and M.rank() == 5,
                "annihilates": annihilates,
                "target": miss,
                "target_missed": miss in by_gen[gen].missed,
                "passed": M.row_space_equals(ours)
                and M.rank() == 5
                and annihilates
                and miss in by_gen[gen].missed,
            }
        )

    perms = [swap_permutation(s) for s in LISTED_SWAPS]
    preserve = all(Q(_apply(g, v)) == Q(v) for g in perms for v in vectors)
    orbits = orbit_decomposition(off, perms)
    reps = {gen for gen, _, _ in CANONICAL_CASES}
    covered = set()
    for _, orbit in orbits:
        if reps & set(orbit):
            covered |= set(orbit)
    return F2Report(
        quadric_count=len(on),
        off_quadric_count=len(off),
        decomposable_matches_quadric=decomp_ok and len(grass) == len(on),
        matches_listed=set(off) == set(LISTED_OFF_QUADRIC) and len(LISTED_OFF_QUADRIC) == 28,
        cases=cases,
        canonical=canonical,
        swaps_preserve_quadric=preserve,
        orbits=orbits,
        listed_reps_cover=covered == set(off),
    )
