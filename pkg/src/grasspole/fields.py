"""Exact scalar fields: the rationals QQ and finite fields GF(p^k).

A :class:`Field` works on *raw* canonical values (``Fraction`` for QQ,
``int`` in ``[0, p)`` for prime fields, a length-k tuple of ints for
extensions).  Raw values are hashable and canonical, so ``==`` on them is
field equality.  :class:`Scalar` wraps a raw value together with its field
and overloads the arithmetic operators; it is the public element type.

Finite fields enumerate their elements by *index*: the element
``c0 + c1 a + ... + c_{k-1} a^{k-1}`` has index ``sum c_i p^i``, so zero
is index 0 and one is index 1.  That order is lexicographic on the
coefficient vector read from the top coefficient down.
"""

from __future__ import annotations

import functools
import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, NamedTuple

import numpy as np

from .errors import (
    DivisionByZero,
    FieldMismatch,
    InfiniteField,
    NonPrimeCharacteristic,
    ReducibleModulus,
)

MAX_EXTENSION_DEGREE = 4
TABLE_LIMIT = 512


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


# ---------------------------------------------------------------------------
# dense polynomial helpers over Z/p, ascending coefficient lists


def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _zp_mod(a: list[int], b: list[int], p: int) -> list[int]:
    """Remainder of a by the nonzero polynomial b over Z/p."""
    a = _trim([x % p for x in a])
    b = _trim([x % p for x in b])
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        for i, bc in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bc) % p
        _trim(a)
    return a


def _monic_polys(p: int, degree: int) -> Iterator[list[int]]:
    for low in itertools.product(range(p), repeat=degree):
        yield list(reversed(low)) + [1]


def is_irreducible_mod_p(coeffs: tuple[int, ...] | list[int], p: int) -> bool:
    """Exhaustive factor search; fine for the small degrees used here."""
    f = _trim([c % p for c in coeffs])
    d = len(f) - 1
    if d < 1:
        return False
    for k in range(1, d // 2 + 1):
        for g in _monic_polys(p, k):
            if not _zp_mod(f, g, p):
                return False
    return True


def find_irreducible(p: int, degree: int) -> tuple[int, ...]:
    """Lex-smallest monic irreducible of the given degree over GF(p)."""
    if degree == 1:
        return (0, 1)
    for low in itertools.product(range(p), repeat=degree):
        cand = tuple(reversed(low)) + (1,)
        if is_irreducible_mod_p(cand, p):
            return cand
    raise ReducibleModulus(f"no irreducible of degree {degree} over GF({p})")


# ---------------------------------------------------------------------------
# field specifications


@dataclass(frozen=True)
class FieldSpec:
    """Description of a field; ``characteristic == 0`` means QQ."""

    characteristic: int
    degree: int = 1
    modulus: tuple[int, ...] | None = None

    @property
    def kind(self) -> str:
        return "rationals" if self.characteristic == 0 else "finite"

    @property
    def order(self) -> int | None:
        if self.characteristic == 0:
            return None
        return self.characteristic**self.degree

    def __str__(self) -> str:
        if self.characteristic == 0:
            return "QQ"
        if self.degree == 1:
            return str(self.characteristic)
        mod = ",".join(str(c) for c in self.modulus)
        return f"{self.characteristic}^{self.degree}:modulus={mod}"

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        """Parse ``"QQ"``, ``"q"`` (prime) or ``"p^k:modulus=c0,...,ck"``."""
        t = text.strip().replace(" ", "")
        if t.upper() in ("QQ", "Q"):
            return cls(0)
        m = re.fullmatch(r"(\d+)(?:\^(\d+))?(?::modulus=([\d,\-]+))?", t)
        if not m:
            raise ValueError(f"bad field spec {text!r}")
        p = int(m.group(1))
        k = int(m.group(2) or 1)
        if m.group(3):
            modulus = tuple(int(c) % p for c in m.group(3).split(","))
            return cls(p, k, modulus)
        if k == 1:
            return cls(p)
        return cls(p, k, None)


def _validate(spec: FieldSpec) -> FieldSpec:
    p, k = spec.characteristic, spec.degree
    if p == 0:
        return FieldSpec(0)
    if not is_prime(p):
        raise NonPrimeCharacteristic(f"{p} is not prime")
    if k < 1 or k > MAX_EXTENSION_DEGREE:
        raise ValueError(f"extension degree must be in 1..{MAX_EXTENSION_DEGREE}")
    if k == 1:
        return FieldSpec(p)
    modulus = spec.modulus if spec.modulus is not None else find_irreducible(p, k)
    modulus = tuple(c % p for c in modulus)
    if len(modulus) != k + 1 or modulus[-1] != 1:
        raise ReducibleModulus(f"modulus must be monic of degree {k}")
    if not is_irreducible_mod_p(modulus, p):
        raise ReducibleModulus(f"{modulus} is reducible over GF({p})")
    return FieldSpec(p, k, modulus)


# ---------------------------------------------------------------------------
# fields


class Field:
    """Arithmetic on raw canonical values; see the module docstring."""

    spec: FieldSpec
    characteristic: int
    degree: int
    zero: object
    one: object

    @property
    def order(self) -> int | None:
        return self.spec.order

    @property
    def is_finite(self) -> bool:
        return self.characteristic != 0

    def __repr__(self) -> str:
        return f"Field({self.spec})"

    def __str__(self) -> str:
        return str(self.spec)

    def __reduce__(self):
        return (make_field, (self.spec,))

    # --- elements
    def __call__(self, x) -> "Scalar":
        if isinstance(x, Scalar):
            if x.field is not self:
                raise FieldMismatch(f"{x.field} vs {self}")
            return x
        return Scalar(self, self.convert(x))

    def element(self, raw) -> "Scalar":
        return Scalar(self, raw)

    def convert(self, x):
        """Raw value for an int, string or (for QQ) Fraction."""
        if isinstance(x, Scalar):
            if x.field is not self:
                raise FieldMismatch(f"{x.field} vs {self}")
            return x.value
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, bool):
            x = int(x)
        if isinstance(x, int):
            return self.from_int(x)
        raise TypeError(f"cannot convert {x!r} into {self}")

    def is_zero(self, a) -> bool:
        return a == self.zero

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        if e < 0:
            a, e = self.inv(a), -e
        result = self.one
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    # --- finite-field only services
    def _require_finite(self):
        if not self.is_finite:
            raise InfiniteField(f"{self} is infinite")

    def raw_elements(self) -> list:
        self._require_finite()
        return [self.from_index(i) for i in range(self.order)]

    def elements(self) -> list["Scalar"]:
        return [Scalar(self, r) for r in self.raw_elements()]

    def index(self, a) -> int:
        raise NotImplementedError

    def from_index(self, i: int):
        raise NotImplementedError

    @functools.cached_property
    def _square_roots(self) -> dict:
        table = {}
        for r in reversed(self.raw_elements()):
            table[self.mul(r, r)] = r
        return table

    def sqrt(self, a):
        """A raw square root of ``a`` in this field, or None."""
        if not self.is_finite:
            return _rational_sqrt(a)
        return self._square_roots.get(a)

    @functools.cached_property
    def tables(self) -> "FieldTables":
        self._require_finite()
        if self.order > TABLE_LIMIT:
            raise ValueError(f"lookup tables limited to order <= {TABLE_LIMIT}")
        return FieldTables.build(self)


class RationalField(Field):
    def __init__(self):
        self.spec = FieldSpec(0)
        self.characteristic = 0
        self.degree = 1
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def from_int(self, n: int):
        return Fraction(n)

    def convert(self, x):
        if isinstance(x, Fraction):
            return x
        return super().convert(x)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return 1 / a

    def div(self, a, b):
        if b == 0:
            raise DivisionByZero("division by zero")
        return a / b

    def format(self, a) -> str:
        return str(a)

    def parse(self, text: str):
        return Fraction(text.strip())


class PrimeField(Field):
    def __init__(self, p: int):
        self.spec = FieldSpec(p)
        self.characteristic = p
        self.degree = 1
        self.zero = 0
        self.one = 1 % p
        self.p = p

    def from_int(self, n: int):
        return n % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def neg(self, a):
        return -a % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def index(self, a) -> int:
        return a

    def from_index(self, i: int):
        return i

    def format(self, a) -> str:
        return str(a)

    def parse(self, text: str):
        return int(text.strip()) % self.p


class ExtensionField(Field):
    """GF(p^k) as GF(p)[a]/(modulus)."""

    def __init__(self, spec: FieldSpec):
        self.spec = spec
        self.characteristic = p = spec.characteristic
        self.degree = k = spec.degree
        self.p = p
        self.modulus = spec.modulus
        self.zero = (0,) * k
        self.one = (1,) + (0,) * (k - 1)
        self._generator = (0, 1) + (0,) * (k - 2)

    @property
    def generator(self) -> "Scalar":
        return Scalar(self, self._generator)

    def from_int(self, n: int):
        return (n % self.p,) + (0,) * (self.degree - 1)

    def convert(self, x):
        if isinstance(x, (tuple, list)):
            if len(x) != self.degree:
                raise TypeError(f"expected {self.degree} coefficients, got {len(x)}")
            return tuple(int(c) % self.p for c in x)
        return super().convert(x)

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def neg(self, a):
        p = self.p
        return tuple(-x % p for x in a)

    def sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def mul(self, a, b):
        p, k, mod = self.p, self.degree, self.modulus
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        for i in range(2 * k - 2, k - 1, -1):
            c = prod[i] % p
            if c:
                for j in range(k):
                    prod[i - k + j] -= c * mod[j]
        return tuple(c % p for c in prod[:k])

    def inv(self, a):
        if a == self.zero:
            raise DivisionByZero("inverse of zero")
        return self.pow(a, self.order - 2)

    def index(self, a) -> int:
        i = 0
        for c in reversed(a):
            i = i * self.p + c
        return i

    def from_index(self, i: int):
        out = []
        for _ in range(self.degree):
            i, c = divmod(i, self.p)
            out.append(c)
        return tuple(out)

    def format(self, a) -> str:
        terms = []
        for e, c in enumerate(a):
            if not c:
                continue
            if e == 0:
                terms.append(str(c))
            else:
                mono = "a" if e == 1 else f"a^{e}"
                terms.append(mono if c == 1 else f"{c}{mono}")
        return "+".join(terms) if terms else "0"

    def parse(self, text: str):
        t = text.replace(" ", "")
        if not t:
            raise ValueError("empty element")
        coeffs = [0] * self.degree
        for term in t.replace("-", "+-").split("+"):
            if not term:
                continue
            m = re.fullmatch(r"(-?\d*)(a(?:\^(\d+))?)?", term)
            if not m:
                raise ValueError(f"bad element term {term!r}")
            cs, mono, es = m.groups()
            if mono is None:
                c, e = int(cs), 0
            else:
                c = -1 if cs == "-" else int(cs or 1)
                e = int(es or 1)
            power = self.pow(self._generator, e)
            coeffs = list(self.add(tuple(coeffs), self.mul(self.from_int(c), power)))
        return tuple(coeffs)


@functools.lru_cache(maxsize=None)
def _make_field(spec: FieldSpec) -> Field:
    if spec.characteristic == 0:
        return RationalField()
    if spec.degree == 1:
        return PrimeField(spec.characteristic)
    return ExtensionField(spec)


def make_field(spec: FieldSpec | str | int) -> Field:
    """Return the (cached, shared) field handle for ``spec``."""
    if isinstance(spec, Field):
        return spec
    if isinstance(spec, int):
        spec = FieldSpec(spec)
    elif isinstance(spec, str):
        spec = FieldSpec.parse(spec)
    return _make_field(_validate(spec))


QQ = make_field("QQ")


def GF(q: int, modulus: tuple[int, ...] | None = None) -> Field:
    """Finite field of order q (a prime power); modulus optional."""
    if q < 2:
        raise NonPrimeCharacteristic(f"{q} is not a prime power")
    for p in range(2, q + 1):
        if q % p == 0:
            break
    k, r = 0, q
    while r % p == 0:
        r //= p
        k += 1
    if r != 1:
        raise NonPrimeCharacteristic(f"{q} is not a prime power")
    return make_field(FieldSpec(p, k, modulus))


def embed_int(n: int, field: Field) -> "Scalar":
    return Scalar(field, field.from_int(n))


def enumerate_field(field: Field) -> list["Scalar"]:
    """All elements in index order; raises InfiniteField for QQ."""
    return field.elements()


def _rational_sqrt(a: Fraction):
    import math

    if a < 0:
        return None
    n, d = a.numerator, a.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


# ---------------------------------------------------------------------------
# quadratic extensions


class QuadraticExtension(NamedTuple):
    spec: FieldSpec
    field: Field
    embed: Callable[["Scalar"], "Scalar"]
    embed_raw: Callable


def quadratic_extension(field: Field) -> QuadraticExtension:
    """Field of order q^2 containing ``field`` (q = order of field).

    Over a prime field of odd order the modulus is ``x^2 - c`` with c the
    least quadratic non-residue; over GF(2) it is ``x^2 + x + 1``.  For
    GF(p^k) with k = 2 an absolute degree-4 extension is built and the
    base generator is sent to a root of the base modulus.
    """
    field._require_finite()
    p, k = field.characteristic, field.degree
    if 2 * k > MAX_EXTENSION_DEGREE:
        raise ValueError(f"quadratic extension of {field} exceeds degree cap")
    if k == 1:
        if p == 2:
            modulus = (1, 1, 1)
        else:
            squares = {x * x % p for x in range(p)}
            c = next(x for x in range(1, p) if x not in squares)
            modulus = (-c % p, 0, 1)
        ext = make_field(FieldSpec(p, 2, modulus))

        def embed_raw(a):
            return (a, 0)

    else:
        ext = make_field(FieldSpec(p, 2 * k))
        # image of the base generator: a root of the base modulus in ext
        mod = field.modulus
        root = None
        for r in ext.raw_elements():
            acc = ext.zero
            for c in reversed(mod):
                acc = ext.add(ext.mul(acc, r), ext.from_int(c))
            if acc == ext.zero:
                root = r
                break
        powers = [ext.pow(root, e) for e in range(k)]

        def embed_raw(a):
            acc = ext.zero
            for c, pw in zip(a, powers):
                acc = ext.add(acc, ext.mul(ext.from_int(c), pw))
            return acc

    def embed(x: "Scalar") -> "Scalar":
        if x.field is not field:
            raise FieldMismatch(f"{x.field} vs {field}")
        return Scalar(ext, embed_raw(x.value))

    return QuadraticExtension(ext.spec, ext, embed, embed_raw)


# ---------------------------------------------------------------------------
# scalars


class Scalar:
    """An element of a :class:`Field`; immutable and hashable."""

    __slots__ = ("field", "value")

    def __init__(self, field: Field, value):
        self.field = field
        self.value = value

    def _raw(self, other):
        if isinstance(other, Scalar):
            if other.field is not self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other.value
        if isinstance(other, int) or (
            isinstance(other, Fraction) and self.field.characteristic == 0
        ):
            return self.field.convert(other)
        return NotImplemented

    def _wrap(self, raw) -> "Scalar":
        return Scalar(self.field, raw)

    def __add__(self, other):
        b = self._raw(other)
        if b is NotImplemented:
            return b
        return self._wrap(self.field.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._raw(other)
        if b is NotImplemented:
            return b
        return self._wrap(self.field.sub(self.value, b))

    def __rsub__(self, other):
        b = self._raw(other)
        if b is NotImplemented:
            return b
        return self._wrap(self.field.sub(b, self.value))

    def __mul__(self, other):
        b = self._raw(other)
        if b is NotImplemented:
            return b
        return self._wrap(self.field.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._raw(other)
        if b is NotImplemented:
            return b
        return self._wrap(self.field.div(self.value, b))

    def __rtruediv__(self, other):
        b = self._raw(other)
        if b is NotImplemented:
            return b
        return self._wrap(self.field.div(b, self.value))

    def __neg__(self):
        return self._wrap(self.field.neg(self.value))

    def __pow__(self, e: int):
        return self._wrap(self.field.pow(self.value, e))

    def inv(self) -> "Scalar":
        return self._wrap(self.field.inv(self.value))

    def __bool__(self) -> bool:
        return self.value != self.field.zero

    def __eq__(self, other) -> bool:
        if isinstance(other, Scalar):
            return self.field is other.field and self.value == other.value
        if isinstance(other, (int, Fraction)):
            try:
                return self.value == self.field.convert(other)
            except TypeError:
                return False
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field.spec, self.value))

    def __repr__(self) -> str:
        return f"Scalar({self.field.format(self.value)!r}, {self.field.spec})"

    def __str__(self) -> str:
        return self.field.format(self.value)


# ---------------------------------------------------------------------------
# lookup tables for vectorised scans (elements as indices)


@dataclass(frozen=True)
class FieldTables:
    """Addition/multiplication tables on element indices (numpy int arrays)."""

    order: int
    add: np.ndarray
    mul: np.ndarray
    neg: np.ndarray
    inv: np.ndarray  # inv[0] is 0 by convention

    @classmethod
    def build(cls, field: Field) -> "FieldTables":
        q = field.order
        raws = field.raw_elements()
        add = np.empty((q, q), dtype=np.int64)
        mul = np.empty((q, q), dtype=np.int64)
        neg = np.empty(q, dtype=np.int64)
        inv = np.zeros(q, dtype=np.int64)
        for i, a in enumerate(raws):
            neg[i] = field.index(field.neg(a))
            if i:
                inv[i] = field.index(field.inv(a))
            for j in range(i, q):
                b = raws[j]
                add[i, j] = add[j, i] = field.index(field.add(a, b))
                mul[i, j] = mul[j, i] = field.index(field.mul(a, b))
        for arr in (add, mul, neg, inv):
            arr.setflags(write=False)
        return cls(q, add, mul, neg, inv)
