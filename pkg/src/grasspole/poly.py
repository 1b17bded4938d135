"""Dense univariate polynomials in ``s`` over a :class:`~grasspole.fields.Field`."""

from __future__ import annotations

import math
from typing import Iterable

from .errors import DivisionByZero, FieldMismatch, InfiniteField, ZeroPolynomial
from .fields import Field, Scalar

NEG_INF = float("-inf")
"""Degree of the zero polynomial."""


class BinomialTable:
    """Cache of integer binomials C(j, i); reduction into a field is separate.

    Binomials are always computed over the integers and reduced afterwards,
    because factorials vanish in positive characteristic.
    """

    def __init__(self):
        self._cache: dict[tuple[int, int], int] = {}

    def __call__(self, j: int, i: int) -> int:
        if i < 0 or j < 0 or i > j:
            return 0
        key = (j, i)
        v = self._cache.get(key)
        if v is None:
            v = self._cache[key] = math.comb(j, i)
        return v

    def in_field(self, j: int, i: int, field: Field) -> Scalar:
        return Scalar(field, field.from_int(self(j, i)))


BINOMIALS = BinomialTable()


def binomial_in_field(j: int, i: int, field: Field) -> Scalar:
    return BINOMIALS.in_field(j, i, field)


def falling_factorial(j: int, i: int) -> int:
    out = 1
    for k in range(i):
        out *= j - k
    return out


class Poly:
    """Immutable polynomial with ascending raw coefficients ``c``.

    ``c`` never has trailing zeros; the zero polynomial has ``c == ()``.
    """

    __slots__ = ("field", "c")

    def __init__(self, field: Field, coeffs: Iterable = ()):
        conv = field.convert
        c = [conv(x) for x in coeffs]
        zero = field.zero
        while c and c[-1] == zero:
            c.pop()
        self.field = field
        self.c = tuple(c)

    @classmethod
    def _raw(cls, field: Field, c: list | tuple) -> "Poly":
        zero = field.zero
        c = list(c)
        while c and c[-1] == zero:
            c.pop()
        obj = object.__new__(cls)
        obj.field = field
        obj.c = tuple(c)
        return obj

    # --- constructors
    @classmethod
    def zero(cls, field: Field) -> "Poly":
        return cls._raw(field, ())

    @classmethod
    def one(cls, field: Field) -> "Poly":
        return cls._raw(field, (field.one,))

    @classmethod
    def const(cls, field: Field, value) -> "Poly":
        return cls._raw(field, (field.convert(value),))

    @classmethod
    def monomial(cls, field: Field, degree: int, coeff=1) -> "Poly":
        return cls._raw(field, [field.zero] * degree + [field.convert(coeff)])

    @classmethod
    def s(cls, field: Field) -> "Poly":
        return cls.monomial(field, 1)

    # --- inspection
    @property
    def degree(self) -> int | float:
        return len(self.c) - 1 if self.c else NEG_INF

    @property
    def coeffs(self) -> list[Scalar]:
        return [Scalar(self.field, v) for v in self.c]

    def coeff(self, k: int) -> Scalar:
        v = self.c[k] if 0 <= k < len(self.c) else self.field.zero
        return Scalar(self.field, v)

    def padded(self, length: int) -> list:
        """Raw coefficients 0..length-1 (zero padded)."""
        if len(self.c) > length:
            raise ValueError(f"degree {self.degree} exceeds {length - 1}")
        return list(self.c) + [self.field.zero] * (length - len(self.c))

    @property
    def leading(self) -> Scalar:
        if not self.c:
            raise ZeroPolynomial("zero polynomial has no leading coefficient")
        return Scalar(self.field, self.c[-1])

    def is_zero(self) -> bool:
        return not self.c

    def is_constant(self) -> bool:
        return len(self.c) <= 1

    def is_monomial(self) -> bool:
        """Nonzero with exactly one nonzero coefficient."""
        zero = self.field.zero
        return sum(1 for v in self.c if v != zero) == 1

    def __bool__(self) -> bool:
        return bool(self.c)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.field is other.field and self.c == other.c
        if isinstance(other, (int, Scalar)):
            return self == self._lift(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field.spec, self.c))

    # --- arithmetic
    def _lift(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.field is not self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other
        if isinstance(other, Scalar):
            if other.field is not self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return Poly._raw(self.field, (other.value,))
        if isinstance(other, int):
            return Poly._raw(self.field, (self.field.from_int(other),))
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        f = self.field
        a, b = self.c, other.c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, v in enumerate(b):
            out[i] = f.add(out[i], v)
        return Poly._raw(f, out)

    __radd__ = __add__

    def __neg__(self):
        f = self.field
        return Poly._raw(f, [f.neg(v) for v in self.c])

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        f = self.field
        a, b = self.c, other.c
        if not a or not b:
            return Poly._raw(f, ())
        out = [f.zero] * (len(a) + len(b) - 1)
        add, mul, zero = f.add, f.mul, f.zero
        for i, x in enumerate(a):
            if x == zero:
                continue
            for j, y in enumerate(b):
                out[i + j] = add(out[i + j], mul(x, y))
        return Poly._raw(f, out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Poly":
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.one(self.field)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def scale(self, k) -> "Poly":
        f = self.field
        kv = f.convert(k)
        return Poly._raw(f, [f.mul(kv, v) for v in self.c])

    def shift(self, k: int) -> "Poly":
        """Multiply by s^k."""
        if not self.c:
            return self
        return Poly._raw(self.field, [self.field.zero] * k + list(self.c))

    def __call__(self, x) -> Scalar:
        return self.eval(x)

    def eval(self, x) -> Scalar:
        f = self.field
        xv = f.convert(x)
        acc = f.zero
        for v in reversed(self.c):
            acc = f.add(f.mul(acc, xv), v)
        return Scalar(f, acc)

    def monic(self) -> "Poly":
        if not self.c:
            raise ZeroPolynomial("cannot normalize the zero polynomial")
        f = self.field
        inv = f.inv(self.c[-1])
        return Poly._raw(f, [f.mul(inv, v) for v in self.c])

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        other = self._lift(other)
        if not other.c:
            raise DivisionByZero("polynomial division by zero")
        f = self.field
        r = list(self.c)
        db = len(other.c) - 1
        inv_lead = f.inv(other.c[-1])
        q = [f.zero] * max(len(r) - db, 0)
        zero = f.zero
        for k in range(len(r) - 1, db - 1, -1):
            coef = r[k]
            if coef == zero:
                continue
            t = f.mul(coef, inv_lead)
            q[k - db] = t
            for i, bv in enumerate(other.c):
                r[k - db + i] = f.sub(r[k - db + i], f.mul(t, bv))
        return Poly._raw(f, q), Poly._raw(f, r[:db] if db > 0 else [])

    def __divmod__(self, other):
        return self.divmod(other)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = self.divmod(other)
        if r.c:
            raise ArithmeticError("inexact polynomial division")
        return q

    def map_coeffs(self, fn, field: Field) -> "Poly":
        """Apply a raw-value map into ``field`` (e.g. a field embedding)."""
        return Poly._raw(field, [fn(v) for v in self.c])

    # --- derivatives
    def hasse(self, i: int) -> "Poly":
        return hasse_derivative(self, i)

    def derivative(self, i: int = 1) -> "Poly":
        return classical_derivative(self, i)

    # --- display
    def __str__(self) -> str:
        f = self.field
        if not self.c:
            return "0"
        terms = []
        for e in range(len(self.c) - 1, -1, -1):
            v = self.c[e]
            if v == f.zero:
                continue
            cs = f.format(v)
            if "+" in cs or "/" in cs or cs.startswith("-"):
                cs = f"({cs})"
            if e == 0:
                terms.append(cs)
                continue
            mono = "s" if e == 1 else f"s^{e}"
            terms.append(mono if v == f.one else f"{cs}*{mono}")
        return " + ".join(terms)

    def __repr__(self) -> str:
        return f"Poly({self}, {self.field.spec})"


def hasse_derivative(u: Poly, i: int) -> Poly:
    """i-th Hasse derivative: coefficient j-i of the result is C(j,i) u_j."""
    f = u.field
    out = [f.mul(f.from_int(BINOMIALS(j, i)), u.c[j]) for j in range(i, len(u.c))]
    return Poly._raw(f, out)


def classical_derivative(u: Poly, i: int) -> Poly:
    f = u.field
    out = [f.mul(f.from_int(falling_factorial(j, i)), u.c[j]) for j in range(i, len(u.c))]
    return Poly._raw(f, out)


def poly_gcd(f: Poly, g: Poly) -> Poly:
    """Monic gcd (zero if both inputs are zero)."""
    a, b = f, g
    while b:
        a, b = b, a % b
    return a.monic() if a else a


def roots_in_field(f: Poly, field: Field | None = None) -> list[tuple[Scalar, int]]:
    """Roots of ``f`` in its (finite) field with multiplicities.

    Found by evaluating at every element and dividing out repeated linear
    factors.  ``field`` may be given only as a consistency check.
    """
    F = f.field
    if field is not None and field is not F:
        raise FieldMismatch(f"{F} vs {field}")
    if not F.is_finite:
        raise InfiniteField("root search needs a finite field")
    if not f:
        raise ZeroPolynomial("every element is a root of the zero polynomial")
    out = []
    rest = f
    for r in F.raw_elements():
        if rest.degree < 1:
            break
        lin = Poly._raw(F, (F.neg(r), F.one))
        mult = 0
        while rest.degree >= 1:
            q, rem = rest.divmod(lin)
            if rem:
                break
            rest = q
            mult += 1
        if mult:
            out.append((Scalar(F, r), mult))
    return out
