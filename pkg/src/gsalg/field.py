"""Exact scalar arithmetic over GF(2), GF(p), and the rationals.

A FieldDescriptor carries the coefficient-field choice and implements the
arithmetic on raw values: python ints in [0, p) for the finite fields,
fractions.Fraction for the rationals.  Polynomials and the linear-algebra
engines work on raw values tagged by a shared descriptor; the Scalar wrapper
exists for callers that want values carrying their own field tag.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import DivisionByZero, InvalidParams, MixedFields

Coeff = Union[int, Fraction]

BINARY = "binary"
PRIME = "prime"
RATIONAL = "rational"

MAX_PRIME = 2**31


def _is_prime(n: int) -> bool:
    # deterministic Miller-Rabin; bases 2,3,5,7 decide everything below 3215031751
    if n < 2:
        return False
    for small in (2, 3, 5, 7):
        if n % small == 0:
            return n == small
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class FieldDescriptor:
    """Coefficient field: kind is one of 'binary', 'prime', 'rational'."""

    kind: str
    p: int | None = None

    def __post_init__(self):
        if self.kind == BINARY:
            if self.p != 2:
                raise InvalidParams("binary field must have p = 2")
        elif self.kind == PRIME:
            if not isinstance(self.p, int) or not 2 < self.p < MAX_PRIME:
                raise InvalidParams("prime field needs an integer 2 < p < 2**31")
            if not _is_prime(self.p):
                raise InvalidParams("%d is not prime" % self.p)
        elif self.kind == RATIONAL:
            if self.p is not None:
                raise InvalidParams("rational field takes no modulus")
        else:
            raise InvalidParams("unknown field kind %r" % (self.kind,))

    # -- raw-value arithmetic ------------------------------------------------

    @property
    def zero(self) -> Coeff:
        return 0 if self.p is not None else Fraction(0)

    @property
    def one(self) -> Coeff:
        return 1 if self.p is not None else Fraction(1)

    def from_int(self, k: int) -> Coeff:
        """Canonical image of the integer k."""
        if self.p is not None:
            return k % self.p
        return Fraction(k)

    def coerce(self, x) -> Coeff:
        """Canonical image of an int or Fraction (Fractions over GF(p) via inverse)."""
        if isinstance(x, bool) or not isinstance(x, (int, Fraction)):
            raise InvalidParams("coefficient must be int or Fraction, got %r" % (x,))
        if self.p is None:
            return Fraction(x)
        if isinstance(x, Fraction):
            return self.div(x.numerator % self.p, x.denominator % self.p)
        return x % self.p

    def is_zero(self, a: Coeff) -> bool:
        return a == 0

    def add(self, a: Coeff, b: Coeff) -> Coeff:
        return (a + b) % self.p if self.p is not None else a + b

    def sub(self, a: Coeff, b: Coeff) -> Coeff:
        return (a - b) % self.p if self.p is not None else a - b

    def neg(self, a: Coeff) -> Coeff:
        return (-a) % self.p if self.p is not None else -a

    def mul(self, a: Coeff, b: Coeff) -> Coeff:
        return (a * b) % self.p if self.p is not None else a * b

    def inv(self, a: Coeff) -> Coeff:
        if a == 0:
            raise DivisionByZero("inverse of zero in %s" % self)
        if self.p is not None:
            return pow(a, -1, self.p)
        return 1 / a

    def div(self, a: Coeff, b: Coeff) -> Coeff:
        return self.mul(a, self.inv(b))

    def __str__(self) -> str:
        if self.kind == BINARY:
            return "gf2"
        if self.kind == PRIME:
            return "gf%d" % self.p
        return "q"


GF2 = FieldDescriptor(BINARY, 2)
QQ = FieldDescriptor(RATIONAL)


def GF(p: int) -> FieldDescriptor:
    """The field with p elements (p prime, p < 2**31)."""
    if p == 2:
        return GF2
    return FieldDescriptor(PRIME, p)


def parse_field(text: str) -> FieldDescriptor:
    """Parse a field spec string: 'gf2', 'gf<p>', or 'q'."""
    t = text.strip().lower()
    if t in ("q", "qq", "rational"):
        return QQ
    if t.startswith("gf"):
        try:
            p = int(t[2:])
        except ValueError:
            raise InvalidParams("bad field spec %r" % text) from None
        return GF(p)
    raise InvalidParams("bad field spec %r (expected gf2, gf<p>, or q)" % text)


@dataclass(frozen=True)
class Scalar:
    """A field element carrying its own field tag."""

    value: Coeff
    field: FieldDescriptor

    def _peer(self, other: "Scalar") -> Coeff:
        if not isinstance(other, Scalar):
            raise MixedFields("expected a Scalar, got %r" % (other,))
        if other.field != self.field:
            raise MixedFields("cannot combine %s with %s" % (self.field, other.field))
        return other.value

    def __add__(self, other):
        return Scalar(self.field.add(self.value, self._peer(other)), self.field)

    def __sub__(self, other):
        return Scalar(self.field.sub(self.value, self._peer(other)), self.field)

    def __mul__(self, other):
        return Scalar(self.field.mul(self.value, self._peer(other)), self.field)

    def __truediv__(self, other):
        return Scalar(self.field.div(self.value, self._peer(other)), self.field)

    def __neg__(self):
        return Scalar(self.field.neg(self.value), self.field)

    def is_zero(self) -> bool:
        return self.field.is_zero(self.value)

    def __str__(self) -> str:
        return str(self.value)


def from_integer(k: int, field: FieldDescriptor) -> Scalar:
    """The canonical image of the integer k as a tagged Scalar."""
    return Scalar(field.from_int(k), field)


def scalar_arith(a: Scalar, b: Scalar, op: str) -> Scalar:
    """Apply 'add' | 'sub' | 'mul' | 'div' to two scalars of one field."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise InvalidParams("unknown scalar op %r" % op)
