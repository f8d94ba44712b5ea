"""Exact scalars: residues modulo a prime, or rationals."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Union

from .errors import ContextMismatch, DivisionByZero, NotEnumerable, NotPrime, ParseError

MAX_PRIME = 2**31

PRIME = "prime"
RATIONAL = "rational"


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


@dataclass(frozen=True)
class FieldContext:
    """The ground field: GF(p) when ``kind == "prime"``, else the rationals."""

    kind: str
    p: int | None = None

    def __post_init__(self):
        if self.kind == PRIME:
            if not isinstance(self.p, int) or isinstance(self.p, bool):
                raise NotPrime(f"modulus must be an integer, got {self.p!r}")
            if self.p > MAX_PRIME:
                raise NotPrime(f"modulus {self.p} exceeds supported bound 2^31")
            if not is_prime(self.p):
                raise NotPrime(f"{self.p} is not prime")
        elif self.kind == RATIONAL:
            if self.p is not None:
                raise ValueError("rational context takes no modulus")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @classmethod
    def prime(cls, p: int) -> FieldContext:
        return cls(PRIME, p)

    @classmethod
    def rational(cls) -> FieldContext:
        return cls(RATIONAL)

    @property
    def is_prime(self) -> bool:
        return self.kind == PRIME

    def __call__(self, value) -> Scalar:
        return Scalar.of(self, value)

    @property
    def zero(self) -> Scalar:
        return Scalar.of(self, 0)

    @property
    def one(self) -> Scalar:
        return Scalar.of(self, 1)

    def parse(self, text: str) -> Scalar:
        """Parse ``"3"``, ``"-1"`` or ``"num/den"``."""
        text = text.strip()
        try:
            if self.is_prime:
                if "/" in text:
                    num, den = text.split("/")
                    return Scalar.of(self, int(num)) / Scalar.of(self, int(den))
                return Scalar.of(self, int(text))
            return Scalar.of(self, Fraction(text))
        except (ValueError, ZeroDivisionError) as exc:
            if isinstance(exc, DivisionByZero):
                raise
            raise ParseError(f"cannot parse scalar {text!r}") from exc

    def __str__(self):
        return f"GF({self.p})" if self.is_prime else "Q"


ScalarLike = Union["Scalar", int, Fraction]


@dataclass(frozen=True, slots=True)
class Scalar:
    """An element of the field ``ctx`` held in canonical form.

    Prime fields store the residue in ``[0, p)``; rationals store a reduced
    ``Fraction`` (positive denominator).  Plain ints are coerced in arithmetic.
    """

    ctx: FieldContext
    value: int | Fraction

    @staticmethod
    def of(ctx: FieldContext, value) -> Scalar:
        if isinstance(value, Scalar):
            if value.ctx != ctx:
                raise ContextMismatch(f"{value.ctx} vs {ctx}")
            return value
        if ctx.is_prime:
            if isinstance(value, Fraction):
                if value.denominator % ctx.p == 0:
                    raise DivisionByZero(f"denominator of {value} vanishes mod {ctx.p}")
                num = value.numerator % ctx.p
                return Scalar(ctx, num * pow(value.denominator, -1, ctx.p) % ctx.p)
            return Scalar(ctx, int(value) % ctx.p)
        return Scalar(ctx, Fraction(value))

    def _coerce(self, other) -> Scalar:
        if isinstance(other, Scalar):
            if other.ctx != self.ctx:
                raise ContextMismatch(f"cannot combine {self.ctx} with {other.ctx}")
            return other
        if isinstance(other, (int, Fraction)):
            return Scalar.of(self.ctx, other)
        return NotImplemented

    def _new(self, value) -> Scalar:
        if self.ctx.is_prime:
            return Scalar(self.ctx, value % self.ctx.p)
        return Scalar(self.ctx, value)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._new(self.value + other.value)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._new(self.value - other.value)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._new(self.value * other.value)

    __rmul__ = __mul__

    def __neg__(self):
        return self._new(-self.value)

    def inv(self) -> Scalar:
        if not self:
            raise DivisionByZero(f"0 has no inverse in {self.ctx}")
        if self.ctx.is_prime:
            return Scalar(self.ctx, pow(self.value, -1, self.ctx.p))
        return Scalar(self.ctx, 1 / self.value)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inv()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inv()

    def __pow__(self, n: int):
        if n < 0:
            return self.inv() ** -n
        if self.ctx.is_prime:
            return Scalar(self.ctx, pow(self.value, n, self.ctx.p))
        return Scalar(self.ctx, self.value**n)

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.ctx == other.ctx and self.value == other.value
        if isinstance(other, (int, Fraction)):
            try:
                return self == Scalar.of(self.ctx, other)
            except DivisionByZero:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx, self.value))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        if self.ctx.is_prime:
            return self.value
        if self.value.denominator != 1:
            raise ValueError(f"{self.value} is not integral")
        return int(self.value)

    def __str__(self):
        if self.ctx.is_prime:
            return str(self.value)
        return f"{self.value.numerator}/{self.value.denominator}"

    def __repr__(self):
        return f"Scalar({self}, {self.ctx})"


def scalar_arith(op: str, x: Scalar, y: Scalar | None = None):
    """Dispatch one field operation by name (add, sub, mul, div, neg, inv, eq)."""
    if op == "neg":
        return -x
    if op == "inv":
        return x.inv()
    if y is None:
        raise TypeError(f"{op} needs two operands")
    if x.ctx != y.ctx:
        raise ContextMismatch(f"cannot combine {x.ctx} with {y.ctx}")
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    if op == "eq":
        return x == y
    raise ValueError(f"unknown operation {op!r}")


def enumerate_scalars(ctx: FieldContext) -> list[Scalar]:
    """All elements of GF(p) in the order 0, 1, ..., p-1."""
    return list(iter_scalars(ctx))


def iter_scalars(ctx: FieldContext) -> Iterator[Scalar]:
    if not ctx.is_prime:
        raise NotEnumerable("the rational field cannot be enumerated")
    for v in range(ctx.p):
        yield Scalar(ctx, v)
