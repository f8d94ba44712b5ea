"""The coordinate projective line P(k^2).

Points are one-dimensional subspaces of k^2, stored by the canonical spanning
vector [1 : x] or [0 : 1].  A labeled arrow (C : A -> B) is the projection of A
onto B along C; on canonical representatives it is multiplication by

    |c, a| / |c, b|

so every arrow X -> Y is determined by the scalar ``factor`` with
``f(x) = factor * y`` on canonical reps.  Composites multiply factors.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .arrows import Arrow, LabeledArrow, ScalarArrow
from .errors import (
    ContextMismatch,
    NotComposable,
    NotEnumerable,
    ParseError,
    UndefinedCrossRatio,
    VectorNotInSource,
    ZeroVector,
)
from .scalars import FieldContext, Scalar


@dataclass(frozen=True)
class Vec2:
    x1: Scalar
    x2: Scalar

    def __post_init__(self):
        if self.x1.ctx != self.x2.ctx:
            raise ContextMismatch("vector components live in different fields")

    @classmethod
    def of(cls, ctx: FieldContext, x1, x2) -> Vec2:
        return cls(ctx(x1), ctx(x2))

    @property
    def ctx(self) -> FieldContext:
        return self.x1.ctx

    def __add__(self, other: Vec2) -> Vec2:
        return Vec2(self.x1 + other.x1, self.x2 + other.x2)

    def __sub__(self, other: Vec2) -> Vec2:
        return Vec2(self.x1 - other.x1, self.x2 - other.x2)

    def scale(self, s) -> Vec2:
        return Vec2(self.x1 * s, self.x2 * s)

    def is_zero(self) -> bool:
        return not self.x1 and not self.x2

    def __str__(self):
        return f"({self.x1},{self.x2})"


def det2(a: Vec2, b: Vec2) -> Scalar:
    """|a, b| = a1*b2 - a2*b1."""
    if a.ctx != b.ctx:
        raise ContextMismatch("det2 of vectors over different fields")
    return a.x1 * b.x2 - a.x2 * b.x1


@dataclass(frozen=True)
class ProjPoint:
    """A point [a1 : a2] of P(k^2), normalised to [1 : x] or [0 : 1]."""

    rep: Vec2

    @classmethod
    def span(cls, v: Vec2) -> ProjPoint:
        if v.is_zero():
            raise ZeroVector("the zero vector spans no point")
        if v.x1:
            return cls(Vec2(v.x1.ctx.one, v.x2 / v.x1))
        return cls(Vec2(v.x1.ctx.zero, v.x1.ctx.one))

    @classmethod
    def of(cls, ctx: FieldContext, a1, a2) -> ProjPoint:
        return cls.span(Vec2.of(ctx, a1, a2))

    @classmethod
    def affine(cls, x: Scalar) -> ProjPoint:
        """[1 : x]."""
        return cls(Vec2(x.ctx.one, x))

    @classmethod
    def parse(cls, ctx: FieldContext, text: str) -> ProjPoint:
        """Parse ``"a1:a2"``; a bare ``"x"`` is shorthand for ``"1:x"``."""
        text = text.strip()
        parts = text.split(":")
        if len(parts) == 1:
            return cls.affine(ctx.parse(parts[0]))
        if len(parts) != 2:
            raise ParseError(f"cannot parse point {text!r}")
        return cls.span(Vec2(ctx.parse(parts[0]), ctx.parse(parts[1])))

    @property
    def ctx(self) -> FieldContext:
        return self.rep.ctx

    @property
    def is_infinity(self) -> bool:
        return not self.rep.x1

    def affine_coordinate(self) -> Scalar | None:
        """x for [1 : x]; None for V = [0 : 1]."""
        return None if self.is_infinity else self.rep.x2

    def contains(self, v: Vec2) -> bool:
        return not v.is_zero() and not det2(self.rep, v)

    def __str__(self):
        return f"{self.rep.x1}:{self.rep.x2}"


def V(ctx: FieldContext) -> ProjPoint:
    return ProjPoint.of(ctx, 0, 1)


def H(ctx: FieldContext) -> ProjPoint:
    return ProjPoint.of(ctx, 1, 0)


def D(ctx: FieldContext) -> ProjPoint:
    return ProjPoint.of(ctx, 1, 1)


def enumerate_points(ctx: FieldContext) -> list[ProjPoint]:
    """V first, then [1 : x] for x = 0, 1, ..., p-1."""
    return list(iter_points(ctx))


def iter_points(ctx: FieldContext) -> Iterator[ProjPoint]:
    if not ctx.is_prime:
        raise NotEnumerable("P(Q^2) cannot be enumerated")
    yield V(ctx)
    for x in range(ctx.p):
        yield ProjPoint.affine(ctx(x))


def arrow_factor(f: Arrow) -> Scalar:
    """The scalar s with f(src.rep) = s * dst.rep."""
    if isinstance(f, ScalarArrow):
        return f.lam
    a, b, c = f.src.rep, f.dst.rep, f.dir.rep
    den = det2(c, b)
    assert den, "direction coincides with target"
    return det2(c, a) / den


def arrow_with_factor(src: ProjPoint, dst: ProjPoint, factor: Scalar) -> Arrow:
    """The unique arrow src -> dst taking src.rep to factor * dst.rep.

    For src != dst this is the projection along the line spanned by
    ``src.rep - factor * dst.rep``.
    """
    if src == dst:
        return ScalarArrow(src, factor)
    return LabeledArrow(src, dst, ProjPoint.span(src.rep - dst.rep.scale(factor)))


def apply_arrow(f: Arrow, v: Vec2) -> Vec2:
    """Evaluate the linear isomorphism f on a vector spanning its source."""
    if v.is_zero():
        raise ZeroVector("cannot apply an arrow to the zero vector")
    if not f.src.contains(v):
        raise VectorNotInSource(f"{v} does not span {f.src}")
    if isinstance(f, ScalarArrow):
        return v.scale(f.lam)
    b, c = f.dst.rep, f.dir.rep
    return b.scale(det2(c, v) / det2(c, b))


def compose(f: Arrow, g: Arrow) -> Arrow:
    """f then g."""
    if f.dst != g.src:
        raise NotComposable(f"{f} ends at {f.dst} but {g} starts at {g.src}")
    return arrow_with_factor(f.src, g.dst, arrow_factor(f) * arrow_factor(g))


def compose_brute_force(f: Arrow, g: Arrow, candidates) -> Arrow:
    """Composite found by testing every candidate label for equality of linear maps."""
    if f.dst != g.src:
        raise NotComposable(f"{f} ends at {f.dst} but {g} starts at {g.src}")
    a = f.src.rep
    target = apply_arrow(g, apply_arrow(f, a))
    if f.src == g.dst:
        return ScalarArrow(f.src, target.x1 / a.x1 if a.x1 else target.x2 / a.x2)
    hits = []
    for c in candidates:
        if c in (f.src, g.dst):
            continue
        h = LabeledArrow(f.src, g.dst, c)
        if apply_arrow(h, a) == target:
            hits.append(h)
    if len(hits) != 1:
        raise NotComposable(f"expected exactly one matching label, found {len(hits)}")
    return hits[0]


def cross_ratio(A: ProjPoint, B: ProjPoint, C: ProjPoint, D: ProjPoint) -> Scalar:
    """(A,B;C,D) = |a,c| |b,d| / (|a,d| |b,c|).

    Defined whenever A != D and B != C.  Equals 1 if C = D or A = B, and 0 if
    D = B or C = A.
    """
    if A == D or B == C:
        raise UndefinedCrossRatio(f"({A},{B};{C},{D}) needs A != D and B != C")
    a, b, c, d = A.rep, B.rep, C.rep, D.rep
    return det2(a, c) * det2(b, d) / (det2(a, d) * det2(b, c))


class CoordinateLine:
    """P(k^2) with composition computed on demand; works over any context."""

    def __init__(self, ctx: FieldContext):
        self.ctx = ctx

    def point(self, text: str) -> ProjPoint:
        return ProjPoint.parse(self.ctx, text)

    def iter_points(self) -> Iterator[ProjPoint]:
        """Enumeration order for prime fields; V, H, D, [1:2], [1:3], ... otherwise."""
        if self.ctx.is_prime:
            yield from iter_points(self.ctx)
            return
        yield V(self.ctx)
        x = 0
        while True:
            yield ProjPoint.affine(self.ctx(x))
            x += 1

    def compose(self, f: Arrow, g: Arrow) -> Arrow:
        return compose(f, g)

    def cross_ratio(self, A, B, C, D) -> Scalar:
        return cross_ratio(A, B, C, D)

    def __eq__(self, other):
        return isinstance(other, CoordinateLine) and other.ctx == self.ctx

    def __hash__(self):
        return hash(("CoordinateLine", self.ctx))

    def __repr__(self):
        return f"CoordinateLine({self.ctx})"
