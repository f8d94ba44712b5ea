"""Matrices acting on P(k^2).

A matrix acts on column vectors, so ``[[a11, a12], [a21, a22]]`` sends [1 : x]
to [a11 + a12 x : a21 + a22 x], i.e. x -> (a21 + a22 x) / (a11 + a12 x).  Under
this action ``induced(M @ N)`` is "N, then M"; :meth:`ProjMatrix.then` gives the
left-to-right product so that ``induced(M.then(N)) == induced(M).then(induced(N))``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .abstract_line import FiniteLine, build_coordinate_model
from .coordinate_line import ProjPoint, Vec2, det2
from .errors import BoundExceeded, ContextMismatch, NotAProjectivity, ParseError, SingularMatrix
from .fundamental import Projectivity, is_functorial
from .scalars import FieldContext, Scalar

PGL_BOUND = 31


class _Infinity:
    """The affine coordinate of V = [0 : 1]."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"

    __str__ = __repr__


INFINITY = _Infinity()


@dataclass(frozen=True)
class Matrix2:
    a11: Scalar
    a12: Scalar
    a21: Scalar
    a22: Scalar

    def __post_init__(self):
        if len({e.ctx for e in self.entries}) != 1:
            raise ContextMismatch("matrix entries live in different fields")

    @classmethod
    def of(cls, ctx: FieldContext, a11, a12, a21, a22) -> Matrix2:
        return cls(ctx(a11), ctx(a12), ctx(a21), ctx(a22))

    @classmethod
    def identity(cls, ctx: FieldContext) -> Matrix2:
        return cls.of(ctx, 1, 0, 0, 1)

    @classmethod
    def parse(cls, ctx: FieldContext, text: str) -> Matrix2:
        """``"a11,a12;a21,a22"``."""
        try:
            r1, r2 = text.split(";")
            (a11, a12), (a21, a22) = r1.split(","), r2.split(",")
        except ValueError as exc:
            raise ParseError(f"cannot parse matrix {text!r}") from exc
        return cls(*(ctx.parse(e) for e in (a11, a12, a21, a22)))

    @property
    def ctx(self) -> FieldContext:
        return self.a11.ctx

    @property
    def entries(self) -> tuple[Scalar, Scalar, Scalar, Scalar]:
        return (self.a11, self.a12, self.a21, self.a22)

    def det(self) -> Scalar:
        return self.a11 * self.a22 - self.a12 * self.a21

    def __matmul__(self, other: Matrix2) -> Matrix2:
        return Matrix2(
            self.a11 * other.a11 + self.a12 * other.a21,
            self.a11 * other.a12 + self.a12 * other.a22,
            self.a21 * other.a11 + self.a22 * other.a21,
            self.a21 * other.a12 + self.a22 * other.a22,
        )

    def scale(self, s) -> Matrix2:
        return Matrix2(*(e * s for e in self.entries))

    def apply(self, v: Vec2) -> Vec2:
        return Vec2(self.a11 * v.x1 + self.a12 * v.x2, self.a21 * v.x1 + self.a22 * v.x2)

    def inverse(self) -> Matrix2:
        d = self.det()
        if not d:
            raise SingularMatrix("matrix has zero determinant")
        return Matrix2(self.a22, -self.a12, -self.a21, self.a11).scale(d.inv())

    def __str__(self):
        return f"{self.a11},{self.a12};{self.a21},{self.a22}"


@dataclass(frozen=True)
class ProjMatrix:
    """A matrix modulo k*, scaled so its first nonzero entry (a11, a12, a21, a22 order) is 1."""

    rep: Matrix2

    @classmethod
    def of(cls, m: Matrix2) -> ProjMatrix:
        if not m.det():
            raise SingularMatrix(f"{m} is singular")
        lead = next(e for e in m.entries if e)
        return cls(m.scale(lead.inv()))

    def __matmul__(self, other: ProjMatrix) -> ProjMatrix:
        return ProjMatrix.of(self.rep @ other.rep)

    def then(self, other: ProjMatrix) -> ProjMatrix:
        """Act by self, then by other."""
        return ProjMatrix.of(other.rep @ self.rep)

    def inverse(self) -> ProjMatrix:
        return ProjMatrix.of(self.rep.inverse())

    @property
    def ctx(self) -> FieldContext:
        return self.rep.ctx

    def __str__(self):
        return str(self.rep)


def _as_matrix(f) -> Matrix2:
    m = f.rep if isinstance(f, ProjMatrix) else f
    if not m.det():
        raise SingularMatrix(f"{m} is singular")
    return m


def act(f: Matrix2 | ProjMatrix, P: ProjPoint) -> ProjPoint:
    """The image of P under the linear automorphism f."""
    m = _as_matrix(f)
    return ProjPoint.span(m.apply(P.rep))


def fractional_linear(f: Matrix2 | ProjMatrix, x: Scalar):
    """x -> (a21 + a22 x) / (a11 + a12 x); INFINITY when the denominator vanishes."""
    m = _as_matrix(f)
    den = m.a11 + m.a12 * x
    if not den:
        return INFINITY
    return (m.a21 + m.a22 * x) / den


@lru_cache(maxsize=64)
def _model(p: int) -> FiniteLine:
    return build_coordinate_model(p)


def induced_projectivity(f: Matrix2 | ProjMatrix, model: FiniteLine | None = None) -> Projectivity:
    """P(f) on the coordinate model, certified functorial."""
    m = _as_matrix(f)
    if not m.ctx.is_prime:
        raise ContextMismatch("induced projectivities are tabulated over prime fields only")
    model = model if model is not None else _model(m.ctx.p)
    mapping = {q: str(act(m, ProjPoint.parse(m.ctx, q))) for q in model.points}
    phi = Projectivity.from_dict(model, model, mapping)
    if not is_functorial(phi):
        raise NotAProjectivity(f"P({m}) failed the functoriality check")
    return phi


def matrix_from_images(A: ProjPoint, B: ProjPoint, C: ProjPoint) -> Matrix2:
    """The matrix [a | lambda b], lambda = -|c,a|/|c,b|, sending H, V, D to A, B, C."""
    a, b, c = A.rep, B.rep, C.rep
    lam = -det2(c, a) / det2(c, b)
    return Matrix2(a.x1, lam * b.x1, a.x2, lam * b.x2)


def matrix_of_projectivity(phi: Projectivity) -> ProjMatrix:
    """Read phi at H, V, D, build the tracking matrix, then check it on every point."""
    model = phi.src
    ctx = model.ctx
    if phi.dst is not model and phi.dst != model:
        raise NotAProjectivity("matrix tracking needs a self-map of one coordinate model")
    try:
        A, B, C = (ProjPoint.parse(ctx, phi(q)) for q in ("1:0", "0:1", "1:1"))
        if len({A, B, C}) != 3:
            raise NotAProjectivity("images of H, V, D are not distinct")
        m = ProjMatrix.of(matrix_from_images(A, B, C))
    except (ParseError, SingularMatrix) as exc:
        raise NotAProjectivity(str(exc)) from exc
    for q in model.points:
        if str(act(m, ProjPoint.parse(ctx, q))) != phi(q):
            raise NotAProjectivity(f"{phi} is not tracked by a matrix (disagrees at {q})")
    return m


def enumerate_pgl(p: int, bound: int = PGL_BOUND) -> list[ProjMatrix]:
    """PGL(2, p) in canonical form: p^3 - p elements, lexicographic order of entries."""
    if p > bound:
        raise BoundExceeded(f"PGL(2, {p}) enumeration exceeds bound {bound}")
    ctx = FieldContext.prime(p)
    out = []
    # leading 1 at a11
    for b in range(p):
        for c in range(p):
            for d in range(p):
                if (d - b * c) % p:
                    out.append(ProjMatrix(Matrix2.of(ctx, 1, b, c, d)))
    # a11 = 0, a12 = 1, determinant -c
    for c in range(1, p):
        for d in range(p):
            out.append(ProjMatrix(Matrix2.of(ctx, 0, 1, c, d)))
    out.sort(key=lambda g: tuple(e.value for e in g.rep.entries))
    return out


def pgl_cayley_table(p: int) -> tuple[list[ProjMatrix], np.ndarray]:
    """Elements and the table ``T[i, j] = index of elems[i] @ elems[j]``."""
    elems = enumerate_pgl(p)
    pos = {g: i for i, g in enumerate(elems)}
    table = np.array([[pos[g @ h] for h in elems] for g in elems], dtype=np.int64)
    return elems, table
