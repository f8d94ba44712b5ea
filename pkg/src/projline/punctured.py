"""Affine and vector structure on a line with one point removed.

Everything goes through the chart h_{A,B,C}: X -> (A,B;C,X), which sends B to
0 and C to 1 and is defined on L minus A.  The operations here transport k's
affine/vector structure along a chart; the result does not depend on which
auxiliary points are used.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence, Union

from .abstract_line import FiniteLine
from .coordinate_line import CoordinateLine, ProjPoint
from .errors import PunctureInTerms, TriplesNotDistinct, WeightsNotAffine, ZeroEqualsPuncture
from .moebius import act, matrix_from_images
from .scalars import Scalar

Line = Union[FiniteLine, CoordinateLine]


def _iter_points(line: Line):
    if isinstance(line, FiniteLine):
        return iter(line.points)
    return line.iter_points()


def default_points(line: Line, exclude: Iterable, k: int) -> list:
    """The first ``k`` points in enumeration order outside ``exclude``."""
    exclude = set(exclude)
    out = []
    for q in _iter_points(line):
        if q not in exclude:
            out.append(q)
            if len(out) == k:
                return out
    raise TriplesNotDistinct("not enough points to choose auxiliaries from")


@dataclass(frozen=True, eq=False)
class Chart:
    """h_{A,B,C}: L minus {A} -> k with B -> 0 and C -> 1."""

    line: Line
    puncture: object
    zero: object
    unit: object

    def __call__(self, X) -> Scalar:
        if X == self.puncture:
            raise PunctureInTerms(f"{X} is the puncture of this chart")
        return self.line.cross_ratio(self.puncture, self.zero, self.unit, X)

    @cached_property
    def _table(self) -> dict:
        return {self(X): X for X in self.line.points if X != self.puncture}

    @cached_property
    def _matrix(self):
        return matrix_from_images(self.zero, self.puncture, self.unit)

    def inverse(self, t: Scalar):
        t = self.line.ctx(t)
        if isinstance(self.line, FiniteLine):
            return self._table[t]
        return act(self._matrix, ProjPoint.affine(t))


def chart(line: Line, A, B, C) -> Chart:
    if len({A, B, C}) != 3:
        raise TriplesNotDistinct(f"chart needs distinct points, got {A}, {B}, {C}")
    if isinstance(line, FiniteLine):
        for q in (A, B, C):
            line.index(q)
    return Chart(line, A, B, C)


def basis_coordinate(line: Line, A, B, C) -> Chart:
    """The isomorphism of L minus A (zero B, basis C) with (k, 0, 1)."""
    return chart(line, A, B, C)


def affine_combine(line: Line, A, terms: Sequence[tuple[object, object]], aux: tuple | None = None):
    """The point whose chart coordinate is sum(w * coord(X)); weights must sum to 1."""
    ctx = line.ctx
    terms = [(ctx(w), X) for w, X in terms]
    if sum((w for w, _ in terms), ctx.zero) != ctx.one:
        raise WeightsNotAffine("affine weights must sum to 1")
    if any(X == A for _, X in terms):
        raise PunctureInTerms(f"{A} is the puncture")
    B, C = aux if aux is not None else default_points(line, [A], 2)
    h = chart(line, A, B, C)
    return h.inverse(sum((w * h(X) for w, X in terms), ctx.zero))


def _vector_chart(line: Line, A, B, C, points) -> Chart:
    if A == B:
        raise ZeroEqualsPuncture(f"zero {B} equals the puncture")
    if any(X == A for X in points):
        raise PunctureInTerms(f"{A} is the puncture")
    if C is None:
        (C,) = default_points(line, [A, B], 1)
    return chart(line, A, B, C)


def vector_add(line: Line, A, B, X, Y, aux=None):
    """X + Y in L minus A with B as zero."""
    h = _vector_chart(line, A, B, aux, (X, Y))
    return h.inverse(h(X) + h(Y))


def vector_scale(line: Line, A, B, lam, X, aux=None):
    """lam * X in L minus A with B as zero."""
    h = _vector_chart(line, A, B, aux, (X,))
    return h.inverse(line.ctx(lam) * h(X))


def vector_neg(line: Line, A, B, X, aux=None):
    return vector_scale(line, A, B, -line.ctx.one, X, aux)
