"""Cocycles of the canonical affine-line and vector-line bundles, and the
four-point line over GF(3)."""

from __future__ import annotations

from dataclasses import dataclass

from .abstract_line import FiniteLine, build_coordinate_model, verify_axioms
from .errors import BaseMismatch, PointsNotDistinct, TriplesNotDistinct
from .fundamental import is_functorial, projectivity_group
from .punctured import Line, chart
from .scalars import FieldContext, Scalar


@dataclass(frozen=True)
class AffineAutomorphism:
    """x -> t + s x, an element of k semidirect k*."""

    t: Scalar
    s: Scalar

    def __post_init__(self):
        if not self.s:
            raise ValueError("slope must be nonzero")

    @classmethod
    def identity(cls, ctx: FieldContext) -> AffineAutomorphism:
        return cls(ctx.zero, ctx.one)

    @classmethod
    def from_values(cls, v0: Scalar, v1: Scalar) -> AffineAutomorphism:
        """The affine map with the given values at 0 and 1."""
        return cls(v0, v1 - v0)

    def values(self) -> tuple[Scalar, Scalar]:
        return self.t, self.t + self.s

    def __call__(self, x: Scalar) -> Scalar:
        return self.t + self.s * x

    def then(self, other: AffineAutomorphism) -> AffineAutomorphism:
        """Apply self, then other."""
        return AffineAutomorphism(other.t + other.s * self.t, other.s * self.s)

    def inverse(self) -> AffineAutomorphism:
        si = self.s.inv()
        return AffineAutomorphism(-self.t * si, si)


def _sections(A, s1, s2):
    (B, C), (B2, C2) = s1, s2
    if len({A, B, C}) != 3 or len({A, B2, C2}) != 3:
        raise TriplesNotDistinct(f"({A},{B},{C}) and ({A},{B2},{C2}) must be distinct triples")
    return B, C, B2, C2


def affine_cocycle(line: Line, A, s1: tuple, s2: tuple) -> AffineAutomorphism:
    """Transition h_{A,B,C}^{-1} then h_{A,B',C'}, from its values at 0 and 1:
    ((A,B';C',B), (A,B';C',C))."""
    B, C, B2, C2 = _sections(A, s1, s2)
    return AffineAutomorphism.from_values(line.cross_ratio(A, B2, C2, B), line.cross_ratio(A, B2, C2, C))


def affine_cocycle_from_charts(line: Line, A, s1: tuple, s2: tuple, samples=None) -> AffineAutomorphism:
    """Same transition computed by composing charts pointwise.

    ``samples`` are extra coordinates at which the composite is checked to be
    the affine map through its values at 0 and 1 (all of k for finite lines).
    """
    B, C, B2, C2 = _sections(A, s1, s2)
    h1, h2 = chart(line, A, B, C), chart(line, A, B2, C2)
    ctx = line.ctx
    g = AffineAutomorphism.from_values(h2(h1.inverse(ctx.zero)), h2(h1.inverse(ctx.one)))
    if samples is None and isinstance(line, FiniteLine):
        samples = range(line.p)
    for x in samples or ():
        x = ctx(x)
        if h2(h1.inverse(x)) != g(x):
            raise AssertionError(f"chart transition is not affine at {x}")
    return g


def check_affine_cocycle(line: Line, A, sections, cocycle=affine_cocycle) -> bool:
    """c(s1, s2) then c(s2, s3) equals c(s1, s3)."""
    s1, s2, s3 = sections
    return cocycle(line, A, s1, s2).then(cocycle(line, A, s2, s3)) == cocycle(line, A, s1, s3)


def line_cocycle(line: Line, base: tuple, C, C2) -> Scalar:
    """The k*-valued transition (A,B;C,C') between the frames C and C'."""
    A, B = base
    if len({A, B, C}) != 3 or len({A, B, C2}) != 3:
        raise PointsNotDistinct(f"need A,B,C and A,B,C' distinct, got {A},{B},{C},{C2}")
    return line.cross_ratio(A, B, C, C2)


def check_line_cocycle(line: Line, base: tuple, C, C2, C3) -> bool:
    return line_cocycle(line, base, C, C2) * line_cocycle(line, base, C2, C3) == line_cocycle(line, base, C, C3)


# --- the four-point line over GF(3) -----------------------------------------------

GF3_POINTS = ("P0", "P1", "P2", "P3")


@dataclass(frozen=True)
class GF3Certificate:
    solutions: int
    nodes: int
    matches_coordinate_model: bool
    verify_passed: bool

    @property
    def unique(self) -> bool:
        return self.solutions == 1 and self.matches_coordinate_model and self.verify_passed


def gf3_line() -> FiniteLine:
    """The coordinate model over GF(3) with points renamed P0..P3."""
    return build_coordinate_model(3).renamed(GF3_POINTS)


def gf3_unique_structure() -> tuple[FiniteLine, GF3Certificate]:
    """Search every composition table on four points over GF(3) and keep the valid ones."""
    from .structures import search_structures

    result = search_structures(3, GF3_POINTS)
    line = gf3_line()
    matches = len(result.solutions) == 1 and result.solutions[0] == line
    cert = GF3Certificate(len(result.solutions), result.nodes, matches, verify_axioms(line).passed)
    return line, cert


def gf3_projectivity_count() -> int:
    return len(projectivity_group(gf3_line()))


def gf3_all_permutations() -> bool:
    """Every one of the 24 bijections of the four points is a projectivity."""
    from .fundamental import all_bijections

    return all(is_functorial(phi) for phi in all_bijections(gf3_line()))
