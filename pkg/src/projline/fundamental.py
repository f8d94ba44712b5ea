"""Projectivities between finite lines and the three-point transport theorem."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from . import _kernels
from .abstract_line import FiniteLine, build_coordinate_model, relabel_table
from .arrows import Arrow, LabeledArrow, ScalarArrow
from .errors import BoundExceeded, FieldMismatch, NoSolution, NotComposable, PreconditionViolated, TriplesNotDistinct

CENSUS_DEFAULT_BOUND = 7
CENSUS_HARD_CAP = 11

Triple = Sequence[str]


@dataclass(frozen=True, eq=False)
class Projectivity:
    """A bijection of points ``src -> dst``; ``pmap[i]`` is the image of point i.

    Construction does not certify anything; use :func:`is_functorial`.
    """

    src: FiniteLine
    dst: FiniteLine
    pmap: tuple[int, ...]

    @classmethod
    def from_dict(cls, src: FiniteLine, dst: FiniteLine, mapping: dict[str, str]) -> Projectivity:
        return cls(src, dst, tuple(dst.index(mapping[q]) for q in src.points))

    @classmethod
    def identity(cls, line: FiniteLine) -> Projectivity:
        return cls(line, line, tuple(range(line.n)))

    def __call__(self, point: str) -> str:
        return self.dst.points[self.pmap[self.src.index(point)]]

    def as_dict(self) -> dict[str, str]:
        return {q: self.dst.points[self.pmap[i]] for i, q in enumerate(self.src.points)}

    @property
    def is_bijection(self) -> bool:
        return len(self.pmap) == self.src.n == self.dst.n and sorted(self.pmap) == list(range(self.dst.n))

    def arrow_image(self, f: Arrow) -> Arrow:
        """(F : A -> B) goes to (phi F : phi A -> phi B); scalars are kept."""
        if isinstance(f, ScalarArrow):
            return ScalarArrow(self(f.at), f.lam)
        return LabeledArrow(self(f.src), self(f.dst), self(f.dir))

    def then(self, other: Projectivity) -> Projectivity:
        """self, followed by other."""
        if other.src is not self.dst and other.src != self.dst:
            raise NotComposable("projectivities do not share a middle line")
        return Projectivity(self.src, other.dst, tuple(other.pmap[i] for i in self.pmap))

    def inverse(self) -> Projectivity:
        inv = [0] * len(self.pmap)
        for i, j in enumerate(self.pmap):
            inv[j] = i
        return Projectivity(self.dst, self.src, tuple(inv))

    def __eq__(self, other):
        if not isinstance(other, Projectivity):
            return NotImplemented
        same_lines = (self.src is other.src or self.src == other.src) and (self.dst is other.dst or self.dst == other.dst)
        return same_lines and self.as_dict() == other.as_dict()

    def __hash__(self):
        return hash(tuple(sorted(self.as_dict().items())))

    @cached_property
    def relabel(self) -> np.ndarray:
        return relabel_table(self.src.labels, self.dst.lab, np.asarray(self.pmap, dtype=np.int64), self.src.n, self.src.m)

    def __repr__(self):
        return "Projectivity(" + ", ".join(f"{a}->{b}" for a, b in self.as_dict().items()) + ")"


def _regular(line: FiniteLine) -> bool:
    return line.n == line.p + 1


def is_functorial(phi: Projectivity) -> bool:
    """Whether the induced arrow map preserves every composite (and scalars)."""
    if phi.src.ctx != phi.dst.ctx or not phi.is_bijection:
        return False
    if _regular(phi.src) and _regular(phi.dst):
        pmap = np.asarray(phi.pmap, dtype=np.int64)
        return len(_kernels.functor_violation(phi.src.comp, phi.dst.comp, pmap, phi.relabel)) == 0
    src = phi.src
    for f in src.arrows():
        for g in (g for g in src.arrows() if g.src == f.dst):
            if phi.arrow_image(src.compose(f, g)) != phi.dst.compose(phi.arrow_image(f), phi.arrow_image(g)):
                return False
    return True


def preserves_cross_ratios(phi: Projectivity) -> bool:
    """Fast path: every cross ratio of four distinct points is preserved."""
    if phi.src.ctx != phi.dst.ctx or not phi.is_bijection:
        return False
    pmap = np.asarray(phi.pmap, dtype=np.int64)
    return bool(_kernels.cross_ratio_preserved(phi.src.cross_ratio_table, phi.dst.cross_ratio_table, pmap))


def _check_pair(L: FiniteLine, L2: FiniteLine, t: Triple, t2: Triple) -> tuple[list[int], list[int]]:
    if L.ctx != L2.ctx:
        raise FieldMismatch(f"lines over {L.ctx} and {L2.ctx}")
    if len(t) != 3 or len(t2) != 3 or len(set(t)) != 3 or len(set(t2)) != 3:
        raise TriplesNotDistinct(f"need two triples of distinct points, got {tuple(t)} and {tuple(t2)}")
    return [L.index(q) for q in t], [L2.index(q) for q in t2]


def transport_projectivity(L: FiniteLine, L2: FiniteLine, t: Triple, t2: Triple) -> Projectivity:
    """The projectivity sending the triple ``t`` to ``t2``.

    Each remaining D goes to the unique D' with (A',B';C',D') = (A,B;C,D).
    """
    (A, B, C), (A2, B2, C2) = _check_pair(L, L2, t, t2)
    if L.n != L2.n:
        raise NoSolution(f"lines have {L.n} and {L2.n} points")
    cr, cr2 = L.cross_ratio_table, L2.cross_ratio_table
    pmap = [-1] * L.n
    pmap[A], pmap[B], pmap[C] = A2, B2, C2
    free = [q for q in range(L2.n) if q not in (A2, B2, C2)]
    for Dx in range(L.n):
        if Dx in (A, B, C):
            continue
        want = cr[A, B, C, Dx]
        hits = [q for q in free if cr2[A2, B2, C2, q] == want]
        if len(hits) != 1 or want < 0:
            raise NoSolution(f"{len(hits)} candidates for the image of {L.points[Dx]}")
        pmap[Dx] = hits[0]
    phi = Projectivity(L, L2, tuple(pmap))
    if not phi.is_bijection or not is_functorial(phi):
        raise NoSolution("cross-ratio transport did not produce a projectivity")
    return phi


def triangle_criterion(line: FiniteLine, E: str, F: str, G: str, A: str, B: str, C: str) -> bool:
    """Whether (E:A->B)(F:B->C) = (G:A->C), decided by (C,A;G,F)(B,A;F,E) = 1."""
    if len({A, B, C}) != 3 or E in (A, B) or F in (A, B, C) or G in (A, C):
        raise PreconditionViolated("need A,B,C distinct, E not in {A,B}, F not in {A,B,C}, G not in {A,C}")
    return line.cross_ratio(C, A, G, F) * line.cross_ratio(B, A, F, E) == 1


def uniqueness_census(L: FiniteLine, L2: FiniteLine, t: Triple, t2: Triple, bound: int = CENSUS_DEFAULT_BOUND) -> int:
    """Count the functorial bijections extending ``t -> t2`` by brute force."""
    if bound > CENSUS_HARD_CAP:
        raise BoundExceeded(f"census bound {bound} exceeds the hard cap {CENSUS_HARD_CAP}")
    (A, B, C), (A2, B2, C2) = _check_pair(L, L2, t, t2)
    if L.p > bound:
        raise BoundExceeded(f"census at p = {L.p} exceeds bound {bound}")
    if L.n != L2.n:
        return 0
    rest = [q for q in range(L.n) if q not in (A, B, C)]
    targets = [q for q in range(L2.n) if q not in (A2, B2, C2)]
    count = 0
    for perm in itertools.permutations(targets):
        pmap = [0] * L.n
        pmap[A], pmap[B], pmap[C] = A2, B2, C2
        for q, r in zip(rest, perm):
            pmap[q] = r
        if is_functorial(Projectivity(L, L2, tuple(pmap))):
            count += 1
    return count


def coordinatize(L: FiniteLine, A: str, B: str, C: str) -> Projectivity:
    """The projectivity to the coordinate model sending A, B, C to [1:0], [0:1], [1:1]."""
    model = build_coordinate_model(L.p)
    return transport_projectivity(L, model, (A, B, C), ("1:0", "0:1", "1:1"))


def all_bijections(L: FiniteLine, L2: FiniteLine | None = None):
    L2 = L if L2 is None else L2
    for perm in itertools.permutations(range(L2.n)):
        yield Projectivity(L, L2, perm)


def projectivity_group(L: FiniteLine) -> list[Projectivity]:
    """All self-projectivities by exhaustive search over bijections (small lines only)."""
    if L.n > 9:
        raise BoundExceeded(f"{L.n}! bijections is too many to enumerate")
    return [phi for phi in all_bijections(L) if is_functorial(phi)]
