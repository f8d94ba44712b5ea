"""Finite abstract projective lines stored as explicit composition tables.

Encoding (shared with ``_kernels``): points are indexed 0..n-1 in the order
given; hom(X, X) index ``i`` is the scalar loop ``i + 1``; for X != Y, hom(X, Y)
index ``j`` is the arrow labelled by the j-th point (in index order) other than
X and Y.  ``comp[X, Y, Z, i, j]`` is the hom(X, Z) index of "i then j".
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .arrows import Arrow, LabeledArrow, ScalarArrow, arrow_from_json
from .coordinate_line import arrow_factor, enumerate_points
from .errors import (
    BoundExceeded,
    ContextMismatch,
    InvalidArrow,
    MalformedTable,
    NotComposable,
    ParseError,
    PointsNotDistinct,
    UndefinedCrossRatio,
)
from .scalars import FieldContext, Scalar

DEFAULT_MODEL_BOUND = 23
DEFAULT_ASSOC_BOUND = 11
DEFAULT_VIOLATION_CAP = 100

# cross-ratio table sentinels
CR_OUTSIDE = -1  # not of the form A != B, C, D not in {A, B}
CR_UNDEFINED = -2  # the scalar action does not single out a unique ratio


def _label_tables(n: int) -> tuple[np.ndarray, np.ndarray]:
    """``labels[X, Y, j]`` -> point index; ``lab[X, Y, C]`` -> hom index."""
    m = max(n - 2, 1)
    labels = np.full((n, n, m), -1, dtype=np.int32)
    lab = np.full((n, n, n), -1, dtype=np.int32)
    for X in range(n):
        for Y in range(n):
            if X == Y:
                continue
            j = 0
            for C in range(n):
                if C != X and C != Y:
                    labels[X, Y, j] = C
                    lab[X, Y, C] = j
                    j += 1
    return labels, lab


class FiniteLine:
    """A finite k-groupoid with labelled hom-sets, given by its composition table."""

    def __init__(self, ctx: FieldContext, points: Sequence[str], comp: np.ndarray):
        if not ctx.is_prime:
            raise ContextMismatch("finite lines live over prime fields")
        points = tuple(str(q) for q in points)
        if len(set(points)) != len(points):
            raise MalformedTable("duplicate point identifiers")
        if len(points) < 2:
            raise MalformedTable("a projective line needs at least two points")
        self.ctx = ctx
        self.p = ctx.p
        self.points = points
        self.n = len(points)
        self.m = max(self.p - 1, self.n - 2)
        self._index = {q: i for i, q in enumerate(points)}
        labels, lab = _label_tables(self.n)
        self.labels = labels
        self.lab = lab
        comp = np.ascontiguousarray(comp, dtype=np.int32)
        if comp.shape != (self.n, self.n, self.n, self.m, self.m):
            raise MalformedTable(f"table shape {comp.shape} does not fit {self.n} points over GF({self.p})")
        self._check_total(comp)
        comp.setflags(write=False)
        self.comp = comp

    def _check_total(self, comp):
        for X in range(self.n):
            for Y in range(self.n):
                for Z in range(self.n):
                    block = comp[X, Y, Z, : self.hom_size(X, Y), : self.hom_size(Y, Z)]
                    if block.min(initial=0) < 0 or block.max(initial=0) >= self.hom_size(X, Z):
                        bad = np.argwhere((block < 0) | (block >= self.hom_size(X, Z)))[0]
                        f = self.arrow_at(X, Y, int(bad[0]))
                        g = self.arrow_at(Y, Z, int(bad[1]))
                        raise MalformedTable(f"composite of {f} and {g} is missing or not an arrow {self.points[X]} -> {self.points[Z]}")

    # --- arrows ----------------------------------------------------------------

    def hom_size(self, X: int, Y: int) -> int:
        return self.p - 1 if X == Y else self.n - 2

    def index(self, point: str) -> int:
        try:
            return self._index[str(point)]
        except KeyError:
            raise PointsNotDistinct(f"unknown point {point!r}") from None

    def arrow_at(self, X: int, Y: int, i: int) -> Arrow:
        if X == Y:
            return ScalarArrow(self.points[X], self.ctx(i + 1))
        return LabeledArrow(self.points[X], self.points[Y], self.points[self.labels[X, Y, i]])

    def encode(self, f: Arrow) -> tuple[int, int, int]:
        if isinstance(f, ScalarArrow):
            if f.lam.ctx != self.ctx:
                raise ContextMismatch(f"scalar {f.lam!r} is not in {self.ctx}")
            X = self.index(f.at)
            return X, X, f.lam.value - 1
        X, Y, C = self.index(f.src), self.index(f.dst), self.index(f.dir)
        return X, Y, int(self.lab[X, Y, C])

    def hom(self, A: str, B: str) -> list[Arrow]:
        X, Y = self.index(A), self.index(B)
        return [self.arrow_at(X, Y, i) for i in range(self.hom_size(X, Y))]

    def arrows(self) -> list[Arrow]:
        return [self.arrow_at(X, Y, i) for X in range(self.n) for Y in range(self.n) for i in range(self.hom_size(X, Y))]

    def compose(self, f: Arrow, g: Arrow) -> Arrow:
        """f then g, read from the table."""
        X, Y, i = self.encode(f)
        Y2, Z, j = self.encode(g)
        if Y != Y2:
            raise NotComposable(f"{f} ends at {f.dst} but {g} starts at {g.src}")
        return self.arrow_at(X, Z, int(self.comp[X, Y, Z, i, j]))

    # --- cross ratio -------------------------------------------------------------

    @cached_property
    def cross_ratio_table(self) -> np.ndarray:
        """``cr[A, B, C, D]`` as a residue for A != B and C, D not in {A, B}.

        The ratio is the unique scalar mu with mu . (D : A -> B) = (C : A -> B),
        read off the scalar action ``comp[A, A, B]``.  Entries are CR_OUTSIDE
        off that domain and CR_UNDEFINED where mu is not unique.
        """
        n, p = self.n, self.p
        cr = np.full((n, n, n, n), CR_OUTSIDE, dtype=np.int32)
        if n != p + 1:
            return cr
        m = p - 1
        count = np.zeros((n, n, n, n), dtype=np.int32)
        value = np.zeros((n, n, n, n), dtype=np.int32)
        A, B, lam, d = np.meshgrid(np.arange(n), np.arange(n), np.arange(m), np.arange(m), indexing="ij")
        sel = A != B
        A, B, lam, d = A[sel], B[sel], lam[sel], d[sel]
        c = self.comp[A, A, B, lam, d]
        Cpt = self.labels[A, B, c]
        Dpt = self.labels[A, B, d]
        np.add.at(count, (A, B, Cpt, Dpt), 1)
        value[A, B, Cpt, Dpt] = lam + 1
        valid = self.lab >= 0
        dom = valid[:, :, :, None] & valid[:, :, None, :]
        cr[dom & (count == 1)] = value[dom & (count == 1)]
        cr[dom & (count != 1)] = CR_UNDEFINED
        cr.setflags(write=False)
        return cr

    def cross_ratio(self, A: str, B: str, C: str, D: str) -> Scalar:
        """(A,B;C,D), extended by 1 when C = D or A = B, and 0 when D = B or C = A."""
        if A == D or B == C:
            raise UndefinedCrossRatio(f"({A},{B};{C},{D}) needs A != D and B != C")
        for q in (A, B, C, D):
            self.index(q)
        if A == B or C == D:
            return self.ctx.one
        if D == B or C == A:
            return self.ctx.zero
        return cross_ratio_abstract(self, A, B, C, D)

    # --- equality, relabelling ----------------------------------------------------

    def renamed(self, names: Sequence[str]) -> FiniteLine:
        """Same table, points renamed position by position."""
        return FiniteLine(self.ctx, names, self.comp)

    def reordered(self, order: Sequence[str]) -> FiniteLine:
        """The same structure with points listed in ``order``."""
        if sorted(order) != sorted(self.points):
            raise MalformedTable("reorder must permute the existing points")
        labels, lab = _label_tables(len(order))
        pmap = np.array([list(order).index(q) for q in self.points], dtype=np.int64)
        R = relabel_table(self.labels, lab, pmap, self.n, self.m)
        comp = np.empty_like(self.comp)
        Xb, Yb, Zb, ib, jb = np.meshgrid(*(np.arange(s) for s in self.comp.shape), indexing="ij")
        comp[pmap[Xb], pmap[Yb], pmap[Zb], R[Xb, Yb, ib], R[Yb, Zb, jb]] = R[Xb, Zb, self.comp]
        return FiniteLine(self.ctx, order, comp)

    def __eq__(self, other):
        if not isinstance(other, FiniteLine):
            return NotImplemented
        if self.ctx != other.ctx or set(self.points) != set(other.points):
            return False
        if self.n != self.p + 1 or other.n != other.p + 1:
            return self.points == other.points and np.array_equal(self.comp, other.comp)
        return np.array_equal(other.reordered(self.points).comp, self.comp)

    def __hash__(self):
        return hash((self.ctx, frozenset(self.points)))

    def __repr__(self):
        return f"FiniteLine(GF({self.p}), {self.n} points)"

    # --- construction from arrows ---------------------------------------------

    @classmethod
    def from_entries(cls, ctx: FieldContext, points: Sequence[str], entries: Iterable[tuple[Arrow, Arrow, Arrow]]) -> FiniteLine:
        """Build from (f, g, f-then-g) triples; every composable pair must appear once."""
        shell = _Shell(ctx, points)
        comp = np.full((shell.n, shell.n, shell.n, shell.m, shell.m), -1, dtype=np.int32)
        for f, g, fg in entries:
            try:
                X, Y, i = shell.encode(f)
                Y2, Z, j = shell.encode(g)
                X3, Z3, k = shell.encode(fg)
            except (InvalidArrow, PointsNotDistinct, ContextMismatch) as exc:
                raise MalformedTable(str(exc)) from exc
            if Y != Y2:
                raise MalformedTable(f"{f} and {g} are not composable")
            if (X3, Z3) != (X, Z):
                raise MalformedTable(f"composite of {f} and {g} given as {fg}, which is not an arrow {f.src} -> {g.dst}")
            if comp[X, Y, Z, i, j] not in (-1, k):
                raise MalformedTable(f"conflicting composites for {f} and {g}")
            comp[X, Y, Z, i, j] = k
        return cls(ctx, points, comp)


class _Shell:
    """Point/label bookkeeping without a table, used while loading."""

    def __init__(self, ctx, points):
        if not ctx.is_prime:
            raise ContextMismatch("finite lines live over prime fields")
        self.ctx = ctx
        self.points = tuple(str(q) for q in points)
        if len(set(self.points)) != len(self.points):
            raise MalformedTable("duplicate point identifiers")
        self.n = len(self.points)
        self.m = max(ctx.p - 1, self.n - 2)
        self._index = {q: i for i, q in enumerate(self.points)}
        self.labels, self.lab = _label_tables(self.n)

    index = FiniteLine.index
    encode = FiniteLine.encode


def relabel_table(src_labels, dst_lab, pmap, n, m) -> np.ndarray:
    """``R[X, Y, i]``: hom index of the arrow (phi F : phi X -> phi Y) for arrow i of hom(X, Y).

    Scalar loops keep their index.
    """
    R = np.tile(np.arange(m, dtype=np.int64), (n, n, 1))
    X, Y = np.nonzero(~np.eye(n, dtype=bool))
    nl = n - 2
    F = src_labels[X, Y, :nl]
    R[X[:, None], Y[:, None], np.arange(nl)[None, :]] = dst_lab[pmap[X][:, None], pmap[Y][:, None], pmap[F]]
    return R


# --- the coordinate model ------------------------------------------------------


def build_coordinate_model(p: int, bound: int = DEFAULT_MODEL_BOUND) -> FiniteLine:
    """P(GF(p)^2) as an explicit table, points named ``"a1:a2"`` in enumeration order.

    Every arrow X -> Y acts on canonical representatives by a scalar factor;
    composites multiply factors, so the table is a gather over a factor-to-arrow
    lookup.
    """
    ctx = FieldContext.prime(p)
    if p > bound:
        raise BoundExceeded(f"p = {p} exceeds the table bound {bound} (table has ~p^5 entries)")
    pts = enumerate_points(ctx)
    n, m = p + 1, p - 1
    labels, _ = _label_tables(n)
    fac = np.zeros((n, n, m), dtype=np.int64)
    idx_of_factor = np.full((n, n, p), -1, dtype=np.int32)
    for X in range(n):
        for Y in range(n):
            for i in range(m):
                if X == Y:
                    fac[X, Y, i] = i + 1
                else:
                    f = LabeledArrow(pts[X], pts[Y], pts[labels[X, Y, i]])
                    fac[X, Y, i] = arrow_factor(f).value
                idx_of_factor[X, Y, fac[X, Y, i]] = i
    prod = (fac[:, :, None, :, None] * fac[None, :, :, None, :]) % p  # [X, Y, Z, i, j]
    Xb = np.arange(n)[:, None, None, None, None]
    Zb = np.arange(n)[None, None, :, None, None]
    comp = idx_of_factor[Xb, Zb, prod]
    return FiniteLine(ctx, [str(q) for q in pts], comp)


# --- cross ratio -----------------------------------------------------------------


def cross_ratio_abstract(line: FiniteLine, A: str, B: str, C: str, D: str) -> Scalar:
    """The unique mu in k* with mu . (D : A -> B) = (C : A -> B); 1 when C = D.

    With this orientation (V, H; D, [1:x]) = x on the coordinate model, matching
    the determinant formula.
    """
    X, Y = line.index(A), line.index(B)
    c, d = line.index(C), line.index(D)
    if X == Y or c in (X, Y) or d in (X, Y):
        raise PointsNotDistinct(f"({A},{B};{C},{D}) needs A != B and C, D outside {{A, B}}")
    lc, ld = line.lab[X, Y, c], line.lab[X, Y, d]
    hits = [lam for lam in range(line.p - 1) if line.comp[X, X, Y, lam, ld] == lc]
    if len(hits) != 1:
        raise UndefinedCrossRatio(f"scalar action on hom({A},{B}) gives {len(hits)} candidates")
    return line.ctx(hits[0] + 1)


# --- verification -------------------------------------------------------------------

GROUPS = {
    "a": "cardinality",
    "b": "category laws",
    "c": "invertibility",
    "d": "vertex multiplication",
    "e": "centrality",
    "f": "idempotence",
    "g": "permutation laws",
}


@dataclass(frozen=True)
class Violation:
    axiom: str
    group: str
    witness: tuple[str, ...]

    def __str__(self):
        return f"[{self.group}] {self.axiom}: " + ", ".join(self.witness)


@dataclass
class AxiomReport:
    violations: list[Violation] = field(default_factory=list)
    groups_checked: list[str] = field(default_factory=list)
    skipped: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    @property
    def failed_groups(self) -> list[str]:
        return sorted({v.group for v in self.violations})

    def summary(self) -> str:
        if self.passed:
            text = f"PASS ({len(self.groups_checked)} axiom groups)"
        else:
            text = f"FAIL ({len(self.violations)} violations in groups {','.join(self.failed_groups)})"
        if self.skipped:
            text += " [skipped: " + ", ".join(self.skipped) + "]"
        return text

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "groups_checked": self.groups_checked,
            "skipped": self.skipped,
            "violations": [{"axiom": v.axiom, "group": v.group, "witness": list(v.witness)} for v in self.violations],
        }


class _Collector:
    def __init__(self, report: AxiomReport, cap: int, early_exit: bool):
        self.report = report
        self.cap = cap
        self.early_exit = early_exit

    @property
    def room(self) -> int:
        if self.early_exit and self.report.violations:
            return 0
        return self.cap - len(self.report.violations)

    def add(self, axiom: str, group: str, witnesses: Iterable[tuple]):
        for w in witnesses:
            if self.room <= 0:
                return
            self.report.violations.append(Violation(axiom, group, tuple(str(x) for x in w)))

    @property
    def stop(self) -> bool:
        return self.room <= 0


def verify_axioms(
    line: FiniteLine,
    *,
    early_exit: bool = False,
    cap: int = DEFAULT_VIOLATION_CAP,
    assoc_bound: int = DEFAULT_ASSOC_BOUND,
) -> AxiomReport:
    """Check every axiom of a projective line over GF(p) exhaustively.

    Groups: (a) |L| = p + 1; (b) identity and associativity; (c) every arrow is
    invertible; (d) loops compose by field multiplication; (e) scalars are
    central; (f) both idempotence laws; (g) cross ratios are well defined and
    obey the permutation laws.  Associativity runs last and is skipped above
    ``assoc_bound``.
    """
    report = AxiomReport()
    col = _Collector(report, cap, early_exit)
    n, p = line.n, line.p
    pts = line.points
    comp = line.comp

    report.groups_checked.append("a")
    if n != p + 1:
        col.add("cardinality", "a", [(f"|L| = {n}", f"p + 1 = {p + 1}")])
        return report
    if col.stop:
        return report
    m = p - 1
    ar_n, ar_m = np.arange(n), np.arange(m)

    # (b) identities
    report.groups_checked.append("b")
    left_id = comp[ar_n[:, None, None], ar_n[:, None, None], ar_n[None, :, None], 0, ar_m[None, None, :]]
    bad = np.argwhere(left_id != ar_m[None, None, :])
    col.add("left identity", "b", [(line.arrow_at(X, X, 0), line.arrow_at(X, Y, j)) for X, Y, j in bad])
    right_id = comp[ar_n[:, None, None], ar_n[None, :, None], ar_n[None, :, None], ar_m[None, None, :], 0]
    bad = np.argwhere(right_id != ar_m[None, None, :])
    col.add("right identity", "b", [(line.arrow_at(X, Y, i), line.arrow_at(Y, Y, 0)) for X, Y, i in bad])
    if col.stop:
        return report

    # (c) invertibility
    report.groups_checked.append("c")
    there_back = comp[ar_n[:, None], ar_n[None, :], ar_n[:, None]]  # [X, Y, i, j]
    back_there = there_back.transpose(1, 0, 3, 2)
    ok = ((there_back == 0) & (back_there == 0)).any(axis=-1)
    col.add("invertibility", "c", [(line.arrow_at(X, Y, i),) for X, Y, i in np.argwhere(~ok)])
    if col.stop:
        return report

    # (d) vertex groups are k*
    report.groups_checked.append("d")
    expected = ((ar_m[:, None] + 1) * (ar_m[None, :] + 1)) % p - 1
    loops = comp[ar_n, ar_n, ar_n]
    bad = np.argwhere(loops != expected[None])
    col.add(
        "vertex multiplication",
        "d",
        [(line.arrow_at(X, X, i), line.arrow_at(X, X, j), f"got {line.arrow_at(X, X, loops[X, i, j])}") for X, i, j in bad],
    )
    if col.stop:
        return report

    # (e) centrality: lambda . f = f . lambda
    report.groups_checked.append("e")
    lam_f = comp[ar_n[:, None], ar_n[:, None], ar_n[None, :]]  # [X, Y, lam, i]
    f_lam = comp[ar_n[:, None], ar_n[None, :], ar_n[None, :]].transpose(0, 1, 3, 2)  # [X, Y, lam, i]
    bad = np.argwhere(lam_f != f_lam)
    col.add("centrality", "e", [(line.arrow_at(X, X, lam), line.arrow_at(X, Y, i)) for X, Y, lam, i in bad])
    if col.stop:
        return report

    # (f) idempotence
    report.groups_checked.append("f")
    lab = line.lab
    w1 = []
    w2 = []
    for X in range(n):
        for Y in range(n):
            if X == Y:
                continue
            for F in range(n):
                if F in (X, Y):
                    continue
                if comp[X, Y, X, lab[X, Y, F], lab[Y, X, F]] != 0:
                    w1.append((pts[F], pts[X], pts[Y]))
                for Z in range(n):
                    if Z in (X, Y, F):
                        continue
                    if comp[X, Y, Z, lab[X, Y, F], lab[Y, Z, F]] != lab[X, Z, F]:
                        w2.append((pts[F], pts[X], pts[Y], pts[Z]))
    col.add("idempotence (F:A->B)(F:B->A) = 1", "f", w1)
    col.add("idempotence (F:A->B)(F:B->C) = (F:A->C)", "f", w2)
    if col.stop:
        return report

    # (g) permutation laws
    report.groups_checked.append("g")
    _check_permutation_laws(line, col)
    if col.stop:
        return report

    # (b) associativity, the expensive one
    if p > assoc_bound:
        report.skipped.append(f"associativity (p = {p} > {assoc_bound})")
        return report
    rows = _kernels.associativity_violations(comp, max(col.room, 1))
    col.add(
        "associativity",
        "b",
        [(line.arrow_at(X, Y, i), line.arrow_at(Y, Z, j), line.arrow_at(Z, W, l)) for X, Y, Z, W, i, j, l in rows],
    )
    return report


def _check_permutation_laws(line: FiniteLine, col: _Collector):
    n, p = line.n, line.p
    pts = line.points
    cr = line.cross_ratio_table
    inv = np.zeros(p, dtype=np.int64)
    inv[1:] = [pow(v, -1, p) for v in range(1, p)]
    idx = np.array(
        [(A, B, C, D) for A in range(n) for B in range(n) for C in range(n) for D in range(n) if len({A, B, C, D}) == 4],
        dtype=np.int64,
    ).reshape(-1, 4)
    if not len(idx):
        return
    A, B, C, D = idx.T

    def name(k):
        return tuple(pts[v] for v in idx[k])

    undefined = cr[A, B, C, D] == CR_UNDEFINED
    col.add("cross ratio not uniquely defined", "g", [name(k) for k in np.nonzero(undefined)[0]])
    mu = cr[A, B, C, D].astype(np.int64)
    degenerate = ~undefined & ((mu == 1) | (mu == 0))
    col.add("cross ratio of distinct points is 0 or 1", "g", [name(k) for k in np.nonzero(degenerate)[0]])
    good = ~undefined & ~degenerate
    mu_safe = np.where(good, mu, 2 % p if p > 2 else 1)
    one_minus = (1 - mu_safe) % p
    laws = [
        ("(A,B;C,D) = (B,A;D,C)", cr[B, A, D, C], mu),
        ("(A,B;C,D) = (C,D;A,B)", cr[C, D, A, B], mu),
        ("(A,B;C,D) = (D,C;B,A)", cr[D, C, B, A], mu),
        ("(A,B;D,C) = 1/mu", cr[A, B, D, C], inv[mu_safe]),
        ("(A,C;B,D) = 1 - mu", cr[A, C, B, D], one_minus),
        ("(A,C;D,B) = 1/(1 - mu)", cr[A, C, D, B], inv[one_minus]),
        ("(A,D;B,C) = (mu - 1)/mu", cr[A, D, B, C], (mu_safe - 1) * inv[mu_safe] % p),
        ("(A,D;C,B) = mu/(mu - 1)", cr[A, D, C, B], mu_safe * inv[(mu_safe - 1) % p] % p),
    ]
    for axiom, got, want in laws:
        bad = np.nonzero(good & (got != want))[0]
        col.add(axiom, "g", [name(k) + (f"mu={mu[k]}", f"got {got[k]}") for k in bad])


# --- structure files ------------------------------------------------------------


def _compact(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def line_to_json(line: FiniteLine) -> str:
    """Canonical structure-file text: points sorted, entries sorted by (f, g)."""
    order = sorted(line.points)
    n = line.n
    arrow_str = {}
    for X in range(n):
        for Y in range(n):
            for i in range(line.hom_size(X, Y)):
                f = line.arrow_at(X, Y, i)
                if isinstance(f, ScalarArrow):
                    obj = {"scalar": {"at": f.at, "lambda": str(f.lam)}}
                else:
                    obj = {"labeled": {"src": f.src, "dst": f.dst, "dir": f.dir}}
                arrow_str[X, Y, i] = _compact(obj)
    entries = []
    for X in range(n):
        for Y in range(n):
            for Z in range(n):
                block = line.comp[X, Y, Z]
                for i in range(line.hom_size(X, Y)):
                    fs = arrow_str[X, Y, i]
                    for j in range(line.hom_size(Y, Z)):
                        entries.append((fs, arrow_str[Y, Z, j], arrow_str[X, Z, int(block[i, j])]))
    entries.sort()
    lines = ["{", ' "field": ' + _compact({"kind": "prime", "p": line.p}) + ",", ' "points": ' + _compact(order) + ",", ' "comp": [']
    body = [f'  {{"f":{f},"g":{g},"fg":{fg}}}' for f, g, fg in entries]
    lines.append(",\n".join(body))
    lines.append(" ]")
    lines.append("}")
    return "\n".join(lines) + "\n"


def line_from_json(text: str) -> FiniteLine:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"structure file is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict) or set(doc) != {"field", "points", "comp"}:
        raise ParseError("structure file needs exactly the keys field, points, comp")
    fld = doc["field"]
    if not isinstance(fld, dict) or fld.get("kind") != "prime" or not isinstance(fld.get("p"), int):
        raise ParseError("field must be {\"kind\": \"prime\", \"p\": N}")
    ctx = FieldContext.prime(fld["p"])
    points = doc["points"]
    if not isinstance(points, list) or not all(isinstance(q, str) for q in points):
        raise ParseError("points must be a list of strings")
    entries = []
    for e in doc["comp"]:
        if not isinstance(e, dict) or set(e) != {"f", "g", "fg"}:
            raise ParseError(f"bad comp entry {e!r}")
        try:
            entries.append(tuple(arrow_from_json(e[k], ctx) for k in ("f", "g", "fg")))
        except InvalidArrow as exc:
            raise MalformedTable(str(exc)) from exc
    return FiniteLine.from_entries(ctx, points, entries)


def save_line(line: FiniteLine, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(line_to_json(line))


def load_line(path) -> FiniteLine:
    with open(path, encoding="utf-8") as fh:
        return line_from_json(fh.read())
