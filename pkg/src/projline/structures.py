"""Exhaustive search for composition tables satisfying the axioms.

The unknowns are the entries ``T[X, Y, Z, i, j]`` of a composition table on a
fixed point set (labels fixed by the data model).  The search is a complete
backtracking over every entry.  Between branchings it applies only
consequences of the axioms: forced entries (identity, vertex multiplication,
idempotence), centrality equalities, and associativity.  It also prunes
partial tables whose known cross ratios already break a permutation law.
Every leaf is re-checked with :func:`verify_axioms`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .abstract_line import FiniteLine, _label_tables, verify_axioms
from .errors import BoundExceeded
from .scalars import FieldContext

SEARCH_BOUND = 5


class _Conflict(Exception):
    pass


@dataclass
class SearchResult:
    solutions: list[FiniteLine] = field(default_factory=list)
    nodes: int = 0
    leaves: int = 0


class _Problem:
    def __init__(self, p: int, points):
        self.ctx = FieldContext.prime(p)
        self.p = p
        self.points = tuple(points)
        n = self.n = len(self.points)
        m = self.m = p - 1
        self.labels, self.lab = _label_tables(n)
        self.shape = (n, n, n, m, m)
        ar_n, ar_m = np.arange(n), np.arange(m)

        # forced entries (flat index, value)
        forced = []
        idx = np.ravel_multi_index
        for X, Y in itertools.product(range(n), repeat=2):
            for j in range(m):
                forced.append((idx((X, X, Y, 0, j), self.shape), j))
                forced.append((idx((Y, X, X, j, 0), self.shape), j))
        for X in range(n):
            for i, j in itertools.product(range(m), repeat=2):
                forced.append((idx((X, X, X, i, j), self.shape), ((i + 1) * (j + 1)) % p - 1))
        lab = self.lab
        for X, Y, F in itertools.permutations(range(n), 3):
            forced.append((idx((X, Y, X, lab[X, Y, F], lab[Y, X, F]), self.shape), 0))
        for X, Y, Z, F in itertools.permutations(range(n), 4):
            forced.append((idx((X, Y, Z, lab[X, Y, F], lab[Y, Z, F]), self.shape), int(lab[X, Z, F])))
        self.forced = np.array(forced, dtype=np.int64).reshape(-1, 2)

        # centrality: T[X, X, Y, lam, i] == T[X, Y, Y, i, lam]
        X, Y, lam, i = np.meshgrid(ar_n, ar_n, ar_m, ar_m, indexing="ij")
        self.eq_u = idx((X, X, Y, lam, i), self.shape).ravel()
        self.eq_v = idx((X, Y, Y, i, lam), self.shape).ravel()

        # associativity instances
        grid = np.meshgrid(ar_n, ar_n, ar_n, ar_n, ar_m, ar_m, ar_m, indexing="ij")
        self.aX, self.aY, self.aZ, self.aW, self.ai, self.aj, self.al = (g.ravel() for g in grid)
        self.fg_slot = idx((self.aX, self.aY, self.aZ, self.ai, self.aj), self.shape)
        self.gh_slot = idx((self.aY, self.aZ, self.aW, self.aj, self.al), self.shape)

        # branching order: scalar-action slots first (they fix cross ratios)
        order = np.arange(np.prod(self.shape))
        Xo, Yo, Zo, _, _ = np.unravel_index(order, self.shape)
        priority = np.where((Xo == Yo) & (Xo != Zo), 0, 1)
        self.branch_order = order[np.argsort(priority, kind="stable")]

        self.tuples = np.array([t for t in itertools.permutations(range(n), 4)], dtype=np.int64).reshape(-1, 4)
        inv = np.zeros(p, dtype=np.int64)
        inv[1:] = [pow(v, -1, p) for v in range(1, p)]
        self.inv = inv

    # --- propagation ----------------------------------------------------------

    def _assign(self, T, slots, values):
        cur = T[slots]
        if np.any((cur >= 0) & (cur != values)):
            raise _Conflict
        # the same slot may be targeted twice in one sweep
        order = np.argsort(slots, kind="stable")
        s, v = slots[order], values[order]
        dup = s[1:] == s[:-1]
        if np.any(dup & (v[1:] != v[:-1])):
            raise _Conflict
        changed = cur < 0
        T[slots[changed]] = values[changed]
        return bool(changed.any())

    def propagate(self, T: np.ndarray) -> None:
        shape = self.shape
        while True:
            changed = False
            u, v = T[self.eq_u], T[self.eq_v]
            if np.any((u >= 0) & (v >= 0) & (u != v)):
                raise _Conflict
            k = (u >= 0) & (v < 0)
            if k.any():
                changed |= self._assign(T, self.eq_v[k], u[k])
            k = (v >= 0) & (u < 0)
            if k.any():
                changed |= self._assign(T, self.eq_u[k], v[k])

            fg, gh = T[self.fg_slot], T[self.gh_slot]
            known = (fg >= 0) & (gh >= 0)
            if known.any():
                X, Y, Z, W = self.aX[known], self.aY[known], self.aZ[known], self.aW[known]
                i, l = self.ai[known], self.al[known]
                ls = np.ravel_multi_index((X, Z, W, fg[known], l), shape)
                rs = np.ravel_multi_index((X, Y, W, i, gh[known]), shape)
                lv, rv = T[ls], T[rs]
                if np.any((lv >= 0) & (rv >= 0) & (lv != rv)):
                    raise _Conflict
                k = (lv >= 0) & (rv < 0)
                if k.any():
                    changed |= self._assign(T, rs[k], lv[k])
                k = (rv >= 0) & (lv < 0)
                if k.any():
                    changed |= self._assign(T, ls[k], rv[k])
            if not changed:
                break
        self._check_cross_ratios(T)

    def _check_cross_ratios(self, T: np.ndarray) -> None:
        """Reject partial tables whose fully known cross ratios break a law."""
        n, m, p = self.n, self.m, self.p
        full = T.reshape(self.shape)
        cr = np.full((n, n, n, n), -1, dtype=np.int64)
        for A, B in itertools.permutations(range(n), 2):
            block = full[A, A, B]  # [lam, d] -> c
            if np.any(block < 0):
                continue
            for d in range(m):
                col = block[:, d]
                if len(set(col.tolist())) != m:
                    raise _Conflict  # scalar action not free
                for lam in range(m):
                    cr[A, B, self.labels[A, B, col[lam]], self.labels[A, B, d]] = lam + 1
        A, B, C, D = self.tuples.T
        mu = cr[A, B, C, D]
        known = mu >= 0
        if np.any(known & (mu == 1)):
            raise _Conflict
        mu_s = np.where(known & (mu != 1), mu, 2 % p)
        om = (1 - mu_s) % p
        inv = self.inv
        laws = [
            (cr[B, A, D, C], mu),
            (cr[C, D, A, B], mu),
            (cr[D, C, B, A], mu),
            (cr[A, B, D, C], inv[mu_s]),
            (cr[A, C, B, D], om),
            (cr[A, C, D, B], inv[om]),
            (cr[A, D, B, C], (mu_s - 1) * inv[mu_s] % p),
            (cr[A, D, C, B], mu_s * inv[(mu_s - 1) % p] % p),
        ]
        for got, want in laws:
            if np.any(known & (got >= 0) & (got != want)):
                raise _Conflict

    def initial(self, partial: np.ndarray | None) -> np.ndarray:
        T = np.full(int(np.prod(self.shape)), -1, dtype=np.int64)
        if partial is not None:
            T[:] = np.asarray(partial, dtype=np.int64).ravel()
        self._assign(T, self.forced[:, 0], self.forced[:, 1])
        return T


def search_structures(p: int, points=None, partial: np.ndarray | None = None, bound: int = SEARCH_BOUND) -> SearchResult:
    """All composition tables on ``p + 1`` points over GF(p) passing every axiom.

    ``partial`` optionally pins some entries (``-1`` = free); used to cross-check
    the propagation against brute force on small sub-problems.
    """
    if p > bound:
        raise BoundExceeded(f"structure search at p = {p} exceeds bound {bound}")
    points = tuple(points) if points is not None else tuple(f"P{i}" for i in range(p + 1))
    prob = _Problem(p, points)
    result = SearchResult()
    try:
        T0 = prob.initial(partial)
    except _Conflict:
        return result

    stack = [T0]
    while stack:
        T = stack.pop()
        result.nodes += 1
        try:
            prob.propagate(T)
        except _Conflict:
            continue
        unknown = prob.branch_order[T[prob.branch_order] < 0]
        if len(unknown) == 0:
            result.leaves += 1
            line = FiniteLine(prob.ctx, points, T.reshape(prob.shape))
            if verify_axioms(line, early_exit=True).passed:
                result.solutions.append(line)
            continue
        slot = unknown[0]
        for value in reversed(range(prob.m)):
            child = T.copy()
            child[slot] = value
            stack.append(child)
    return result
