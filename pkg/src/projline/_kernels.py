"""Hot loops over integer-encoded composition tables.

A finite line with n points over GF(p) stores its composition as an int32
array ``comp[X, Y, Z, i, j]``: the hom-index (in hom(X, Z)) of the composite of
arrow ``i`` in hom(X, Y) with arrow ``j`` in hom(Y, Z).  Every kernel here has a
numba version and a pure-numpy version with identical results.  Set
``PROJLINE_DISABLE_NUMBA=1`` to force the numpy path.
"""

from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

DISABLE_ENV = "PROJLINE_DISABLE_NUMBA"
USE_NUMBA = HAVE_NUMBA and os.environ.get(DISABLE_ENV, "").strip().lower() not in ("1", "true", "yes", "on")

BACKEND = "numba" if USE_NUMBA else "numpy"


# --- associativity -----------------------------------------------------------


def associativity_violations_np(comp: np.ndarray, limit: int = 1) -> np.ndarray:
    """Rows (X, Y, Z, W, i, j, l) where (ij)l != i(jl), in lexicographic order; at most ``limit`` rows."""
    n, m = comp.shape[0], comp.shape[3]
    out = []
    ar_n = np.arange(n)
    ar_m = np.arange(m)
    # axes: Y, Z, W, i, j, l
    Yb = ar_n[:, None, None, None, None, None]
    Zb = ar_n[None, :, None, None, None, None]
    Wb = ar_n[None, None, :, None, None, None]
    ib = ar_m[None, None, None, :, None, None]
    jb = ar_m[None, None, None, None, :, None]
    lb = ar_m[None, None, None, None, None, :]
    gh = comp[Yb, Zb, Wb, jb, lb]  # hom(Y, W) index, independent of X
    for X in range(n):
        cx = comp[X]
        fg = cx[Yb, Zb, ib, jb]  # hom(X, Z)
        left = cx[Zb, Wb, fg, lb]
        right = cx[Yb, Wb, ib, gh]
        bad = np.argwhere(left != right)
        for row in bad[: limit - len(out)]:
            Y, Z, W, i, j, l = (int(v) for v in row)
            out.append((X, Y, Z, W, i, j, l))
        if len(out) >= limit:
            break
    return np.array(out, dtype=np.int64).reshape(-1, 7)


def _associativity_violations_nb(comp, limit):
    n = comp.shape[0]
    m = comp.shape[3]
    out = np.empty((limit, 7), dtype=np.int64)
    k = 0
    for X in range(n):
        for Y in range(n):
            for Z in range(n):
                for W in range(n):
                    for i in range(m):
                        for j in range(m):
                            fg = comp[X, Y, Z, i, j]
                            for l in range(m):
                                gh = comp[Y, Z, W, j, l]
                                if comp[X, Z, W, fg, l] != comp[X, Y, W, i, gh]:
                                    out[k, 0] = X
                                    out[k, 1] = Y
                                    out[k, 2] = Z
                                    out[k, 3] = W
                                    out[k, 4] = i
                                    out[k, 5] = j
                                    out[k, 6] = l
                                    k += 1
                                    if k >= limit:
                                        return out[:k]
    return out[:k]


# --- functoriality -------------------------------------------------------------


def functor_violation_np(comp_src, comp_dst, pmap, relabel) -> np.ndarray:
    """First (X, Y, Z, i, j) where the relabelled composite disagrees, else empty.

    ``relabel[X, Y, i]`` is the hom(phi X, phi Y) index of the image of arrow i.
    """
    n, m = comp_src.shape[0], comp_src.shape[3]
    ar_n = np.arange(n)
    ar_m = np.arange(m)
    Xb = ar_n[:, None, None, None, None]
    Yb = ar_n[None, :, None, None, None]
    Zb = ar_n[None, None, :, None, None]
    ib = ar_m[None, None, None, :, None]
    jb = ar_m[None, None, None, None, :]
    image_of_composite = relabel[Xb, Zb, comp_src]
    composite_of_images = comp_dst[pmap[Xb], pmap[Yb], pmap[Zb], relabel[Xb, Yb, ib], relabel[Yb, Zb, jb]]
    bad = np.argwhere(image_of_composite != composite_of_images)
    if len(bad):
        return bad[0].astype(np.int64)
    return np.empty(0, dtype=np.int64)


def _functor_violation_nb(comp_src, comp_dst, pmap, relabel):
    n = comp_src.shape[0]
    m = comp_src.shape[3]
    for X in range(n):
        pX = pmap[X]
        for Y in range(n):
            pY = pmap[Y]
            for Z in range(n):
                pZ = pmap[Z]
                for i in range(m):
                    ri = relabel[X, Y, i]
                    for j in range(m):
                        lhs = relabel[X, Z, comp_src[X, Y, Z, i, j]]
                        rhs = comp_dst[pX, pY, pZ, ri, relabel[Y, Z, j]]
                        if lhs != rhs:
                            out = np.empty(5, dtype=np.int64)
                            out[0] = X
                            out[1] = Y
                            out[2] = Z
                            out[3] = i
                            out[4] = j
                            return out
    return np.empty(0, dtype=np.int64)


# --- cross-ratio preservation --------------------------------------------------


def cross_ratio_preserved_np(cr_src, cr_dst, pmap) -> bool:
    """cr_dst[phi A, phi B, phi C, phi D] == cr_src[A, B, C, D] everywhere."""
    return bool(np.array_equal(cr_dst[np.ix_(pmap, pmap, pmap, pmap)], cr_src))


def _cross_ratio_preserved_nb(cr_src, cr_dst, pmap):
    n = cr_src.shape[0]
    for A in range(n):
        for B in range(n):
            for C in range(n):
                for D in range(n):
                    if cr_dst[pmap[A], pmap[B], pmap[C], pmap[D]] != cr_src[A, B, C, D]:
                        return False
    return True


if HAVE_NUMBA:
    associativity_violations_nb = njit(cache=True)(_associativity_violations_nb)
    functor_violation_nb = njit(cache=True)(_functor_violation_nb)
    cross_ratio_preserved_nb = njit(cache=True)(_cross_ratio_preserved_nb)
else:  # pragma: no cover
    associativity_violations_nb = _associativity_violations_nb
    functor_violation_nb = _functor_violation_nb
    cross_ratio_preserved_nb = _cross_ratio_preserved_nb


if USE_NUMBA:
    associativity_violations = associativity_violations_nb
    functor_violation = functor_violation_nb
    cross_ratio_preserved = cross_ratio_preserved_nb
else:
    associativity_violations = associativity_violations_np
    functor_violation = functor_violation_np
    cross_ratio_preserved = cross_ratio_preserved_np
