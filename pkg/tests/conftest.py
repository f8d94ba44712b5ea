import itertools

import numpy as np
import pytest

from projline.abstract_line import build_coordinate_model


def int_points(p):
    """Canonical reps of P(GF(p)^2) as int pairs, in enumeration order."""
    return [(0, 1)] + [(1, x) for x in range(p)]


def int_det(a, b, p):
    return (a[0] * b[1] - a[1] * b[0]) % p


def int_cross_ratio(a, b, c, d, p):
    """Determinant formula with plain ints, independent of the Scalar class."""
    num = int_det(a, c, p) * int_det(b, d, p)
    den = int_det(a, d, p) * int_det(b, c, p)
    return num * pow(den, -1, p) % p


def det_cross_ratio_table(p):
    pts = int_points(p)
    n = len(pts)
    cr = np.full((n, n, n, n), -1, dtype=np.int64)
    for A, B, C, D in itertools.permutations(range(n), 4):
        cr[A, B, C, D] = int_cross_ratio(pts[A], pts[B], pts[C], pts[D], p)
    return cr


_models = {}


def model(p):
    if p not in _models:
        _models[p] = build_coordinate_model(p)
    return _models[p]


@pytest.fixture(scope="session")
def models():
    return model
