import itertools
from fractions import Fraction

import pytest

from conftest import model
from projline.coordinate_line import CoordinateLine, ProjPoint
from projline.errors import PunctureInTerms, TriplesNotDistinct, WeightsNotAffine, ZeroEqualsPuncture
from projline.moebius import act, enumerate_pgl
from projline.punctured import (
    affine_combine,
    basis_coordinate,
    chart,
    default_points,
    vector_add,
    vector_neg,
    vector_scale,
)
from projline.scalars import FieldContext

Vp, Hp, Dp = "0:1", "1:0", "1:1"


def others(line, *exclude):
    return [q for q in line.points if q not in exclude]


def test_chart_examples():
    L = model(7)
    h = chart(L, Vp, Hp, Dp)
    for x in range(7):
        assert h(f"1:{x}") == x
        assert h.inverse(x) == f"1:{x}"
    for A, B, C in itertools.permutations(L.points, 3):
        g = chart(L, A, B, C)
        assert g(B) == 0 and g(C) == 1
        assert sorted(g(X).value for X in others(L, A)) == list(range(7))
    with pytest.raises(TriplesNotDistinct):
        chart(L, Vp, Vp, Dp)
    with pytest.raises(PunctureInTerms):
        h(Vp)


def test_chart_on_coordinate_line():
    Q = CoordinateLine(FieldContext.rational())
    A, B, C = (ProjPoint.parse(Q.ctx, s) for s in ("1:2", "1:-1", "0:1"))
    h = chart(Q, A, B, C)
    assert h(B) == 0 and h(C) == 1
    for x in (Fraction(1, 3), Fraction(-5, 2), 7):
        assert h(h.inverse(x)) == x


def test_affine_examples():
    L = model(5)
    X = "1:3"
    assert affine_combine(L, Vp, [(1, X)]) == X
    assert affine_combine(L, Vp, [(3, "1:1"), (3, "1:3")]) == "1:2"


def test_affine_two_minus_one_all_aux():
    L = model(5)
    for X, Y in itertools.permutations(others(L, Vp), 2):
        x, y = int(X.split(":")[1]), int(Y.split(":")[1])
        for B, C in itertools.permutations(others(L, Vp), 2):
            assert affine_combine(L, Vp, [(2, X), (-1, Y)], aux=(B, C)) == f"1:{(2 * x - y) % 5}"


def test_affine_errors():
    L = model(5)
    with pytest.raises(WeightsNotAffine):
        affine_combine(L, Vp, [(1, "1:1"), (1, "1:2")])
    with pytest.raises(PunctureInTerms):
        affine_combine(L, Vp, [(1, Vp)])


def test_vector_examples():
    L5, L7 = model(5), model(7)
    for Y in others(L5, Vp):
        assert vector_add(L5, Vp, Hp, Hp, Y) == Y
    assert vector_add(L5, Vp, Hp, "1:2", "1:2") == "1:4"
    assert vector_scale(L7, Vp, Hp, 2, "1:3") == "1:6"
    assert vector_scale(L7, Vp, Hp, 1, "1:3") == "1:3"
    assert vector_scale(L7, Vp, Hp, 0, "1:3") == Hp
    assert vector_neg(L7, Vp, Hp, "1:3") == "1:4"
    with pytest.raises(ZeroEqualsPuncture):
        vector_add(L5, Vp, Vp, "1:1", "1:2")
    with pytest.raises(PunctureInTerms):
        vector_add(L5, Vp, Hp, Vp, "1:2")


@pytest.mark.parametrize("p", [3, 5])
def test_choice_independence(p):
    L = model(p)
    for A in L.points:
        rest = others(L, A)
        aux_pairs = list(itertools.permutations(rest, 2))
        for X, Y in itertools.product(rest, repeat=2):
            for w in range(p):
                terms = [(w, X), (1 - w, Y)]
                results = {affine_combine(L, A, terms, aux=aux) for aux in aux_pairs}
                assert len(results) == 1
        for B in rest:
            cs = others(L, A, B)
            for X, Y in itertools.product(rest, repeat=2):
                assert len({vector_add(L, A, B, X, Y, aux=C) for C in cs}) == 1
            for lam, X in itertools.product(range(p), rest):
                assert len({vector_scale(L, A, B, lam, X, aux=C) for C in cs}) == 1


def test_vector_space_axioms_p5():
    L = model(5)
    for A in L.points:
        for B in others(L, A):
            vecs = others(L, A)

            def add(x, y):
                return vector_add(L, A, B, x, y)

            def mul(c, x):
                return vector_scale(L, A, B, c, x)

            for X, Y in itertools.product(vecs, repeat=2):
                assert add(X, Y) == add(Y, X)
                for Z in vecs:
                    assert add(add(X, Y), Z) == add(X, add(Y, Z))
                for c in range(5):
                    assert mul(c, add(X, Y)) == add(mul(c, X), mul(c, Y))
            for X in vecs:
                assert add(B, X) == X
                assert add(X, vector_neg(L, A, B, X)) == B
                assert mul(1, X) == X
                for c, d in itertools.product(range(5), repeat=2):
                    assert mul(c * d, X) == mul(c, mul(d, X))
                    assert mul(c + d, X) == add(mul(c, X), mul(d, X))


def test_affine_via_vectors():
    """w X + (1 - w) Y = Z + w (X - Z) + (1 - w)(Y - Z) for any zero Z."""
    L = model(5)
    A = Vp
    for Z, X, Y in itertools.product(others(L, A), repeat=3):
        for w in range(5):
            wx = vector_scale(L, A, Z, w, X)
            wy = vector_scale(L, A, Z, 1 - w, Y)
            assert vector_add(L, A, Z, wx, wy) == affine_combine(L, A, [(w, X), (1 - w, Y)])


def test_projectivities_affine_and_linear_in_charts():
    L = model(5)
    F5 = L.ctx
    pts = {q: ProjPoint.parse(F5, q) for q in L.points}
    A, B, C = Vp, Hp, Dp
    h = chart(L, A, B, C)
    fixing_a = fixing_ab = 0
    for g in enumerate_pgl(5):
        image = {q: str(act(g, pts[q])) for q in L.points}
        if image[A] != A:
            continue
        fixing_a += 1
        f = {h(X): h(image[X]) for X in others(L, A)}
        t, s = f[F5(0)], f[F5(1)] - f[F5(0)]
        assert s != 0
        assert all(f[F5(x)] == t + s * x for x in range(5))
        if image[B] == B:
            fixing_ab += 1
            assert t == 0
    assert fixing_a == 20 and fixing_ab == 4


def test_basis_coordinate_gf3():
    L = model(3)
    for A, B, C in itertools.permutations(L.points, 3):
        h = basis_coordinate(L, A, B, C)
        (fourth,) = others(L, A, B, C)
        assert (h(B), h(C), h(fourth)) == (0, 1, 2)


def test_basis_coordinate_unique_p3():
    """Only one bijection onto GF(3) respects zero, basis vector and the operations."""
    L = model(3)
    F3 = L.ctx
    A, B, C = Vp, Hp, Dp
    h = basis_coordinate(L, A, B, C)
    rest = others(L, A)
    hits = []
    for values in itertools.permutations(range(3)):
        f = dict(zip(rest, (F3(v) for v in values)))
        if f[B] != 0 or f[C] != 1:
            continue
        ok = all(f[vector_add(L, A, B, X, Y)] == f[X] + f[Y] for X, Y in itertools.product(rest, repeat=2))
        ok = ok and all(f[vector_scale(L, A, B, c, X)] == c * f[X] for c in range(3) for X in rest)
        if ok:
            hits.append(f)
    assert hits == [{X: h(X) for X in rest}]


def test_rational_operations():
    Q = CoordinateLine(FieldContext.rational())
    V, H = Q.point("0:1"), Q.point("1:0")
    X, Y = Q.point("1/2"), Q.point("3")
    assert vector_add(Q, V, H, X, Y) == Q.point("7/2")
    assert vector_scale(Q, V, H, Fraction(2, 3), Y) == Q.point("2")
    assert affine_combine(Q, V, [(Fraction(1, 2), X), (Fraction(1, 2), Y)]) == Q.point("7/4")
    # a different zero and auxiliary gives the translated answer
    Z = Q.point("1")
    assert vector_add(Q, V, Z, X, Y) == Q.point("5/2")
    assert vector_add(Q, V, Z, X, Y, aux=Q.point("-4")) == Q.point("5/2")
    assert default_points(Q, [V], 2) == [Q.point("1:0"), Q.point("1:1")]
