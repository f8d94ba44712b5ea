import itertools

import pytest

from conftest import model
from projline.abstract_line import verify_axioms
from projline.arrows import ScalarArrow
from projline.bundles import (
    GF3_POINTS,
    AffineAutomorphism,
    affine_cocycle,
    affine_cocycle_from_charts,
    check_affine_cocycle,
    check_line_cocycle,
    gf3_all_permutations,
    gf3_line,
    gf3_projectivity_count,
    gf3_unique_structure,
    line_cocycle,
)
from projline.errors import PointsNotDistinct, TriplesNotDistinct
from projline.moebius import enumerate_pgl
from projline.scalars import FieldContext

F5 = FieldContext.prime(5)


def sections(line, A):
    return list(itertools.permutations([q for q in line.points if q != A], 2))


def test_affine_automorphism_group_laws():
    elems = [AffineAutomorphism(F5(t), F5(s)) for t in range(5) for s in range(1, 5)]
    e = AffineAutomorphism.identity(F5)
    for g in elems:
        assert g.then(e) == g == e.then(g)
        assert g.then(g.inverse()) == e
        for h in elems[::3]:
            for x in range(5):
                assert g.then(h)(F5(x)) == h(g(F5(x)))
    g = AffineAutomorphism.from_values(F5(2), F5(4))
    assert (g.t, g.s) == (2, 2)
    assert g.values() == (2, 4)
    with pytest.raises(ValueError):
        AffineAutomorphism(F5(1), F5(0))


def test_affine_cocycle_examples():
    L = model(5)
    A = "0:1"
    assert affine_cocycle(L, A, ("1:0", "1:1"), ("1:0", "1:1")) == AffineAutomorphism.identity(F5)
    B, C, C2 = "1:0", "1:1", "1:3"
    g = affine_cocycle(L, A, (B, C), (B, C2))
    assert g.t == 0
    assert g.s == L.cross_ratio(A, B, C2, C)
    got = affine_cocycle(L, A, ("1:0", "1:1"), ("1:1", "1:3"))
    assert got == affine_cocycle_from_charts(L, A, ("1:0", "1:1"), ("1:1", "1:3"))
    assert (got.t, got.s) == (2, 3)


def test_affine_cocycle_errors():
    L = model(5)
    with pytest.raises(TriplesNotDistinct):
        affine_cocycle(L, "0:1", ("0:1", "1:1"), ("1:0", "1:1"))
    with pytest.raises(TriplesNotDistinct):
        affine_cocycle(L, "0:1", ("1:1", "1:1"), ("1:0", "1:1"))


@pytest.mark.parametrize("p", [3, 5])
def test_closed_form_matches_charts(p):
    L = model(p)
    for A in L.points:
        secs = sections(L, A)
        for s1, s2 in itertools.product(secs, repeat=2):
            assert affine_cocycle(L, A, s1, s2) == affine_cocycle_from_charts(L, A, s1, s2)


@pytest.mark.parametrize("p", [3, 5])
def test_affine_cocycle_condition(p):
    L = model(p)
    for A in L.points[:2] if p == 5 else L.points:
        secs = sections(L, A)
        for triple in itertools.product(secs, repeat=3):
            assert check_affine_cocycle(L, A, triple)


def test_negated_slope_breaks_condition():
    L = model(5)

    def mutated(line, A, s1, s2):
        g = affine_cocycle(line, A, s1, s2)
        return AffineAutomorphism(g.t, -g.s)

    A = "0:1"
    secs = sections(L, A)
    assert not all(check_affine_cocycle(L, A, t, cocycle=mutated) for t in itertools.product(secs, repeat=3))


@pytest.mark.parametrize("p", [3, 5, 7])
def test_line_cocycle_identities(p):
    L = model(p)
    for A, B in itertools.permutations(L.points, 2):
        rest = [q for q in L.points if q not in (A, B)]
        for C in rest:
            assert line_cocycle(L, (A, B), C, C) == 1
            for C2 in rest:
                assert line_cocycle(L, (A, B), C, C2) * line_cocycle(L, (A, B), C2, C) == 1
                for C3 in rest:
                    assert check_line_cocycle(L, (A, B), C, C2, C3)


def test_line_cocycle_errors():
    L = model(5)
    with pytest.raises(PointsNotDistinct):
        line_cocycle(L, ("0:1", "1:0"), "1:0", "1:1")


def test_gf3_line_facts():
    L = gf3_line()
    assert L.points == GF3_POINTS
    assert verify_axioms(L).passed
    for X, Y in itertools.permutations(range(4), 2):
        assert L.hom_size(X, Y) == 2
    for X in range(4):
        assert L.hom_size(X, X) == 2
        assert set(L.hom(GF3_POINTS[X], GF3_POINTS[X])) == {ScalarArrow(GF3_POINTS[X], L.ctx(v)) for v in (1, 2)}
    for quad in itertools.permutations(GF3_POINTS):
        assert L.cross_ratio(*quad) == 2


def test_gf3_unique_structure():
    line, cert = gf3_unique_structure()
    assert cert.solutions == 1
    assert cert.unique and cert.verify_passed and cert.matches_coordinate_model
    assert line == gf3_line()


def test_gf3_permutations():
    assert gf3_all_permutations()
    assert gf3_projectivity_count() == 24 == len(enumerate_pgl(3))
