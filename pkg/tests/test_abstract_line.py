import itertools
import json

import numpy as np
import pytest

from conftest import det_cross_ratio_table, model
from projline.abstract_line import (
    FiniteLine,
    build_coordinate_model,
    cross_ratio_abstract,
    line_from_json,
    line_to_json,
    load_line,
    save_line,
    verify_axioms,
)
from projline.arrows import LabeledArrow, ScalarArrow
from projline.coordinate_line import ProjPoint, compose, cross_ratio, enumerate_points
from projline.errors import BoundExceeded, MalformedTable, NotPrime, ParseError, PointsNotDistinct
from projline.scalars import FieldContext


def mutated(line, edits):
    comp = line.comp.copy()
    for key, value in edits:
        comp[key] = value
    return FiniteLine(line.ctx, line.points, comp)


def test_build_examples():
    assert model(3).n == 4
    assert model(2).n == 3 and verify_axioms(model(2)).passed
    assert model(7).n == 8 and verify_axioms(model(7)).passed
    with pytest.raises(NotPrime):
        build_coordinate_model(9)
    with pytest.raises(BoundExceeded):
        build_coordinate_model(29)
    assert build_coordinate_model(29, bound=29).n == 30


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11])
def test_coordinate_models_pass(p):
    report = verify_axioms(model(p))
    assert report.passed, report.violations[:5]
    assert report.groups_checked == list("abcdefg")
    assert report.summary() == "PASS (7 axiom groups)"


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_table_matches_compose(p):
    """The vectorised builder agrees with coordinate_line.compose on every pair."""
    ctx = FieldContext.prime(p)
    line = model(p)
    pts = {str(q): q for q in enumerate_points(ctx)}

    def lift(f):
        if isinstance(f, ScalarArrow):
            return ScalarArrow(pts[f.at], f.lam)
        return LabeledArrow(pts[f.src], pts[f.dst], pts[f.dir])

    for f in line.arrows():
        for g in line.arrows():
            if f.dst == g.src:
                assert lift(line.compose(f, g)) == compose(lift(f), lift(g))


@pytest.mark.parametrize("p", [3, 5, 7])
def test_cross_ratio_abstract_matches_determinant(p):
    line = model(p)
    oracle = det_cross_ratio_table(p)
    for A, B, C, D in itertools.permutations(range(line.n), 4):
        got = cross_ratio_abstract(line, *(line.points[i] for i in (A, B, C, D)))
        assert got.value == oracle[A, B, C, D]
    table = line.cross_ratio_table
    mask = oracle >= 0
    assert np.array_equal(table[mask], oracle[mask])


def test_cross_ratio_abstract_conventions():
    line = model(5)
    assert cross_ratio_abstract(line, "0:1", "1:0", "1:1", "1:1") == 1
    assert cross_ratio_abstract(line, "0:1", "1:0", "1:1", "1:3") == 3
    with pytest.raises(PointsNotDistinct):
        cross_ratio_abstract(line, "0:1", "1:0", "1:0", "1:3")
    assert line.cross_ratio("0:1", "1:0", "1:1", "1:0") == 0
    assert line.cross_ratio("0:1", "0:1", "1:1", "1:0") == 1


def test_cross_ratio_is_scalar_loop():
    """(A,B;C,D) is also the loop (C:A->B)(D:B->A)."""
    line = model(5)
    for A, B, C, D in itertools.permutations(line.points, 4):
        loop = line.compose(LabeledArrow(A, B, C), LabeledArrow(B, A, D))
        assert loop == ScalarArrow(A, cross_ratio_abstract(line, A, B, C, D))


def test_gf3_cross_ratio_minus_one():
    line = model(3)
    for quad in itertools.permutations(line.points):
        assert cross_ratio_abstract(line, *quad) == 2


# --- mutation tests: each group can fail -------------------------------------


def groups(report):
    return set(report.failed_groups)


def test_mutation_cardinality():
    line = model(3)
    ctx = FieldContext.prime(3)
    five = ["a", "b", "c", "d", "e"]
    comp = np.zeros((5, 5, 5, 3, 3), dtype=np.int32)
    bad = FiniteLine(ctx, five, comp)
    report = verify_axioms(bad)
    assert groups(report) == {"a"}
    assert not report.passed
    assert line.n == 4


def test_mutation_swapped_labeled_entry():
    line = model(3)
    X, Y, Z = 0, 1, 2
    value = line.comp[X, Y, Z, 0, 0]
    report = verify_axioms(mutated(line, [((X, Y, Z, 0, 0), 1 - value)]))
    assert not report.passed
    assert groups(report) & {"b", "f"}


def test_mutation_identity():
    line = model(5)
    report = verify_axioms(mutated(line, [((0, 0, 1, 0, 0), 1)]))
    assert "b" in groups(report)
    assert any(v.axiom == "left identity" for v in report.violations)


def test_mutation_invertibility():
    line = model(5)
    X, Y = 0, 1
    edits = [((X, Y, X, 0, j), 1) for j in range(4)]
    report = verify_axioms(mutated(line, edits))
    assert "c" in groups(report)


def test_mutation_vertex_addition():
    line = model(5)
    comp = line.comp.copy()
    for X in range(line.n):
        for i, j in itertools.product(range(4), repeat=2):
            comp[X, X, X, i, j] = ((i + 1) + (j + 1)) % 5 - 1 if ((i + 1) + (j + 1)) % 5 else 0
    report = verify_axioms(FiniteLine(line.ctx, line.points, comp))
    assert "d" in groups(report)


def test_mutation_centrality():
    line = model(5)
    X, Y = 0, 1
    value = line.comp[X, X, Y, 1, 0]
    report = verify_axioms(mutated(line, [((X, X, Y, 1, 0), (value + 1) % 4)]))
    assert "e" in groups(report)


def test_mutation_idempotence():
    line = model(5)
    lab = line.lab
    X, Y, F = 0, 1, 2
    report = verify_axioms(mutated(line, [((X, Y, X, lab[X, Y, F], lab[Y, X, F]), 1)]))
    assert "f" in groups(report)


def test_mutation_permutation_law():
    line = model(5)
    lab = line.lab
    A, B, C, D = 0, 1, 2, 3
    old = line.comp[A, A, B, 1, lab[A, B, D]]
    other = line.comp[A, A, B, 2, lab[A, B, D]]
    edits = [((A, A, B, 1, lab[A, B, D]), other), ((A, A, B, 2, lab[A, B, D]), old)]
    report = verify_axioms(mutated(line, edits))
    assert "g" in groups(report)


def test_early_exit_and_cap():
    line = model(5)
    comp = line.comp.copy()
    comp[:, :, :, 0, 0] = 0
    broken = FiniteLine(line.ctx, line.points, comp)
    assert len(verify_axioms(broken, early_exit=True).violations) == 1
    assert len(verify_axioms(broken, cap=7).violations) == 7
    assert len(verify_axioms(broken).violations) == 100


def test_assoc_skipped_above_bound():
    report = verify_axioms(model(5), assoc_bound=3)
    assert report.passed
    assert report.skipped and "associativity" in report.skipped[0]


# --- structure files ---------------------------------------------------------------


@pytest.mark.parametrize("p", [2, 3, 5, 11])
def test_json_round_trip(p, tmp_path):
    line = model(p)
    text = line_to_json(line)
    back = line_from_json(text)
    assert back == line
    assert line_to_json(back) == text
    path = tmp_path / "m.json"
    save_line(line, path)
    assert path.read_text() == text
    assert load_line(path) == line


def test_json_schema_shape():
    doc = json.loads(line_to_json(model(3)))
    assert doc["field"] == {"kind": "prime", "p": 3}
    assert doc["points"] == sorted(doc["points"])
    assert len(doc["comp"]) == 4**3 * 2 * 2
    entry = doc["comp"][0]
    assert set(entry) == {"f", "g", "fg"}
    keys = [(json.dumps(e["f"], sort_keys=True), json.dumps(e["g"], sort_keys=True)) for e in doc["comp"]]
    assert keys == sorted(keys)


def test_reordered_line_is_equal():
    line = model(5)
    shuffled = line.reordered(list(reversed(line.points)))
    assert shuffled == line
    assert verify_axioms(shuffled).passed
    assert shuffled.compose(LabeledArrow("1:0", "0:1", "1:1"), LabeledArrow("0:1", "1:2", "1:1")) == LabeledArrow("1:0", "1:2", "1:1")


def _doc(line):
    return json.loads(line_to_json(line))


def test_malformed_files():
    doc = _doc(model(2))
    missing = dict(doc, comp=doc["comp"][1:])
    with pytest.raises(MalformedTable):
        line_from_json(json.dumps(missing))
    wrong = json.loads(json.dumps(doc))
    e = wrong["comp"][0]
    e["fg"] = {"scalar": {"at": "nowhere", "lambda": "1"}}
    with pytest.raises(MalformedTable):
        line_from_json(json.dumps(wrong))
    not_closed = json.loads(json.dumps(doc))
    for e in not_closed["comp"]:
        if "labeled" in e["f"] and "labeled" in e["g"] and e["f"]["labeled"]["src"] != e["g"]["labeled"]["dst"]:
            src = e["f"]["labeled"]["src"]
            e["fg"] = {"scalar": {"at": src, "lambda": "1"}}
            break
    with pytest.raises(MalformedTable):
        line_from_json(json.dumps(not_closed))
    with pytest.raises(ParseError):
        line_from_json("{")
    with pytest.raises(ParseError):
        line_from_json(json.dumps({"field": {"kind": "rational"}, "points": [], "comp": []}))
    with pytest.raises(NotPrime):
        line_from_json(json.dumps({"field": {"kind": "prime", "p": 4}, "points": [], "comp": []}))
