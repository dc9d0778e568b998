import os

import pytest

import izro


def data_path(*parts):
    root = os.environ.get("IZRO_DATA_DIR")
    if root is None:
        here = os.path.dirname(os.path.abspath(__file__))
        root = os.path.join(here, "..", "..", "data")
    return os.path.join(root, *parts)


def test_terms_round_trip():
    t = izro.parse_term("((x -> y') -> x)")
    assert str(t) == "((x -> y') -> x)"
    assert izro.parse_term(str(t)) == t
    assert t.variables() == ["x", "y"]


def test_parse_error_is_typed():
    with pytest.raises(izro.IzroError):
        izro.parse_term("x -> -> y")


def test_catalog():
    labels = izro.catalog_labels()
    assert "DM" in labels and "L3.3.63" in labels
    assert sum(1 for l in labels if l.startswith("L3.3.")) == 63
    assert izro.catalog_identity("DM") == "((x -> y) -> x) = x"


def test_builtin_checks():
    s2 = izro.Algebra.builtin("2s")
    res = izro.check_dict(s2, "DM")
    assert not res["holds"]
    assert res["counterexample"]["assignment"] == {"x": 0, "y": 1}

    b2 = izro.Algebra.builtin("2b")
    assert izro.check(b2, "BA")
    assert izro.check(b2, "(x -> x) = 0'")
    assert not izro.check(izro.Algebra.builtin("3k"), "BA")


def test_evaluate():
    k3 = izro.Algebra.builtin("3k")
    t = izro.parse_term("(x -> y) -> x")
    assert izro.evaluate(k3, t, {"x": 2, "y": 0}) == 2


def test_congruences_and_simplicity():
    d4 = izro.Algebra.builtin("4d")
    assert izro.is_simple(d4)
    assert len(izro.all_congruences(d4)) == 2

    b2 = izro.Algebra.builtin("2b")
    bb = izro.direct_product(b2, b2)
    assert not izro.is_simple(bb)
    si, monolith = izro.is_subdirectly_irreducible(bb)
    assert not si and monolith is None


def test_enumeration():
    out = izro.enumerate_models(2)
    assert out["exhaustive"]
    assert len(out["models"]) == 3
    assert all(m["simple"] for m in out["models"])

    census = izro.classify_simples(4)
    assert census["incomplete_sizes"] == []
    assert len(census["simples"]) == 5


def test_free_algebra_and_variety():
    b2 = izro.Algebra.builtin("2b")
    free = izro.free_algebra([b2], 1)
    assert free["algebra"].size == 4

    k3 = izro.Algebra.builtin("3k")
    assert izro.in_variety(b2, [k3])["verdict"] == "member"
    s2 = izro.Algebra.builtin("2s")
    nm = izro.in_variety(s2, [izro.Algebra.builtin("4d")])
    assert nm["verdict"] == "non-member"
    assert nm["separating_identity"] == "((x -> y) -> x) = x"


def test_lattice():
    base = [izro.Algebra.builtin(n) for n in izro.builtin_algebra_names()]
    labels = izro.variety_lattice_nodes(base)
    assert len(labels) == 16
    assert labels[0] == "T"
    assert izro.lattice_shape_ok(base)


def test_replay_shipped_script():
    path = data_path("proofs", "L3.3.20.prf")
    result = izro.replay_file(path)
    assert result["ok"], result

    corpus = [izro.Algebra.builtin(n) for n in ("2s", "2b", "3k", "4d")]
    assert izro.cross_check_file(path, corpus)


def test_replay_text_negative():
    bad = """proof demo
goal (0 -> a) = a
start (0 -> a)
= a by L3.2a
"""
    result = izro.replay_text(bad)
    assert not result["ok"]  # 0 -> a is not an instance of 0' -> x
