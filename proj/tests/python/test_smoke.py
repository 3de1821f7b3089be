import pathlib

import pytest

import tierlang

CORPUS = pathlib.Path(__file__).resolve().parents[2] / "corpus"


def source(name):
    return (CORPUS / f"{name}.aoo").read_text()


def test_list_loop_bound():
    r = tierlang.bound(source("blist_loop"))
    assert r["schema"] == tierlang.SCHEMA
    assert (r["n1"], r["nu"], r["lambda"]) == (1, 1, 0)
    assert r["summary"] == "SAFE; time O(n^1); heap O(n); stack O(n)"


def test_validation_rows():
    r = tierlang.bound(source("blist_loop"), validate=[8, 16, 32])
    assert [row["n"] for row in r["validation"]] == [8, 16, 32]
    assert r["fit"]["pass"]


def test_exp_untypable():
    r = tierlang.infer(source("exp"))
    assert not r["typable"]
    assert r["diagnostics"]


def test_decrement_unsafe():
    r = tierlang.safety(source("blist_decrement"))
    assert r["typable"] and not r["safe"]
    assert any("Item 3" in s for s in r["reasons"])


def test_flatten_introduces_temporaries():
    assert "$f" in tierlang.flatten(source("blist_loop"))


def test_run_metrics():
    r = tierlang.run(source("add"))
    assert r["outcome"] == "terminated"
    assert r["variables"]["r"] == "11"


def test_syntax_error():
    with pytest.raises(ValueError):
        tierlang.parse("Exe { void main() { //Comp\n x := ; } }")
