import pytest

import ualg


def test_corpus_algebras():
    s3 = ualg.algebra("S3")
    assert s3.size == 6
    assert s3.theory == "Grp"
    assert ("mul", 2) in s3.symbols
    assert s3.satisfies_axioms()
    assert ualg.algebra("Z4").apply("mul", [3, 2]) == 1
    assert len(ualg.algebras()) > 20


def test_errors_become_value_errors():
    with pytest.raises(ValueError, match="dangling-reference"):
        ualg.algebra("Nope")
    with pytest.raises(ValueError, match="arity-mismatch"):
        ualg.algebra("Z4").apply("mul", [1])


def test_decisions():
    assert ualg.maltsev("M2") is False
    assert isinstance(ualg.maltsev("Z2"), str)
    assert len(ualg.congruences("Z8")) == 4
    assert [[0, 2, 4, 6], [1, 3, 5, 7]] in ualg.congruences("Z8")


def test_sweep_and_cli():
    assert all(holds for _, _, holds, _ in ualg.invariant_sweep())
    rep = ualg.report("--no-timing", "hom", "--dom", "Z4", "--cod", "Z2", "--map", "0,1,1,0")
    assert rep["exit_code"] == 1
    assert rep["checks"][0]["witness"] == "fails on 'mul' at {1,1}"
    code, _, _ = ualg.run(["bogus"])
    assert code == 2
