import os
from fractions import Fraction
from pathlib import Path

import pytest

import foldkit

FIXTURES = Path(__file__).resolve().parents[2] / "fixtures"


def test_fold_a3():
    d = foldkit.fold(FIXTURES / "a3.quiver")
    assert d["labels"] == ["{1,3}", "{2}"]
    assert d["gcm"] == [[2, -1], [-2, 2]]
    assert d["type"] == "Finite"


def test_mult_and_weyl_dim():
    t = foldkit.mult("2,-1;-1,2", [1, 1], 10)
    assert t[(1, 1)] == 2
    assert sum(t.values()) == 8 == foldkit.weyl_dim("2,-1;-1,2", [1, 1])


def test_basic_affine_sl2():
    t = foldkit.mult("2,-2;-2,2", [1, 0], 12)
    assert [t[(n, n)] for n in range(7)] == [1, 1, 2, 3, 5, 7, 11]


def test_crystal_matches_mult():
    assert foldkit.crystal_census("4,-2;-2,2", [1, 1], 5) == foldkit.mult("4,-2;-2,2", [1, 1], 5)


def test_fixed_census_d4():
    t = foldkit.fixed_census(FIXTURES / "d4.quiver", [1, 0, 0, 0], 4)
    assert t[(0, 0, 0, 0)] == 1
    assert all(nu[1] == nu[2] == nu[3] for nu in t)


def test_ch_a_and_verify():
    s = foldkit.ch_a(FIXTURES / "cycle4.quiver", [1, 0, 1, 0], 4, crystal_check=True)
    assert s[Fraction(-1, 24)] == 1
    assert s[Fraction(23, 24)] == 3
    assert foldkit.ch_a(FIXTURES / "cycle4.quiver", [1, 0, 0, 0], 4) == {}
    ok, text = foldkit.verify(FIXTURES / "cycle4.quiver", [1, 0, 1, 0], 4)
    assert ok and text.startswith("verified")


def test_errors_become_value_errors():
    with pytest.raises(ValueError):
        foldkit.mult("3", [1], 2)
    with pytest.raises(foldkit.InputError):
        foldkit.fold(FIXTURES / "bad_syntax.quiver")


def test_repcheck_and_cli():
    ok, tsv = foldkit.repcheck(seed=2, trials=20)
    assert ok and tsv.startswith("property\ttrials")
    code, out, err = foldkit.run(["fold", "--quiver", os.fspath(FIXTURES / "a3.quiver")])
    assert code == 0 and "{2}\t-2\t2" in out
    code, _, err = foldkit.run(["mult", "--cartan", "2", "--lambda", "1", "--depth", "-1"])
    assert code == 2 and "error" in err
