import json
import os
from pathlib import Path

import pytest

import ekpdim

FIXTURES = Path(os.environ.get("EKPDIM_FIXTURES", Path(__file__).resolve().parents[2] / "fixtures"))


def load(name):
    return json.loads((FIXTURES / name).read_text())


def test_quadratic_form_and_classification():
    assert ekpdim.q(3, 30, 31) == -929
    assert ekpdim.classify(3, 30, 31) == "Imaginary"
    assert ekpdim.classify(3, 1, 3) == "Real Preprojective"
    assert ekpdim.ekp_dim(3, 14, 36)
    assert ekpdim.floor_times_lr(3, 3) == 7


def test_big_integers_round_trip():
    a = 10**40 + 7
    assert ekpdim.coxeter_inv(3, *ekpdim.coxeter(3, a, 2 * a)) == (a, 2 * a)


def test_orbit_example():
    o = ekpdim.orbit(3, 30, 31)
    assert [e["dim"] for e in o["window"]] == [
        (2814, 7367), (411, 1075), (63, 158), (30, 31), (147, 59), (999, 382), (6846, 2615)]
    assert o["delta"] == (999, 382)
    assert o["m"] == 5
    assert ekpdim.w_bound(3, 30, 31, 1) == 5
    assert ekpdim.a_seq(3, 5) == [1, 3, 8, 21, 55]


def test_checks_pass():
    result = ekpdim.check("distance", 3, 500)
    assert result["outcome"] == "Pass"
    assert "elapsed_seconds" not in result


def test_representations():
    assert ekpdim.rep_check(load("intro_left.json"))["ekp"]["holds"]
    right = ekpdim.rep_check(load("intro_right.json"))["ekp"]
    assert not right["holds"] and right["witness"] is not None
    x = ekpdim.make_x_alpha(3, [1, 0, 0])
    assert x == load("xalpha_e1.json")
    assert ekpdim.hom_dim(x, x) == 1
    assert ekpdim.ext_dim(x, x) == 2


def test_cover():
    shifted = ekpdim.tau_inv_dim(load("star_2_111.json"))
    assert len(shifted["vertices"]) == 22
    assert ekpdim.pushdown_dim(shifted) == (7, 18)
    assert ekpdim.thin_sink_branch(load("thin_star.json")) == (0, 1)
    assert ekpdim.pushdown_dim(load("thin_star.json")) == (1, 3)
    assert ekpdim.rep_check(ekpdim.pushdown_rep(load("thin_star.json")))["ekp"]["holds"]


def test_errors():
    with pytest.raises(ekpdim.PreconditionError):
        ekpdim.orbit(3, 1, 3)
    with pytest.raises(ekpdim.FormatError):
        ekpdim.rep_check({"r": 3})
    with pytest.raises(ValueError):
        ekpdim.make_x_alpha(3, [0, 0, 0])
