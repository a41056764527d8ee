import pytest

import pinned
from togglekit.jsonio import (
    dumps,
    filling_from_json,
    filling_to_json,
    labeling_from_json,
    labeling_to_json,
    polyomino_from_json,
    polyomino_to_json,
    rect_from_json,
    rect_to_json,
)
from togglekit.moon import Filling, MaxRect, MoonError
from togglekit.realm import BIRATIONAL
from togglekit.render import ascii_labeling, render, tikz_labeling


def test_labeling_round_trip():
    x = pinned.SHIFT_INPUT
    obj = labeling_to_json(x)
    assert obj["values"][0] == ["1/20", "1/10", "2/5"]
    assert labeling_from_json(obj) == x


def test_labeling_defaults_to_pl_and_rejects_junk():
    x = labeling_from_json({"shape": {"r": 1, "s": 2}, "values": [["1", "-1/2"]]})
    assert x.realm.name == "PL"
    with pytest.raises(ValueError):
        labeling_from_json({"values": [[1]]})
    with pytest.raises(ValueError):
        labeling_from_json({"shape": {"r": 1, "s": 1}, "realm": "Birational", "values": [["0"]]})


def test_polyomino_and_filling_round_trip():
    M = pinned.SEVEN
    assert polyomino_from_json(polyomino_to_json(M)) == M
    x = pinned.SEVEN_FILLING
    obj = filling_to_json(x)
    assert obj["values"]["1,1"] == "2"
    assert filling_from_json(obj) == x
    b = Filling(M, {c: "1/3" for c in M.cells}, BIRATIONAL)
    assert filling_from_json(filling_to_json(b)) == b
    with pytest.raises(MoonError):
        polyomino_from_json({"cells": pinned.NOT_NESTED})
    with pytest.raises(ValueError):
        filling_from_json({"cells": [[1, 1]], "values": {"x": "1"}})


def test_rect_round_trip():
    R = MaxRect(1, 3, 2, 4)
    assert rect_from_json(rect_to_json(R)) == R
    assert rect_from_json("1,3,2,4") == R


def test_dumps_is_canonical():
    assert dumps({"b": 1, "a": [1, 2]}) == '{"a": [1, 2], "b": 1}'
    assert "\n" in dumps({"a": 1}, pretty=True)


def test_ascii_rendering():
    text = ascii_labeling(pinned.GREENE_INPUT)
    lines = text.splitlines()
    assert lines[0].startswith("  3 |") and lines[0].endswith("1 0 1")
    assert lines[2].endswith("2 1 0")
    moon = render(pinned.SEVEN).splitlines()
    assert moon[0].endswith("# # .")
    filled = render(pinned.SEVEN_FILLING).splitlines()
    assert filled[2].endswith("2 0 .")


def test_tikz_rendering():
    text = tikz_labeling(pinned.SHIFT_INPUT)
    assert text.startswith("\\begin{tikzpicture}[rotate=45]")
    assert text.count("rectangle") == 12
    assert "\\frac{1}{20}" in text
    assert render(pinned.SEVEN, "tikz").count("rectangle") == 7
    with pytest.raises(ValueError):
        render(pinned.SEVEN, "svg")
    with pytest.raises(TypeError):
        render(42)
