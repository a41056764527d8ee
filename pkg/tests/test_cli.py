import json
import subprocess
import sys

import pytest

import pinned
from togglekit import verify
from togglekit.cli import run
from togglekit.jsonio import filling_to_json, labeling_to_json, polyomino_to_json
from togglekit.moon import MoonPolyomino


@pytest.fixture
def files(tmp_path):
    def write(name, obj):
        path = tmp_path / name
        path.write_text(json.dumps(obj))
        return str(path)

    return {
        "greene": write("greene.json", labeling_to_json(pinned.GREENE_INPUT)),
        "shift": write("shift.json", labeling_to_json(pinned.SHIFT_INPUT)),
        "seven": write("seven.json", filling_to_json(pinned.SEVEN_FILLING)),
        "straight": write("straight.json", polyomino_to_json(MoonPolyomino.partition([3, 2, 2]))),
        "bad": write("bad.json", {"cells": pinned.NOT_CONVEX}),
        "write": write,
    }


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_apply(capsys, files):
    code, out, _ = call(capsys, "apply", "--map", "rsk", "--in", files["greene"])
    assert code == 0
    assert json.loads(out)["values"] == [["0", "0", "3"], ["1", "1", "4"], ["3", "3", "5"]]
    code, out, _ = call(capsys, "apply", "--map", "rhoshift", "--in", files["shift"])
    assert json.loads(out)["values"][3] == ["1/20", "3/10", "0"]


def test_chains(capsys, files):
    code, out, _ = call(capsys, "chains", "--in", files["greene"], "--rect", "1,1,3,3", "--k", "2", "--oracle")
    res = json.loads(out)
    assert code == 0 and res["value"] == "6" and res["oracle"] == "6" and res["agree"]
    code, out, _ = call(capsys, "chains", "--in", files["shift"], "--rect", "2,1,4,3", "--k", "2")
    assert json.loads(out)["value"] == "23/20"


def test_moon_subcommands(capsys, files):
    code, out, _ = call(capsys, "moon", "validate", "--in", files["seven"])
    assert code == 0 and json.loads(out)["valid"]
    code, out, _ = call(capsys, "moon", "validate", "--in", files["bad"])
    assert code == 1 and not json.loads(out)["valid"]
    code, out, _ = call(capsys, "moon", "rects", "--in", files["seven"])
    assert len(json.loads(out)["rectangles"]) == 2
    code, out, _ = call(capsys, "moon", "straighten", "--in", files["seven"])
    assert json.loads(out)["partition"] == [3, 2, 2]
    code, out, _ = call(capsys, "moon", "stats", "--in", files["seven"])
    res = json.loads(out)
    assert res["ne_chain_max"] == "3" and res["se_chain_max"] == 1
    code, out, _ = call(capsys, "moon", "map", "--in", files["seven"], "--to", files["straight"])
    assert code == 0 and len(json.loads(out)["values"]) == 7
    code, out, _ = call(capsys, "moon", "map", "--in", files["seven"], "--step", "up:1,3,1,2", "--step", "up^-1:1,3,1,2")
    assert json.loads(out) == filling_to_json(pinned.SEVEN_FILLING)


def test_ehrhart(capsys, files):
    code, out, _ = call(capsys, "ehrhart", "--moon", files["seven"], "--max-k", "3", "--oracle")
    res = json.loads(out)
    assert code == 0 and res["counts"] == [1, 16, 110, 490] and res["oracle_agrees"]
    code, out, _ = call(capsys, "ehrhart", "--moon", files["seven"], "--max-k", "7", "--check-collapse", "--check-syt")
    res = json.loads(out)
    assert code == 0 and res["period_collapse"]["ok"] and res["syt_volume"]["tableaux"] == 21
    assert res["coefficients"][-1] == "1/240"


def test_verify_pass_and_listing(capsys):
    code, out, _ = call(capsys, "verify", "greene", "--shape", "3,3", "--trials", "50", "--seed", "7")
    res = json.loads(out)
    assert code == 0 and res["ok"] and res["runs"] == 100
    code, out, _ = call(capsys, "verify", "--list")
    names = json.loads(out)
    for name in ["chain-shifting", "greene", "rowmotion-period", "proid-rsk", "evac-rotation",
                 "swpro-conjugacy", "commutation", "maptheorem-a", "plactic"]:
        assert name in names


def test_verify_failure_prints_counterexample(capsys, monkeypatch):
    def broken(rng, realm, shape):
        x = verify.random_labeling(shape, realm, rng)
        verify.expect(shape.r * shape.s < 4, "too big", x)

    monkeypatch.setitem(verify.REGISTRY, "broken", verify.Property("broken", "always fails on big shapes", broken))
    code, out, _ = call(capsys, "verify", "broken", "--trials", "30", "--seed", "1")
    res = json.loads(out)
    assert code == 1 and not res["ok"]
    ce = res["counterexample"]
    assert ce["message"] == "too big"
    r, s = ce["witness"]["shape"]["r"], ce["witness"]["shape"]["s"]
    assert r * s == 4  # the smallest failing shape is reported
    assert ce["trial_seed"].startswith("1:broken:")


def test_usage_errors(capsys, files):
    assert call(capsys, "verify", "no-such-property")[0] == 2
    assert call(capsys, "chains", "--in", files["greene"], "--rect", "1,1", "--k", "1")[0] == 2
    assert call(capsys, "apply", "--map", "nonsense", "--in", files["greene"])[0] == 2
    assert call(capsys, "apply", "--map", "rsk", "--in", "/nonexistent.json")[0] == 2
    assert call(capsys, "frobnicate")[0] == 2
    assert call(capsys, "moon", "map", "--in", files["seven"], "--step", "sideways:1,3,1,2")[0] == 2
    assert call(capsys, "moon", "map", "--in", files["seven"], "--step", "down:2,2,1,3")[0] == 2


def test_render(capsys, files):
    code, out, _ = call(capsys, "render", "--in", files["greene"])
    assert code == 0 and "2 1 0" in out
    code, out, _ = call(capsys, "render", "--in", files["seven"], "--format", "tikz")
    assert out.count("rectangle") == 7
    code, out, _ = call(capsys, "render", "--in", files["straight"])
    assert out.count("#") == 7


def test_output_is_byte_identical_across_processes(files):
    argv = [sys.executable, "-m", "togglekit", "verify", "rsk-roundtrip", "--trials", "5", "--seed", "3"]
    a = subprocess.run(argv, capture_output=True, check=True).stdout
    b = subprocess.run(argv, capture_output=True, check=True).stdout
    assert a == b
    argv = [sys.executable, "-m", "togglekit", "--pretty", "apply", "--map", "evacP", "--in", files["greene"]]
    assert subprocess.run(argv, capture_output=True).stdout == subprocess.run(argv, capture_output=True).stdout
