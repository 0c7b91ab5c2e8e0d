import json

import pytest

from conftest import arenas
from splitgames.cli import main
from splitgames.errors import ArenaFormatError, ProbabilityMass
from splitgames.gallery import GALLERY, OMEGA
from splitgames.io import arena_to_doc, dumps_arena, loads_arena
from splitgames.split import split


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def write(tmp_path, name, doc):
    p = tmp_path / name
    p.write_text(json.dumps(doc), encoding="utf-8")
    return str(p)


LOOP = {"states": [{"name": "x", "owner": "max"}], "actions": ["l"],
        "transitions": [{"from": "x", "action": "l", "to": "x", "prob": "1", "reward": "1/3"}]}


def test_horn_recursive_reports_no_uniform_optimum(capsys):
    code, out, _ = run(capsys, "solve", "gallery:horn", "--payoff", "simple-parity")
    assert code == 3 and "NoUniformOptimum" in out and "1/2" in out


def test_overtaking_oracle_reports_no_saddle(capsys):
    code, out, _ = run(capsys, "solve", "gallery:overtaking", "--payoff", "overtaking",
                       "--mode", "oracle")
    assert code == 3 and "NoSaddle" in out
    code, _, err = run(capsys, "oracle", "gallery:overtaking", "--payoff", "overtaking")
    assert code == 3


def test_split_demo_both_modes_agree(capsys):
    code, out, _ = run(capsys, "solve", "gallery:split-demo", "--payoff", "mean", "--mode", "both")
    assert code == 0 and "agree" in out
    code, out, _ = run(capsys, "solve", "gallery:split-demo", "--payoff", "mean", "--mode",
                       "both", "--json")
    doc = json.loads(out)
    assert doc["agree"] is True and doc["oracle"]["values"]["s"] == "1/1"


def test_split_command_reproduces_figure(capsys, tmp_path):
    code, out, _ = run(capsys, "split", "gallery:split-demo", OMEGA)
    assert code == 0
    hat = loads_arena(out)
    assert set(hat.states) == {OMEGA, "s_a", "s_b"} and len(hat.transitions) == 7
    base = tmp_path / "fig2-split"
    code, _, _ = run(capsys, "split", "gallery:split-demo", OMEGA, "--out", str(base))
    assert code == 0
    assert loads_arena((tmp_path / "fig2-split.json").read_text()) == hat
    assert (tmp_path / "fig2-split.dot").read_text().startswith("digraph")


def test_split_round_trip_on_single_action_state(capsys, tmp_path):
    path = write(tmp_path, "loop.json", LOOP)
    code, out, _ = run(capsys, "split", path, "x")
    assert code == 0
    again = loads_arena(out)
    assert split(again, "x").arena.transitions == loads_arena(json.dumps(LOOP)).transitions


def test_split_unknown_state(capsys):
    code, _, err = run(capsys, "split", "gallery:split-demo", "nowhere")
    assert code == 2 and "unknown state" in err


def test_missing_file_and_bad_payload(capsys, tmp_path):
    assert run(capsys, "solve", str(tmp_path / "none.json"), "--payoff", "mean")[0] == 2
    path = write(tmp_path, "loop.json", LOOP)
    assert run(capsys, "solve", path, "--payoff", "median")[0] == 2
    bad = dict(LOOP, transitions=[dict(LOOP["transitions"][0], prob=0.5)])
    assert run(capsys, "solve", write(tmp_path, "bad.json", bad), "--payoff", "mean")[0] == 2


def test_verify(capsys, tmp_path):
    code, out, _ = run(capsys, "verify", "gallery:split-demo", "--payoff", "mean")
    assert code == 0 and "verified" in out
    strat = write(tmp_path, "s.json", {"max": {"s": "b"}, "min": {OMEGA: "a"}})
    code, out, _ = run(capsys, "verify", "gallery:split-demo", "--payoff", "mean",
                       "--strategies", strat)
    assert code == 3 and "not a saddle" in out


@pytest.mark.parametrize("payoff", ["parity", "mean"])
def test_props_positive(capsys, payoff):
    code, out, _ = run(capsys, "props", "--payoff", payoff, "--samples", "300", "--seed", "1")
    assert code == 0
    assert "prefix independence: pass" in out and "sub-mixing: pass" in out


def test_props_negative_control(capsys):
    code, out, _ = run(capsys, "props", "--payoff", "liminf-mean", "--samples", "300", "--seed", "1")
    assert code == 0 and "sub-mixing: witness" in out and "violated" in out


def test_props_is_reproducible(capsys):
    first = run(capsys, "props", "--payoff", "liminf-mean", "--samples", "100", "--seed", "5")
    second = run(capsys, "props", "--payoff", "liminf-mean", "--samples", "100", "--seed", "5")
    assert first == second


def test_gallery_commands(capsys):
    code, out, _ = run(capsys, "gallery", "list")
    assert code == 0 and all(name in out for name in GALLERY)
    for name in GALLERY:
        code, out, _ = run(capsys, "gallery", "run", name)
        assert code == 0 and "FAIL" not in out
    code, out, _ = run(capsys, "gallery", "export", "horn")
    assert loads_arena(out) == GALLERY["horn"].arena
    assert run(capsys, "gallery", "run", "nothing")[0] == 2


def test_parser_rejects_floats_and_bad_rationals():
    doc = json.loads(json.dumps(LOOP))
    doc["transitions"][0]["prob"] = 1.0
    with pytest.raises(ArenaFormatError):
        loads_arena(json.dumps(doc))
    doc["transitions"][0]["prob"] = "0.5"
    with pytest.raises(ArenaFormatError):
        loads_arena(json.dumps(doc))
    doc["transitions"][0]["prob"] = "1/2"
    with pytest.raises(ProbabilityMass):
        loads_arena(json.dumps(doc))
    doc["transitions"][0]["prob"] = "1"
    doc["states"][0]["owner"] = "both"
    with pytest.raises(ArenaFormatError):
        loads_arena(json.dumps(doc))


def test_json_round_trip():
    for a in arenas(50, seed=40):
        back = loads_arena(dumps_arena(a))
        assert back == a and back.name == a.name
        assert arena_to_doc(back) == arena_to_doc(a)
