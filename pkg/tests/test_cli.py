from __future__ import annotations

import io
import json
import subprocess
import sys
from importlib import resources

import pytest

from choicecensus import cli
from choicecensus.core import serialize_choice
from choicecensus.fixtures import load_fixture


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_census_table(capsys):
    code, out, _ = run(capsys, "census", "--n", "4", "--models", "all", "--format", "table")
    assert code == 0
    lines = out.splitlines()
    header, values = lines[1].split(), lines[2].split()
    row = dict(zip(header, values))
    expected = {"SQB": "6", "LR": "10", "RGT": "11", "RSM": "11",
                "SR": "15", "CLS": "15", "WWARP": "304", "CLA": "324"}
    assert {k: row[k] for k in expected} == expected


def test_census_check_passes(capsys):
    code, _, err = run(capsys, "census", "--n", "4", "--check")
    assert code == 0
    assert "check passed" in err


def test_census_check_fails_on_inconsistency(capsys, monkeypatch):
    monkeypatch.setattr(cli, "audit_witnesses", lambda records: [(0, "sr")])
    code, _, err = run(capsys, "census", "--n", "3", "--check")
    assert code == 2 and "sr witness does not replay at #0" in err


def test_census_csv_matches_golden(capsys):
    code, out, _ = run(capsys, "census", "--n", "3", "--format", "csv")
    expected = resources.files("choicecensus").joinpath("data/golden/census_n3.csv").read_text()
    assert code == 0 and out == expected


def test_census_json_and_output_file(tmp_path, capsys):
    target = tmp_path / "table.json"
    code, out, _ = run(capsys, "census", "--models", "sqb,lr", "--format", "json",
                       "--output", str(target))
    assert code == 0 and out == ""
    data = json.loads(target.read_text())
    assert data["counts"] == {"lr": 10, "sqb": 6}
    assert data["by_class"]["sqb"] == [3, 1, 1, 1]


def test_census_headline_model_set(capsys):
    code, out, _ = run(capsys, "census", "--models", "headline", "--format", "json")
    assert code == 0
    assert json.loads(out)["counts"] == {
        "rsm": 11, "sr": 15, "cls": 15, "lr": 10, "rgt": 11, "sqb": 6, "wwarp": 304, "cla": 324,
    }


@pytest.mark.parametrize("mode", ["rsm=axiom", "ec", "direct", "per_menu", "all"])
def test_census_modes(capsys, mode):
    code, out, _ = run(capsys, "census", "--models", "rsm,cla", "--format", "json", "--mode", mode)
    assert code == 0
    assert json.loads(out)["counts"] == {"rsm": 11, "cla": 324}


def test_classify_c6(capsys):
    code, out, _ = run(capsys, "classify", "fixture:c6", "--format", "json", "--witness")
    assert code == 0
    verdicts = json.loads(out)["verdicts"]
    assert verdicts["sqb"]["holds"] and verdicts["sqb"]["witness"]["tag"] == "both"
    assert verdicts["rsm"]["holds"] and verdicts["lr"]["holds"]


def test_classify_c1e_and_c1f(capsys):
    _, out, _ = run(capsys, "classify", "fixture:c1E", "--format", "json")
    v = json.loads(out)["verdicts"]
    assert v["rgt"] is True and v["lr"] is False
    _, out, _ = run(capsys, "classify", "fixture:c1F", "--format", "json")
    v = json.loads(out)["verdicts"]
    assert (v["ws"], v["dc"], v["rgt"]) == (True, False, False)


def test_classify_table_output(capsys):
    code, out, _ = run(capsys, "classify", "compact:a.a.e.b.b.d.a.b.d.b.b", "--models", "sr,ac",
                       "--witness")
    assert code == 0
    assert out.splitlines()[0] == "choice a.a.e.b.b.d.a.b.d.b.b"
    assert "blocks" in out


def test_classify_from_file_and_stdin(tmp_path, capsys, monkeypatch):
    path = tmp_path / "c.json"
    path.write_text(serialize_choice(load_fixture("c2rat")))
    code, out, _ = run(capsys, "classify", str(path), "--models", "rationalizable",
                       "--format", "json")
    assert code == 0 and json.loads(out)["verdicts"] == {"rationalizable": True}
    monkeypatch.setattr(sys, "stdin", io.StringIO(path.read_text()))
    code, out, _ = run(capsys, "classify", "-", "--models", "ac", "--format", "json")
    assert code == 0 and json.loads(out)["verdicts"] == {"ac": True}


def test_witness_command(capsys):
    code, out, _ = run(capsys, "witness", "fixture:cSR2", "--models", "sr,rsm,wwarp")
    assert code == 0
    v = json.loads(out)["verdicts"]
    assert len(v["sr"]["witness"]["blocks"]) == 3
    assert v["rsm"]["holds"] is False
    assert v["wwarp"]["counterexample"] == {"x": "a", "y": "d", "A": "ade", "B": "abde"}


def test_switches(capsys):
    code, out, _ = run(capsys, "switches", "fixture:c2rat", "--format", "json")
    assert code == 0 and json.loads(out) == []
    _, out, _ = run(capsys, "switches", "fixture:c6", "--format", "json")
    assert {"base_menu": "abe", "removed": "e", "before": "a", "after": "b"} in json.loads(out)
    _, out, _ = run(capsys, "switches", "fixture:c6")
    assert "(a, b, e)  base menu abe" in out


@pytest.mark.parametrize("method", ["greedy", "min"])
def test_canon(capsys, method):
    code, out, _ = run(capsys, "canon", "fixture:c12", "--method", method, "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["method"] == method and len(data["canonical"].split(".")) == 11


def test_canon_greedy_normalizes(capsys):
    _, out, _ = run(capsys, "canon", "fixture:c6", "--format", "json")
    picks = json.loads(out)["canonical"].split(".")
    assert (picks[-1], picks[-2], picks[5]) == ("a", "b", "d")


def test_iso_positive_with_three_cycle(capsys):
    code, out, _ = run(capsys, "iso", "fixture:c14", "compact:a.a.a.b.e.d.a.a.a.d.a",
                       "--format", "json")
    assert code == 0
    assert json.loads(out) == {
        "isomorphic": True, "relabeling": {"a": "a", "b": "d", "d": "e", "e": "b"},
    }


def test_iso_negative(capsys):
    code, out, _ = run(capsys, "iso", "fixture:c6", "fixture:c12")
    assert code == 3 and out.strip() == "not isomorphic"


def test_export_dot(capsys):
    code, out, _ = run(capsys, "export-dot", "fixture:c6")
    assert code == 0
    assert "// class: FourCycle" in out
    edges = [line.strip().rstrip(";") for line in out.splitlines() if "->" in line]
    assert sorted(edges) == ["a -> b", "a -> d", "b -> d", "b -> e", "d -> e", "e -> a"]
    wins = {x: sum(e.startswith(x) for e in edges) for x in "abde"}
    assert 3 not in wins.values() and 0 not in wins.values()


@pytest.mark.parametrize(
    "argv",
    [
        ["census", "--n", "5"],
        ["census", "--models", "nope"],
        ["census", "--jobs", "0"],
        ["census", "--mode", "bogus"],
        ["census", "--mode", "sr=fast"],
        ["census", "--format", "dot"],
        ["classify", "fixture:missing"],
        ["classify", "compact:a.b"],
        ["classify", "/no/such/file.json"],
        ["switches", "fixture:c6", "--format", "csv"],
    ],
)
def test_input_errors_exit_1(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 1 and "error" in err


def test_argparse_errors_exit_1(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["bogus"])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        cli.main(["census", "--n", "four"])
    assert exc.value.code == 1


def test_malformed_json_exit_1(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text('{"n": 3, "items": ["a", "b", "d"], "c": {"ab": "d"}}')
    code, _, err = run(capsys, "classify", str(path))
    assert code == 1 and "not a member" in err


def test_seedless_env_is_ignored(capsys, monkeypatch):
    _, plain, _ = run(capsys, "census", "--n", "3", "--format", "csv")
    monkeypatch.setenv(cli.SEEDLESS_ENV, "1")
    _, seeded, _ = run(capsys, "census", "--n", "3", "--format", "csv")
    assert plain == seeded


def test_console_entry_is_byte_deterministic_across_jobs():
    def invoke(*extra):
        return subprocess.run(
            [sys.executable, "-m", "choicecensus.cli", "census", "--format", "csv", *extra],
            capture_output=True, check=True,
        ).stdout

    single = invoke()
    assert single == invoke() == invoke("--jobs", "2")
    assert len(single.splitlines()) == 865
