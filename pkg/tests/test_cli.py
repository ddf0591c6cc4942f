"""CLI behavior: exit codes, output formats, determinism."""

from __future__ import annotations

import json

import jsonschema
import pytest

from mpst import corpus_path
from mpst.cli import main
from mpst.efsm import EFSM_JSON_SCHEMA

from helpers import NEGATIVE_DIR

BATTLESHIP = str(corpus_path("battleship.scr"))


def test_check_accepts_battleship(capsys):
    assert main(["check", BATTLESHIP]) == 0
    out = capsys.readouterr()
    assert out.out == ""


def test_check_rejects_wrong_sender_with_one_line(capsys):
    path = str(NEGATIVE_DIR / "choice_sender.scr")
    assert main(["check", path]) == 1
    err = capsys.readouterr().err
    lines = [l for l in err.splitlines() if l.startswith("error[")]
    assert len(lines) == 1
    assert lines[0].startswith(f"error[CHOICE_SENDER] {path}:")


def test_check_missing_file_exits_2():
    with pytest.raises(SystemExit) as exc_info:
        main(["check", "/definitely/not/here.scr"])
    assert exc_info.value.code == 2


def test_project_json_validates_against_schema(capsys):
    assert (
        main(["project", BATTLESHIP, "--protocol", "BattleShips", "--role", "P2"])
        == 0
    )
    doc = json.loads(capsys.readouterr().out)
    jsonschema.validate(doc, EFSM_JSON_SCHEMA)
    assert doc["role"] == "P2"


def test_project_dot_output(capsys):
    assert (
        main(
            [
                "project",
                BATTLESHIP,
                "--protocol",
                "BattleShips",
                "--role",
                "P2",
                "--format",
                "dot",
            ]
        )
        == 0
    )
    dot = capsys.readouterr().out
    for needle in ('"loser()"', '"miss()"', '"hit()"'):
        assert any(needle.split('"')[1].split("(")[0] in line for line in dot.splitlines())
    assert "connect GameServer" in dot
    assert "send GameServer: Init(Config)" in dot


def test_project_unknown_role_exits_1(capsys):
    assert (
        main(["project", BATTLESHIP, "--protocol", "BattleShips", "--role", "Zorp"])
        == 1
    )
    assert "not declared" in capsys.readouterr().err


def test_generate_writes_four_files_and_lists_them(tmp_path, capsys):
    code = main(
        [
            "generate",
            BATTLESHIP,
            "--protocol",
            "BattleShips",
            "-o",
            str(tmp_path),
        ]
    )
    assert code == 0
    listed = capsys.readouterr().out.splitlines()
    assert len(listed) == 5  # 3 role APIs + messages + __init__
    for line in listed:
        assert (tmp_path / line.split(str(tmp_path) + "/")[-1]).exists()


def test_generate_is_byte_identical_across_runs(tmp_path):
    out1, out2 = tmp_path / "a", tmp_path / "b"
    for out in (out1, out2):
        assert (
            main(
                ["generate", BATTLESHIP, "--protocol", "BattleShips", "-o", str(out)]
            )
            == 0
        )
    files1 = sorted(p.relative_to(out1) for p in out1.rglob("*.py"))
    files2 = sorted(p.relative_to(out2) for p in out2.rglob("*.py"))
    assert files1 == files2
    for rel in files1:
        assert (out1 / rel).read_bytes() == (out2 / rel).read_bytes()


def test_generate_missing_import_map_entry_exits_1(tmp_path, capsys):
    import_map = tmp_path / "map.json"
    import_map.write_text(
        json.dumps({"aliases": {"Config": "mpst.battleship.game.Config"}})
    )
    code = main(
        [
            "generate",
            BATTLESHIP,
            "--protocol",
            "BattleShips",
            "--import-map",
            str(import_map),
            "-o",
            str(tmp_path / "out"),
        ]
    )
    assert code == 1
    assert "Location" in capsys.readouterr().err


def test_compose_subcommand_reports_ok(capsys):
    assert main(["compose", BATTLESHIP, "--protocol", "BattleShips"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["result"] == "ok"
    assert doc["explored_states"] < 10**5


def test_stdout_is_machine_parseable(capsys, tmp_path):
    # Logs go to stderr; stdout carries only the artifact.
    assert (
        main(["project", BATTLESHIP, "--protocol", "Game", "--role", "Atk"]) == 0
    )
    out = capsys.readouterr().out
    json.loads(out)
