import json

import pytest

from genanim.cli import main

from conftest import fixture_path


def test_run_mario_writes_output(tmp_path, capsys):
    out = tmp_path / "mario.json"
    svg = tmp_path / "mario.svg"
    code = main(["run", fixture_path("mario_hills.scene.json"),
                 "Move Mario along the hilly path", "-o", str(out), "--svg", str(svg)])
    assert code == 0
    payload = json.loads(out.read_text())
    assert payload["tracks"][0]["easing"] == "gallop"
    assert svg.read_text().startswith("<?xml")


def test_run_to_stdout(capsys):
    code = main(["run", fixture_path("earth_moon.scene.json"),
                 "Make the Moon orbit around Earth"])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["loop"] is True


def test_ambiguous_entity_exits_2_with_bounds(capsys):
    code = main(["run", fixture_path("two_paths.scene.json"),
                 "Move the ball along the path"])
    assert code == 2
    err = capsys.readouterr().err
    assert "candidate 0" in err and "candidate 1" in err
    assert "--click" in err


def test_click_resolves_ambiguity(tmp_path, capsys):
    out = tmp_path / "ball.json"
    code = main(["run", fixture_path("two_paths.scene.json"),
                 "Move the ball along the path", "--click", "200,90", "-o", str(out)])
    assert code == 0
    assert json.loads(out.read_text())["tracks"]


def test_missing_scene_exits_1(capsys):
    code = main(["run", "/nonexistent/scene.json", "Move Mario along the path"])
    assert code == 1
    assert "[scene]" in capsys.readouterr().err


def test_bad_prompt_exits_1_with_stage_prefix(capsys):
    code = main(["run", fixture_path("mario_hills.scene.json"), "hello there"])
    assert code == 1
    assert "[intent]" in capsys.readouterr().err


def test_duration_flag_overrides(tmp_path):
    out = tmp_path / "mario.json"
    code = main(["run", fixture_path("mario_hills.scene.json"),
                 "Move Mario along the hilly path", "--duration", "3000", "-o", str(out)])
    assert code == 0
    assert json.loads(out.read_text())["duration_ms"] == 3000


def test_runs_are_byte_identical(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for target in (a, b):
        assert main(["run", fixture_path("mario_hills.scene.json"),
                     "Move Mario along the hilly path", "-o", str(target)]) == 0
    assert a.read_bytes() == b.read_bytes()
