import json
import threading
import urllib.error
import urllib.request

import pytest

from genanim.cli import main
from genanim.server import make_server

from conftest import fixture_path


@pytest.fixture(scope="module")
def server():
    srv = make_server(port=0)
    thread = threading.Thread(target=srv.serve_forever, daemon=True)
    thread.start()
    yield f"http://127.0.0.1:{srv.server_address[1]}"
    srv.shutdown()


def _post(base, path, payload):
    req = urllib.request.Request(
        base + path, data=json.dumps(payload).encode(), method="POST",
        headers={"Content-Type": "application/json"})
    with urllib.request.urlopen(req) as resp:
        return resp.status, resp.read()


def _get(base, path):
    with urllib.request.urlopen(base + path) as resp:
        return resp.status, resp.read()


def _new_session(base, scene_name):
    status, body = _post(base, "/session", {"scene_path": fixture_path(scene_name)})
    assert status == 201
    return json.loads(body)["id"]


def test_create_session(server):
    sid = _new_session(server, "mario_hills.scene.json")
    status, body = _get(server, f"/session/{sid}")
    assert status == 200
    state = json.loads(body)
    assert state["state"] == "created"
    assert state["canvas"] == {"width": 1024, "height": 768}


def test_unknown_session_404(server):
    with pytest.raises(urllib.error.HTTPError) as err:
        _get(server, "/session/deadbeef0000")
    assert err.value.code == 404


def test_prompt_auto_resolves_unique_entity(server):
    sid = _new_session(server, "mario_hills.scene.json")
    status, body = _post(server, f"/session/{sid}/prompt",
                         {"text": "Move Mario along the hilly path"})
    assert status == 200
    reply = json.loads(body)
    assert reply["state"] == "prompted"
    assert reply["resolved"] == 0
    assert reply["intent"]["preset"] == "gallop"
    assert len(reply["candidates"]) == 1
    assert reply["candidates"][0]["mask_png_b64"]


def test_synthesize_matches_cli_bytes(server, tmp_path):
    sid = _new_session(server, "mario_hills.scene.json")
    _post(server, f"/session/{sid}/prompt", {"text": "Move Mario along the hilly path"})
    status, body = _post(server, f"/session/{sid}/synthesize", {})
    assert status == 200
    out = tmp_path / "cli.json"
    svg = tmp_path / "cli.svg"
    assert main(["run", fixture_path("mario_hills.scene.json"),
                 "Move Mario along the hilly path", "-o", str(out), "--svg", str(svg)]) == 0
    assert body == out.read_bytes()
    status, preview = _get(server, f"/session/{sid}/preview.svg")
    assert preview == svg.read_bytes()


def test_click_round_trip_matches_cli(server, tmp_path):
    sid = _new_session(server, "two_paths.scene.json")
    status, body = _post(server, f"/session/{sid}/prompt",
                         {"text": "Move the ball along the path"})
    reply = json.loads(body)
    assert reply["state"] == "awaiting_click"
    assert reply["resolved"] is None
    assert len(reply["candidates"]) == 2

    status, body = _post(server, f"/session/{sid}/click", {"x": 200, "y": 90})
    assert status == 200
    click_reply = json.loads(body)
    assert click_reply["state"] == "prompted"
    assert click_reply["mask_png_b64"]

    status, body = _post(server, f"/session/{sid}/synthesize", {})
    assert status == 200

    out = tmp_path / "cli.json"
    assert main(["run", fixture_path("two_paths.scene.json"),
                 "Move the ball along the path", "--click", "200,90", "-o", str(out)]) == 0
    assert body == out.read_bytes()


def test_click_in_wrong_state_409(server):
    sid = _new_session(server, "mario_hills.scene.json")
    with pytest.raises(urllib.error.HTTPError) as err:
        _post(server, f"/session/{sid}/click", {"x": 1, "y": 1})
    assert err.value.code == 409


def test_synthesize_before_prompt_409(server):
    sid = _new_session(server, "mario_hills.scene.json")
    with pytest.raises(urllib.error.HTTPError) as err:
        _post(server, f"/session/{sid}/synthesize", {})
    assert err.value.code == 409


def test_preview_before_synthesize_409(server):
    sid = _new_session(server, "mario_hills.scene.json")
    with pytest.raises(urllib.error.HTTPError) as err:
        _get(server, f"/session/{sid}/preview.svg")
    assert err.value.code == 409


def test_artwork_endpoint(server):
    sid = _new_session(server, "earth_moon.scene.json")
    status, body = _get(server, f"/session/{sid}/artwork.png")
    assert status == 200
    assert body[:8] == b"\x89PNG\r\n\x1a\n"


def test_sessions_are_isolated(server):
    a = _new_session(server, "mario_hills.scene.json")
    b = _new_session(server, "earth_moon.scene.json")
    _post(server, f"/session/{a}/prompt", {"text": "Move Mario along the hilly path"})
    status, body = _get(server, f"/session/{b}")
    assert json.loads(body)["state"] == "created"


def test_bad_scene_payload_400(server):
    with pytest.raises(urllib.error.HTTPError) as err:
        _post(server, "/session", {"scene_path": "/nope.json"})
    assert err.value.code == 400


def test_sessions_expire_after_idle_ttl():
    import time as _time

    from genanim.server import SESSION_TTL_SECONDS, SessionStore
    from genanim import load_scene

    store = SessionStore()
    session = store.create(load_scene(fixture_path("mario_hills.scene.json")))
    assert store.get(session.id) is not None
    session.last_access = _time.monotonic() - SESSION_TTL_SECONDS - 1
    assert store.get(session.id) is None
