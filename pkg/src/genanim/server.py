"""Session-based HTTP protocol for the preview UI.

JSON over HTTP, one state machine per session:
created -> prompted -> (awaiting_click)? -> synthesized. Sessions expire
after 30 minutes idle; each session handles one request at a time.
"""

from __future__ import annotations

import base64
import json
import os
import re
import threading
import time
import uuid
from dataclasses import dataclass, field
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

from .assembly import Geometry
from .errors import AmbiguousEntityError, GenAnimError
from .grounding import CandidateSet, disambiguate
from .intent import AnimationIntent, IntentParseTrace, RemoteBackendConfig, parse_prompt
from .pipeline import PipelineOptions, build_geometry, ground_entity, needs_grounding
from .pngio import encode_png
from .scene import SceneDocument, load_scene, scene_from_payload
from .svg_export import export_svg

SESSION_TTL_SECONDS = 30 * 60

_STATIC_TYPES = {
    ".html": "text/html; charset=utf-8",
    ".js": "text/javascript; charset=utf-8",
    ".css": "text/css; charset=utf-8",
    ".svg": "image/svg+xml",
    ".png": "image/png",
    ".map": "application/json",
}


@dataclass
class Session:
    id: str
    scene: SceneDocument
    state: str = "created"
    intent: AnimationIntent | None = None
    trace: IntentParseTrace | None = None
    pending: CandidateSet | None = None
    geometry: Geometry | None = None
    json_text: str | None = None
    svg_text: str | None = None
    last_access: float = field(default_factory=time.monotonic)
    lock: threading.Lock = field(default_factory=threading.Lock)


class SessionStore:
    def __init__(self, options: PipelineOptions | None = None):
        self.options = options or PipelineOptions()
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()

    def _sweep(self):
        now = time.monotonic()
        dead = [sid for sid, s in self._sessions.items()
                if now - s.last_access > SESSION_TTL_SECONDS]
        for sid in dead:
            del self._sessions[sid]

    def create(self, scene: SceneDocument) -> Session:
        session = Session(id=uuid.uuid4().hex[:12], scene=scene)
        with self._lock:
            self._sweep()
            self._sessions[session.id] = session
        return session

    def get(self, session_id: str) -> Session | None:
        with self._lock:
            self._sweep()
            session = self._sessions.get(session_id)
            if session is not None:
                session.last_access = time.monotonic()
            return session


class ApiError(Exception):
    def __init__(self, status: int, message: str):
        super().__init__(message)
        self.status = status


def _candidate_payload(cset: CandidateSet) -> list[dict]:
    out = []
    for cand in cset.candidates:
        out.append({
            "bounds": list(cand.bounds),
            "mask_png_b64": base64.b64encode(encode_png(cand.mask.data)).decode("ascii"),
            "object_id": cand.object_id,
            "score": cand.score,
        })
    return out


def _intent_payload(intent: AnimationIntent) -> dict:
    return json.loads(intent.to_json())


class Api:
    """Protocol logic, independent of the HTTP plumbing (tests drive it
    directly; the handler below adapts it)."""

    def __init__(self, store: SessionStore):
        self.store = store

    def _session(self, session_id: str) -> Session:
        session = self.store.get(session_id)
        if session is None:
            raise ApiError(404, f"unknown session {session_id!r}")
        return session

    def create_session(self, payload: dict) -> tuple[int, dict]:
        try:
            if "scene_path" in payload:
                scene = load_scene(payload["scene_path"])
            else:
                scene = scene_from_payload(payload, base_dir=os.getcwd())
        except GenAnimError as exc:
            raise ApiError(400, f"[{exc.stage}] {exc}")
        session = self.store.create(scene)
        return 201, {"id": session.id}

    def session_state(self, session_id: str) -> tuple[int, dict]:
        session = self._session(session_id)
        with session.lock:
            payload = {
                "id": session.id,
                "state": session.state,
                "canvas": {"width": session.scene.canvas_width,
                           "height": session.scene.canvas_height},
                "objects": [
                    {"id": o.id, "name": o.name, "bounds": list(o.bounds),
                     "anchor": list(o.anchor), "z_order": o.z_order}
                    for o in session.scene.objects
                ],
            }
            if session.intent is not None:
                payload["intent"] = _intent_payload(session.intent)
            return 200, payload

    def prompt(self, session_id: str, payload: dict) -> tuple[int, dict]:
        session = self._session(session_id)
        text = payload.get("text", "")
        options = self.store.options
        with session.lock:
            try:
                remote = RemoteBackendConfig.from_env(options.environ)
                intent, trace = parse_prompt(text, session.scene, remote=remote)
                if options.duration_ms is not None:
                    from dataclasses import replace

                    intent = replace(intent, duration_ms=options.duration_ms)
                session.intent, session.trace = intent, trace
                session.pending = None
                session.geometry = None
                session.json_text = None
                session.svg_text = None
                reply = {"intent": _intent_payload(intent), "warnings": trace.warnings,
                         "backend": trace.backend, "candidates": [], "resolved": None}
                if needs_grounding(intent):
                    cset = ground_entity(session.scene, intent, options, trace.warnings)
                    session.pending = cset
                    reply["candidates"] = _candidate_payload(cset)
                    reply["resolved"] = cset.resolved
                    session.state = "prompted" if cset.resolved is not None else "awaiting_click"
                else:
                    session.state = "prompted"
                reply["state"] = session.state
                return 200, reply
            except AmbiguousEntityError as exc:
                session.state = "created"
                raise ApiError(422, f"[grounding] {exc}")
            except GenAnimError as exc:
                session.state = "created"
                raise ApiError(422, f"[{exc.stage}] {exc}")

    def click(self, session_id: str, payload: dict) -> tuple[int, dict]:
        session = self._session(session_id)
        with session.lock:
            if session.state != "awaiting_click" or session.pending is None:
                raise ApiError(409, f"session is {session.state!r}, not awaiting a click")
            try:
                x, y = float(payload["x"]), float(payload["y"])
            except (KeyError, TypeError, ValueError):
                raise ApiError(400, "click payload needs numeric x and y")
            try:
                resolved = disambiguate(session.pending, (x, y), session.scene.artwork,
                                        self.store.options.tolerance)
            except GenAnimError as exc:
                raise ApiError(422, f"[{exc.stage}] {exc}")
            session.pending = resolved
            session.state = "prompted"
            mask = resolved.resolved_mask
            return 200, {
                "resolved": resolved.resolved,
                "mask_png_b64": base64.b64encode(encode_png(mask.data)).decode("ascii"),
                "state": session.state,
            }

    def synthesize(self, session_id: str) -> tuple[int, str]:
        session = self._session(session_id)
        options = self.store.options
        with session.lock:
            if session.intent is None:
                raise ApiError(409, "no prompt parsed yet")
            if session.state == "awaiting_click":
                raise ApiError(409, "awaiting disambiguation click")
            try:
                from .assembly import assemble, export_animation_json

                geometry = build_geometry(session.scene, session.intent,
                                          session.pending, options)
                document = assemble(session.intent, session.scene, geometry)
                session.geometry = geometry
                session.json_text = export_animation_json(document)
                session.svg_text = export_svg(document, session.scene)
                session.state = "synthesized"
            except GenAnimError as exc:
                raise ApiError(422, f"[{exc.stage}] {exc}")
            return 200, session.json_text

    def preview_svg(self, session_id: str) -> tuple[int, str]:
        session = self._session(session_id)
        with session.lock:
            if session.state != "synthesized" or session.svg_text is None:
                raise ApiError(409, "nothing synthesized yet")
            return 200, session.svg_text

    def artwork_png(self, session_id: str) -> bytes:
        session = self._session(session_id)
        with session.lock:
            return encode_png(session.scene.artwork.data)


def make_handler(api: Api, ui_dir: str | None):
    routes = [
        ("POST", re.compile(r"^/session$"), "create"),
        ("GET", re.compile(r"^/session/([0-9a-f]+)$"), "state"),
        ("POST", re.compile(r"^/session/([0-9a-f]+)/prompt$"), "prompt"),
        ("POST", re.compile(r"^/session/([0-9a-f]+)/click$"), "click"),
        ("POST", re.compile(r"^/session/([0-9a-f]+)/synthesize$"), "synthesize"),
        ("GET", re.compile(r"^/session/([0-9a-f]+)/preview\.svg$"), "preview"),
        ("GET", re.compile(r"^/session/([0-9a-f]+)/artwork\.png$"), "artwork"),
    ]

    class Handler(BaseHTTPRequestHandler):
        def log_message(self, fmt, *args):  # quiet by default
            pass

        def _send(self, status: int, body: bytes, content_type: str):
            self.send_response(status)
            self.send_header("Content-Type", content_type)
            self.send_header("Content-Length", str(len(body)))
            self.end_headers()
            self.wfile.write(body)

        def _send_json(self, status: int, payload: dict):
            body = json.dumps(payload, sort_keys=True).encode("utf-8")
            self._send(status, body, "application/json")

        def _read_json(self) -> dict:
            length = int(self.headers.get("Content-Length") or 0)
            raw = self.rfile.read(length) if length else b"{}"
            try:
                payload = json.loads(raw.decode("utf-8") or "{}")
            except json.JSONDecodeError:
                raise ApiError(400, "request body is not valid JSON")
            if not isinstance(payload, dict):
                raise ApiError(400, "request body must be a JSON object")
            return payload

        def _static(self, path: str):
            if ui_dir is None:
                raise ApiError(404, "no UI assets configured")
            rel = path.lstrip("/") or "index.html"
            full = os.path.realpath(os.path.join(ui_dir, rel))
            if not full.startswith(os.path.realpath(ui_dir)) or not os.path.isfile(full):
                raise ApiError(404, f"no asset {rel!r}")
            ctype = _STATIC_TYPES.get(os.path.splitext(full)[1], "application/octet-stream")
            with open(full, "rb") as fh:
                self._send(200, fh.read(), ctype)

        def _dispatch(self, method: str):
            path = self.path.split("?", 1)[0]
            try:
                for verb, pattern, name in routes:
                    match = pattern.match(path)
                    if verb != method or not match:
                        continue
                    if name == "create":
                        status, payload = api.create_session(self._read_json())
                        return self._send_json(status, payload)
                    sid = match.group(1)
                    if name == "state":
                        status, payload = api.session_state(sid)
                        return self._send_json(status, payload)
                    if name == "prompt":
                        status, payload = api.prompt(sid, self._read_json())
                        return self._send_json(status, payload)
                    if name == "click":
                        status, payload = api.click(sid, self._read_json())
                        return self._send_json(status, payload)
                    if name == "synthesize":
                        status, text = api.synthesize(sid)
                        return self._send(status, text.encode("utf-8"), "application/json")
                    if name == "preview":
                        status, text = api.preview_svg(sid)
                        return self._send(status, text.encode("utf-8"), "image/svg+xml")
                    if name == "artwork":
                        return self._send(200, api.artwork_png(sid), "image/png")
                if method == "GET":
                    return self._static(path)
                raise ApiError(404, f"no route {method} {path}")
            except ApiError as exc:
                self._send_json(exc.status, {"error": str(exc)})

        def do_GET(self):
            self._dispatch("GET")

        def do_POST(self):
            self._dispatch("POST")

    return Handler


def make_server(host: str = "127.0.0.1", port: int = 7340,
                ui_dir: str | None = None,
                options: PipelineOptions | None = None) -> ThreadingHTTPServer:
    api = Api(SessionStore(options))
    return ThreadingHTTPServer((host, port), make_handler(api, ui_dir))


def serve(host: str = "127.0.0.1", port: int = 7340, ui_dir: str | None = None) -> int:
    if ui_dir is None:
        default = os.path.join(os.getcwd(), "frontend", "dist")
        ui_dir = default if os.path.isdir(default) else None
    try:
        server = make_server(host, port, ui_dir)
    except OSError as exc:
        print(f"[serve] cannot bind {host}:{port}: {exc}")
        return 1
    print(f"genanim serve listening on http://{host}:{port}/"
          + (f" (ui: {ui_dir})" if ui_dir else ""))
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
    return 0
