"""Tiny JSON-over-HTTP client used by the remote intent and segmenter
backends. Failures raise; callers own the fallback behavior."""

from __future__ import annotations

import json
import urllib.error
import urllib.request


def post_json(url: str, payload: dict, headers: dict | None = None, timeout: float = 10.0) -> str:
    body = json.dumps(payload).encode("utf-8")
    req = urllib.request.Request(url, data=body, method="POST")
    req.add_header("Content-Type", "application/json")
    for key, value in (headers or {}).items():
        req.add_header(key, value)
    with urllib.request.urlopen(req, timeout=timeout) as resp:
        status = getattr(resp, "status", 200)
        if not (200 <= status < 300):
            raise urllib.error.HTTPError(url, status, "non-success status", resp.headers, None)
        return resp.read().decode("utf-8")
