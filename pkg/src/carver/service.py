"""Local HTTP service driving the review UI.

Endpoints (JSON unless noted; see API.md for field-level docs):

    GET  /health                 liveness probe
    POST /suggest                {path, method_locator} -> session snapshot
    GET  /session/{id}           stored session snapshot
    POST /apply                  {session, group} -> {diff, new_text}, writes the file
    GET  /source?path=...        raw file text (confined to the configured root)

Sessions are immutable snapshots of one suggest run. /apply re-reads the file
and refuses with 409 when its digest no longer matches the session, so a
stale UI can never edit a file that moved under it. File writes happen only
here, only through the extractor's edit script, atomically.
"""

from __future__ import annotations

import json
import mimetypes
import os
import tempfile
import threading
import uuid
from datetime import datetime, timezone
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from urllib.parse import parse_qs, urlparse

from .config import AppConfig, make_provider
from .dataflow import build_cfg, liveness
from .errors import (
    AmbiguousMethodError,
    CarverError,
    MethodNotFoundError,
    MissingFixtureError,
    ParseError,
    PlanConflictError,
    ProviderUnreachableError,
    RenderError,
    StaleUnitError,
)
from .extractor import apply as apply_plan
from .extractor import plan as build_plan
from .pipeline import suggest_pipeline
from .ranking import RankedGroup
from .source_model import locate_method, parse_unit, statements_in_range

_MAX_BODY = 1 << 20


class CarverServer(ThreadingHTTPServer):
    daemon_threads = True
    allow_reuse_address = True

    def __init__(self, config: AppConfig, address: tuple[str, int]):
        super().__init__(address, _Handler)
        self.config = config
        self.provider = make_provider(config)
        self.source_root = Path(config.root).resolve()
        static = self.source_root / "frontend" / "dist"
        self.static_dir = static if static.is_dir() else None
        self.sessions: dict[str, dict] = {}
        self.sessions_lock = threading.Lock()
        self._file_locks: dict[str, threading.Lock] = {}
        self._file_locks_guard = threading.Lock()

    def file_lock(self, path: str) -> threading.Lock:
        with self._file_locks_guard:
            if path not in self._file_locks:
                self._file_locks[path] = threading.Lock()
            return self._file_locks[path]

    def confine(self, raw_path: str) -> Path | None:
        """Resolve a request path against the root; None when it escapes."""
        candidate = Path(raw_path)
        if not candidate.is_absolute():
            candidate = self.source_root / candidate
        resolved = candidate.resolve()
        if resolved == self.source_root or resolved.is_relative_to(self.source_root):
            return resolved
        return None


class _Handler(BaseHTTPRequestHandler):
    server: CarverServer

    # -- plumbing ---------------------------------------------------------

    def log_message(self, fmt: str, *args) -> None:
        pass  # keep test output clean; errors surface in responses

    def _send_json(self, status: int, payload: dict) -> None:
        body = json.dumps(payload, sort_keys=True).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json; charset=utf-8")
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def _send_error_json(self, status: int, message: str) -> None:
        self._send_json(status, {"error": message})

    def _read_body(self) -> dict | None:
        length = int(self.headers.get("Content-Length") or 0)
        if length <= 0 or length > _MAX_BODY:
            self._send_error_json(400, "missing or oversized request body")
            return None
        raw = self.rfile.read(length)
        try:
            obj = json.loads(raw)
        except json.JSONDecodeError:
            self._send_error_json(400, "request body is not valid JSON")
            return None
        if not isinstance(obj, dict):
            self._send_error_json(400, "request body must be a JSON object")
            return None
        return obj

    # -- routes -----------------------------------------------------------

    def do_GET(self) -> None:  # noqa: N802 - http.server API
        url = urlparse(self.path)
        if url.path == "/health":
            self._send_json(200, {"status": "ok"})
        elif url.path.startswith("/session/"):
            self._get_session(url.path[len("/session/") :])
        elif url.path == "/source":
            self._get_source(url.query)
        else:
            self._get_static(url.path)

    def do_POST(self) -> None:  # noqa: N802 - http.server API
        url = urlparse(self.path)
        if url.path == "/suggest":
            self._post_suggest()
        elif url.path == "/apply":
            self._post_apply()
        else:
            self._send_error_json(404, f"no such route: {url.path}")

    # -- GET handlers -------------------------------------------------------

    def _get_session(self, session_id: str) -> None:
        with self.server.sessions_lock:
            session = self.server.sessions.get(session_id)
        if session is None:
            self._send_error_json(404, f"unknown session: {session_id}")
        else:
            self._send_json(200, session)

    def _get_source(self, query: str) -> None:
        params = parse_qs(query)
        raw = params.get("path", [""])[0]
        if not raw:
            self._send_error_json(400, "missing query parameter: path")
            return
        resolved = self.server.confine(raw)
        if resolved is None:
            self._send_error_json(403, "path is outside the configured root")
            return
        if not resolved.is_file():
            self._send_error_json(404, f"no such file: {raw}")
            return
        body = resolved.read_bytes()
        self.send_response(200)
        self.send_header("Content-Type", "text/plain; charset=utf-8")
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def _get_static(self, path: str) -> None:
        if self.server.static_dir is None:
            self._send_error_json(404, f"no such route: {path} (review UI not built)")
            return
        rel = path.lstrip("/") or "index.html"
        target = (self.server.static_dir / rel).resolve()
        if not target.is_relative_to(self.server.static_dir) or not target.is_file():
            self._send_error_json(404, f"no such route: {path}")
            return
        ctype = mimetypes.guess_type(str(target))[0] or "application/octet-stream"
        body = target.read_bytes()
        self.send_response(200)
        self.send_header("Content-Type", ctype)
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    # -- POST handlers ------------------------------------------------------

    def _post_suggest(self) -> None:
        body = self._read_body()
        if body is None:
            return
        raw_path = body.get("path")
        locator = body.get("method_locator")
        if not isinstance(raw_path, str) or not isinstance(locator, (str, int)):
            self._send_error_json(400, "expected fields: path (string), method_locator (string or integer)")
            return
        resolved = self.server.confine(raw_path)
        if resolved is None:
            self._send_error_json(403, "path is outside the configured root")
            return
        if not resolved.is_file():
            self._send_error_json(404, f"no such file: {raw_path}")
            return

        config = self.server.config
        try:
            unit = parse_unit(resolved.read_text(encoding="utf-8"), str(resolved))
            model = locate_method(unit, locator)
            result = suggest_pipeline(
                unit,
                model,
                self.server.provider,
                config.provider,
                top_n=config.top_n,
                system_preamble=config.system_preamble(),
            )
        except (ParseError, MethodNotFoundError, AmbiguousMethodError) as exc:
            self._send_error_json(422, str(exc))
            return
        except (ProviderUnreachableError, MissingFixtureError) as exc:
            self._send_error_json(502, f"provider failed: {exc}")
            return
        except CarverError as exc:
            self._send_error_json(500, str(exc))
            return

        session = {
            "session": uuid.uuid4().hex,
            "path": str(resolved),
            "digest": unit.digest(),
            "created": datetime.now(timezone.utc).isoformat(),
            "method": {
                "name": model.name,
                "decl_line": model.decl_line,
                "close_line": model.close_line,
            },
            "groups": [g.to_json() for g in result.group_views],
            "diagnostics": list(result.diagnostics),
        }
        with self.server.sessions_lock:
            self.server.sessions[session["session"]] = session
        self._send_json(200, session)

    def _post_apply(self) -> None:
        body = self._read_body()
        if body is None:
            return
        session_id = body.get("session")
        group_index = body.get("group")
        if not isinstance(session_id, str) or isinstance(group_index, bool) or not isinstance(group_index, int):
            self._send_error_json(400, "expected fields: session (string), group (integer)")
            return
        with self.server.sessions_lock:
            session = self.server.sessions.get(session_id)
        if session is None:
            self._send_error_json(404, f"unknown session: {session_id}")
            return
        if not (0 <= group_index < len(session["groups"])):
            self._send_error_json(422, f"group index {group_index} out of range")
            return
        group_json = session["groups"][group_index]
        path = session["path"]

        with self.server.file_lock(path):
            try:
                text = Path(path).read_text(encoding="utf-8")
            except FileNotFoundError:
                self._send_error_json(404, f"no such file: {path}")
                return
            unit = parse_unit(text, path)
            if unit.digest() != session["digest"]:
                self._send_error_json(409, "file changed since suggestions were computed; re-run suggest")
                return
            try:
                model = locate_method(unit, session["method"]["decl_line"])
                res = statements_in_range(model, group_json["range"][0], group_json["range"][1])
                if not res.aligned or res.span is None:
                    self._send_error_json(422, "stored range no longer aligns with whole statements")
                    return
                group = RankedGroup(
                    canonical_range=res.span,
                    frequency=group_json["frequency"],
                    names=tuple(group_json["names"]),
                    representative_name=group_json["name"],
                    fragment=res.ids,
                )
                cfg = build_cfg(model)
                live = liveness(cfg, model)
                plan_ = build_plan(model, cfg, live, group)
                new_text, script = apply_plan(unit, model, plan_)
            except StaleUnitError:
                self._send_error_json(409, "file changed since suggestions were computed; re-run suggest")
                return
            except (PlanConflictError, MethodNotFoundError, AmbiguousMethodError, ParseError) as exc:
                self._send_error_json(422, str(exc))
                return
            except RenderError as exc:
                self._send_error_json(500, f"refused to write a broken refactoring: {exc}")
                return

            target = Path(path)
            fd, tmp = tempfile.mkstemp(dir=str(target.parent), prefix=f".{target.name}.", suffix=".tmp")
            try:
                with os.fdopen(fd, "w", encoding="utf-8") as fh:
                    fh.write(new_text)
                os.replace(tmp, target)
            except BaseException:
                if os.path.exists(tmp):
                    os.unlink(tmp)
                raise

        self._send_json(200, {"diff": script.diff, "new_text": new_text})


def make_server(config: AppConfig, port: int | None = None) -> CarverServer:
    return CarverServer(config, ("127.0.0.1", config.port if port is None else port))


def run_service(config: AppConfig) -> int:
    server = make_server(config)
    host, port = server.server_address[0], server.server_address[1]
    print(f"listening on http://{host}:{port} (root: {server.source_root})")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
    return 0
