"""HTTP JSON API over the orchestrator, plus static hosting for the web console.

All endpoints are GET and stateless; errors come back as
{"error": {"code", "message"}} with a matching status.
"""
from __future__ import annotations

import json
import logging
import mimetypes
import traceback
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from urllib.parse import parse_qs, urlsplit

from .aligner import read_alignments
from .classifier import read_catalog
from .config import AppConfig
from .errors import CounqerError, NotFoundError, ValidationError
from .kb import PredicateRef
from .orchestrator import COUNTING, Orchestrator, QueryRow, SPOQuery

log = logging.getLogger(__name__)

_STATUS = {
    "validation": 400,
    "parse": 400,
    "not_found": 404,
    "transport": 502,
    "protocol": 502,
    "timeout": 504,
}


def row_payload(row: QueryRow) -> dict:
    body: dict = {
        "iri": row.pred.iri,
        "inverse": row.pred.inverse,
        "role": row.role,
        "label": row.label,
        "variant": row.variant,
        "total_cardinality": row.total_cardinality,
        "sparql": row.sparql,
        "stats": row.stats,
    }
    if row.alignment_score is not None:
        body["alignment_score"] = row.alignment_score
    if row.variant == COUNTING:
        if row.count_value is not None:
            body["count_value"] = row.count_value
    else:
        body["enumeration"] = [{"iri": iri, "label": label} for iri, label in row.enumeration]
    if row.error is not None:
        body["error"] = row.error
    return body


def _bool_param(params: dict, key: str) -> bool:
    return params.get(key, "false").lower() in ("true", "1", "yes")


def _int_param(params: dict, key: str, default: int) -> int:
    raw = params.get(key)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError as exc:
        raise ValidationError(f"bad integer for {key!r}: {raw!r}") from exc


def _require(params: dict, *keys: str) -> list[str]:
    missing = [k for k in keys if not params.get(k)]
    if missing:
        raise ValidationError(f"missing query parameter(s): {', '.join(missing)}")
    return [params[k] for k in keys]


class ApiHandler(BaseHTTPRequestHandler):
    server_version = "counqer/0.1"

    @property
    def orchestrator(self) -> Orchestrator:
        return self.server.orchestrator  # type: ignore[attr-defined]

    @property
    def static_dir(self) -> Path | None:
        return self.server.static_dir  # type: ignore[attr-defined]

    def log_message(self, fmt, *args):  # route access logs through logging
        log.debug("%s %s", self.address_string(), fmt % args)

    def do_GET(self):
        url = urlsplit(self.path)
        params = {k: v[-1] for k, v in parse_qs(url.query).items()}
        try:
            payload = self._route(url.path, params)
        except CounqerError as exc:
            status = _STATUS.get(exc.code, 500)
            self._send_json(status, {"error": {"code": exc.code, "message": str(exc)}})
            return
        except Exception as exc:  # defensive: never leak a stack through the socket
            log.error("unhandled error on %s: %s\n%s", self.path, exc, traceback.format_exc())
            self._send_json(500, {"error": {"code": "internal", "message": str(exc)}})
            return
        if payload is not None:
            self._send_json(200, payload)

    # -- routing -----------------------------------------------------------

    def _route(self, path: str, params: dict):
        if path == "/api/kbs":
            # endpoint lets the console link result rows to a public SPARQL UI
            return [{"id": d.id, "name": d.name, "endpoint": d.endpoint} for d in self.orchestrator.kbs()]
        if path == "/api/suggest/entity":
            kb, prefix = _require(params, "kb", "prefix")
            limit = _int_param(params, "limit", 10)
            hits = self.orchestrator.entity_suggest(kb, prefix, limit)
            return [{"iri": iri, "label": label} for iri, label in hits]
        if path == "/api/suggest/predicate":
            kb, entity = _require(params, "kb", "entity")
            suggestions = self.orchestrator.suggest_predicates(kb, entity)
            return [
                {
                    "iri": s.pred.iri,
                    "inverse": s.pred.inverse,
                    "label": s.label,
                    "tier": s.tier,
                    "variant": s.variant,
                    "best_score": s.best_score,
                }
                for s in suggestions
            ]
        if path == "/api/query":
            kb, subject, predicate = _require(params, "kb", "subject", "predicate")
            pred = PredicateRef(predicate, inverse=_bool_param(params, "inverse"))
            main, related = self.orchestrator.answer_spo(SPOQuery(kb, subject, pred))
            return {"main": row_payload(main), "related": [row_payload(r) for r in related]}
        if path == "/api/alignments":
            (kb,) = _require(params, "kb")
            total, rows = self.orchestrator.list_alignments(
                kb,
                search=params.get("search", ""),
                offset=_int_param(params, "offset", 0),
                limit=_int_param(params, "limit", 50),
            )
            return {"total": total, "rows": [self._alignment_payload(r) for r in rows]}
        if path == "/api/consistency":
            kb, subject, counting, enumerating = _require(
                params, "kb", "subject", "counting", "enumerating"
            )
            report = self.orchestrator.check_consistency(
                kb,
                subject,
                PredicateRef(counting, inverse=_bool_param(params, "counting_inverse")),
                PredicateRef(enumerating, inverse=_bool_param(params, "enumerating_inverse")),
            )
            return {
                "subject": report.subject,
                "counting": {"iri": report.counting.iri, "inverse": report.counting.inverse},
                "enumerating": {
                    "iri": report.enumerating.iri,
                    "inverse": report.enumerating.inverse,
                },
                "count_value": report.count_value,
                "cardinality": report.cardinality,
                "verdict": report.verdict,
            }
        if path.startswith("/api/"):
            raise NotFoundError(f"no such endpoint: {path}")
        self._serve_static(path)
        return None

    @staticmethod
    def _alignment_payload(row: dict) -> dict:
        a = row["alignment"]
        return {
            "counting_iri": a.counting.iri,
            "counting_inverse": a.counting.inverse,
            "enumerating_iri": a.enumerating.iri,
            "enumerating_inverse": a.enumerating.inverse,
            "counting_label": row["counting_label"],
            "enumerating_label": row["enumerating_label"],
            "score": a.score,
            "lexical": a.lexical,
            "statistical": a.statistical,
            "support": a.support,
            "provenance": a.provenance,
            "sparql_cooccurrence": row["sparql_cooccurrence"],
        }

    # -- static hosting ------------------------------------------------------

    def _serve_static(self, path: str):
        root = self.static_dir
        if root is None:
            raise NotFoundError(f"no such endpoint: {path} (no static_dir configured)")
        relative = path.lstrip("/")
        if path in ("/", "/spo", "/alignments") or not relative:
            relative = "index.html"
        target = (root / relative).resolve()
        if not str(target).startswith(str(root.resolve())) or not target.is_file():
            raise NotFoundError(f"no such file: {path}")
        content_type = mimetypes.guess_type(target.name)[0] or "application/octet-stream"
        body = target.read_bytes()
        self.send_response(200)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def _send_json(self, status: int, payload):
        body = json.dumps(payload).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.end_headers()
        self.wfile.write(body)


def build_orchestrator(config: AppConfig) -> Orchestrator:
    runtimes = []
    for setup in config.kbs:
        catalog = read_catalog(setup.catalog_path) if setup.catalog_path else None
        alignments = None
        if setup.alignments_path:
            alignments = [a for _, a in read_alignments(setup.alignments_path)]
        runtimes.append(Orchestrator.build_runtime(setup.descriptor, catalog, alignments))
    return Orchestrator(runtimes, cache_ttl=config.cache_ttl)


def build_server(config: AppConfig, port: int | None = None) -> ThreadingHTTPServer:
    """Bind the service; port=0 picks an ephemeral port (inspect server_address)."""
    orchestrator = build_orchestrator(config)
    bind_port = config.port if port is None else port
    try:
        httpd = ThreadingHTTPServer((config.host, bind_port), ApiHandler)
    except OSError as exc:
        raise ValidationError(f"cannot bind {config.host}:{bind_port}: {exc}") from exc
    httpd.orchestrator = orchestrator  # type: ignore[attr-defined]
    httpd.static_dir = config.static_dir  # type: ignore[attr-defined]
    return httpd


def serve(config: AppConfig, port: int | None = None) -> None:
    httpd = build_server(config, port=port)
    host, bound = httpd.server_address[:2]
    log.info("serving %d KB(s) on http://%s:%d/", len(config.kbs), host, bound)
    try:
        httpd.serve_forever()
    finally:
        httpd.server_close()
