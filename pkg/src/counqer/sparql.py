"""SPARQL protocol client: SELECT over HTTP with transparent pagination."""
from __future__ import annotations

import re

import requests

from .errors import EndpointTimeoutError, ProtocolError, TransportError, ValidationError
from .kb import KBDescriptor, Literal, Term

ACCEPT = "application/sparql-results+json"

# Queries longer than this go out as a POST form instead of a GET parameter.
MAX_GET_QUERY = 2000

_HAS_LIMIT = re.compile(r"\bLIMIT\b", re.IGNORECASE)


def parse_binding(binding: dict) -> Term:
    kind = binding.get("type")
    value = binding.get("value")
    if not isinstance(value, str):
        raise ProtocolError(f"binding without string value: {binding!r}")
    if kind == "uri":
        return value
    if kind == "bnode":
        return value if value.startswith("_:") else f"_:{value}"
    if kind in ("literal", "typed-literal"):
        return Literal(value, datatype=binding.get("datatype"), lang=binding.get("xml:lang"))
    raise ProtocolError(f"unknown binding type: {kind!r}")


def parse_results_document(doc) -> list[dict[str, Term]]:
    try:
        names = doc["head"]["vars"]
        bindings = doc["results"]["bindings"]
    except (KeyError, TypeError) as exc:
        raise ProtocolError(f"malformed SPARQL results document: {exc}") from exc
    rows = []
    for entry in bindings:
        if not isinstance(entry, dict):
            raise ProtocolError("malformed bindings entry")
        rows.append({name: parse_binding(entry[name]) for name in names if name in entry})
    return rows


def _fetch_page(kb: KBDescriptor, query: str, session: requests.Session) -> list[dict[str, Term]]:
    headers = {"Accept": ACCEPT}
    try:
        if len(query) <= MAX_GET_QUERY:
            resp = session.get(kb.endpoint, params={"query": query}, headers=headers, timeout=kb.timeout)
        else:
            resp = session.post(kb.endpoint, data={"query": query}, headers=headers, timeout=kb.timeout)
    except requests.Timeout as exc:
        raise EndpointTimeoutError(f"{kb.id}: endpoint timed out after {kb.timeout}s") from exc
    except requests.RequestException as exc:
        raise TransportError(f"{kb.id}: {exc}") from exc
    if resp.status_code != 200:
        raise TransportError(
            f"{kb.id}: endpoint returned HTTP {resp.status_code}",
            status=resp.status_code,
            retriable=resp.status_code >= 500 or resp.status_code == 429,
        )
    try:
        doc = resp.json()
    except ValueError as exc:
        raise ProtocolError(f"{kb.id}: response is not JSON") from exc
    return parse_results_document(doc)


def sparql_select(kb: KBDescriptor, query: str, session: requests.Session | None = None) -> list[dict[str, Term]]:
    """Run a SELECT query, following pagination in page_size chunks.

    Queries that already carry a LIMIT are sent through untouched in a single
    request; everything else is wrapped with LIMIT/OFFSET until a short page
    signals the end of the result set.
    """
    if kb.endpoint is None:
        raise ValidationError(f"KB {kb.id} has no SPARQL endpoint")
    own_session = session is None
    session = session or requests.Session()
    try:
        if _HAS_LIMIT.search(query):
            return _fetch_page(kb, query, session)
        rows: list[dict[str, Term]] = []
        offset = 0
        while True:
            page = _fetch_page(kb, f"{query} LIMIT {kb.page_size} OFFSET {offset}", session)
            rows.extend(page)
            if len(page) < kb.page_size:
                return rows
            offset += kb.page_size
    finally:
        if own_session:
            session.close()
