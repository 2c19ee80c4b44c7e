"""Uniform KB access: the same lookups against an embedded store or a live endpoint."""
from __future__ import annotations

import threading

import requests

from .kb import KBDescriptor, PredicateRef, Term, TripleStore, load_ntriples, local_name, term_key
from .queries import (
    build_cooccurrence_query,
    build_entity_suggest_query,
    build_label_query,
    build_spo_query,
)
from .sparql import sparql_select


class EmbeddedConnection:
    """Reads against an in-memory TripleStore loaded from an N-Triples dump."""

    kind = "embedded"

    def __init__(self, store: TripleStore):
        self.store = store

    def spo(self, subject: str, pred: PredicateRef) -> list[Term]:
        return self.store.spo(subject, pred)

    def is_populated(self, subject: str, pred: PredicateRef) -> bool:
        return self.store.is_populated(subject, pred)

    def entity_suggest(self, prefix: str, limit: int) -> list[tuple[str, str]]:
        return self.store.entity_suggest(prefix, limit)

    def label(self, iri: str) -> str:
        return self.store.label(iri)

    def cooccurring_subjects(self, counting: PredicateRef, enumerating: PredicateRef) -> list[str]:
        return self.store.cooccurring_subjects(counting, enumerating)


class RemoteConnection:
    """Reads against a live SPARQL endpoint; one HTTP session, concurrent-safe."""

    kind = "remote"

    def __init__(self, descriptor: KBDescriptor, session: requests.Session | None = None):
        self.descriptor = descriptor
        self.session = session or requests.Session()
        self._labels: dict[str, str] = {}
        self._label_lock = threading.Lock()

    def spo(self, subject: str, pred: PredicateRef) -> list[Term]:
        var = "s" if pred.inverse else "o"
        rows = sparql_select(self.descriptor, build_spo_query(subject, pred), self.session)
        return sorted((row[var] for row in rows if var in row), key=term_key)

    def is_populated(self, subject: str, pred: PredicateRef) -> bool:
        query = build_spo_query(subject, pred) + " LIMIT 1"
        return bool(sparql_select(self.descriptor, query, self.session))

    def entity_suggest(self, prefix: str, limit: int) -> list[tuple[str, str]]:
        query = build_entity_suggest_query(prefix, limit)
        rows = sparql_select(self.descriptor, query, self.session)
        out = []
        for row in rows:
            iri, label = row.get("e"), row.get("label")
            if isinstance(iri, str) and label is not None:
                out.append((iri, getattr(label, "lexical", str(label))))
        return out[:limit]

    def label(self, iri: str) -> str:
        with self._label_lock:
            if iri in self._labels:
                return self._labels[iri]
        rows = sparql_select(self.descriptor, build_label_query(iri), self.session)
        text = local_name(iri)
        if rows:
            value = rows[0].get("label")
            if value is not None:
                text = getattr(value, "lexical", str(value))
        with self._label_lock:
            self._labels[iri] = text
        return text

    def cooccurring_subjects(self, counting: PredicateRef, enumerating: PredicateRef) -> list[str]:
        rows = sparql_select(self.descriptor, build_cooccurrence_query(counting, enumerating), self.session)
        return sorted({row["x"] for row in rows if isinstance(row.get("x"), str)})


Connection = EmbeddedConnection | RemoteConnection


def connect(descriptor: KBDescriptor) -> Connection:
    if descriptor.dump is not None:
        return EmbeddedConnection(load_ntriples(descriptor.dump))
    return RemoteConnection(descriptor)
