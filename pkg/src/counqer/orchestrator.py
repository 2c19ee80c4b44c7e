"""The serving layer: SPO answers with related aligned facts, predicate tiers,
and consistency verdicts, over any configured mix of embedded and remote KBs."""
from __future__ import annotations

import logging
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .aligner import Alignment, rank_alignments, sort_alignments
from .classifier import COUNTING, ENUMERATING, NONE, RULES_MODEL, SetPredicate, classify
from .connect import Connection, connect
from .errors import CounqerError, NotFoundError, TransportError, ValidationError
from .kb import KBDescriptor, Literal, PredicateRef, is_absolute_iri, is_iri
from .profiler import count_value, profile_all
from .queries import build_cooccurrence_query, build_spo_query

log = logging.getLogger(__name__)

ROLE_MAIN = "MAIN"
ROLE_RELATED = "RELATED"

ENUMERATION_CAP = 1000
RELATED_CAP = 5

CONSISTENT = "CONSISTENT"
ENUM_INCOMPLETE = "ENUM_INCOMPLETE"
ENUM_EXCESS = "ENUM_EXCESS"
COUNT_MISSING = "COUNT_MISSING"
ENUM_MISSING = "ENUM_MISSING"


def verdict_for(v: int | None, n: int) -> str:
    """Consistency verdict for one (count value, enumeration cardinality) pair.

    Total over v in {absent} + non-negative integers and n >= 0; exactly one
    branch fires per cell.
    """
    if v is None:
        return COUNT_MISSING
    if n == 0 and v > 0:
        return ENUM_MISSING
    if v == n:
        return CONSISTENT
    if v > n:
        return ENUM_INCOMPLETE
    return ENUM_EXCESS


@dataclass(frozen=True)
class SPOQuery:
    kb_id: str
    subject: str
    pred: PredicateRef


@dataclass
class QueryRow:
    """One answer row: the main predicate or one related aligned predicate."""

    pred: PredicateRef
    role: str
    label: str
    variant: str
    count_value: int | None
    enumeration: list[tuple[str, str]]
    total_cardinality: int
    sparql: str
    stats: dict[str, float]
    alignment_score: float | None = None
    error: str | None = None


@dataclass(frozen=True)
class ConsistencyReport:
    subject: str
    counting: PredicateRef
    enumerating: PredicateRef
    count_value: int | None
    cardinality: int
    verdict: str


@dataclass(frozen=True)
class PredicateSuggestion:
    pred: PredicateRef
    label: str
    tier: int
    variant: str
    best_score: float | None


@dataclass
class KBRuntime:
    descriptor: KBDescriptor
    connection: Connection
    catalog: dict[tuple[str, bool], SetPredicate]
    alignments: list[Alignment]
    by_pred: dict[tuple[str, bool], list[Alignment]] = field(default_factory=dict)
    pairs: set = field(default_factory=set)

    def __post_init__(self):
        by_pred: dict[tuple[str, bool], list[Alignment]] = {}
        for alignment in self.alignments:
            by_pred.setdefault(alignment.counting.key, []).append(alignment)
            by_pred.setdefault(alignment.enumerating.key, []).append(alignment)
            self.pairs.add(alignment.pair)
        for key, items in by_pred.items():
            ref = PredicateRef(key[0], inverse=key[1])
            items.sort(key=lambda a: (-a.score, a.partner_of(ref).iri, a.partner_of(ref).inverse))
        self.by_pred = by_pred

    def label_of(self, iri: str) -> str:
        for inverse in (False, True):
            entry = self.catalog.get((iri, inverse))
            if entry is not None and entry.label is not None:
                return entry.label
        return self.connection.label(iri)


class _ResponseCache:
    """TTL cache for remote row executions, keyed by (kb, subject, predicate)."""

    def __init__(self, ttl: float):
        self.ttl = ttl
        self._data: dict = {}
        self._lock = threading.Lock()

    def get(self, key):
        if self.ttl <= 0:
            return None
        with self._lock:
            hit = self._data.get(key)
            if hit is None:
                return None
            stamp, value = hit
            if time.monotonic() - stamp > self.ttl:
                del self._data[key]
                return None
            return value

    def put(self, key, value):
        if self.ttl <= 0:
            return
        with self._lock:
            self._data[key] = (time.monotonic(), value)


class Orchestrator:
    """Holds per-KB runtimes and answers every query the API exposes."""

    def __init__(self, runtimes: list[KBRuntime], cache_ttl: float = 300.0):
        self.runtimes = {rt.descriptor.id: rt for rt in runtimes}
        self._cache = _ResponseCache(cache_ttl)
        self._pool = ThreadPoolExecutor(max_workers=RELATED_CAP + 1, thread_name_prefix="kbquery")

    # -- construction ---------------------------------------------------

    @staticmethod
    def build_runtime(
        descriptor: KBDescriptor,
        catalog: list[SetPredicate] | None = None,
        alignments: list[Alignment] | None = None,
        connection: Connection | None = None,
    ) -> KBRuntime:
        """Assemble one KB runtime; embedded KBs without precomputed artifacts
        get the default offline pipeline run on the spot."""
        conn = connection or connect(descriptor)
        if catalog is None or alignments is None:
            if conn.kind != "embedded":
                raise ValidationError(
                    f"KB {descriptor.id}: remote KBs need precomputed catalog and alignments"
                )
            store = conn.store
            if catalog is None:
                catalog = []
                for profile in profile_all(store):
                    label = store.label(profile.pred.iri)
                    variant, confidence = classify(profile.pred, profile, RULES_MODEL, label=label)
                    if variant == NONE:
                        continue
                    catalog.append(SetPredicate(profile.pred, variant, confidence, profile, label))
            if alignments is None:
                counting = [sp for sp in catalog if sp.variant == COUNTING]
                enumerating = [sp for sp in catalog if sp.variant == ENUMERATING]
                alignments = rank_alignments(store, counting, enumerating)
        catalog_map = {sp.pred.key: sp for sp in sorted(catalog, key=lambda s: s.pred.key)}
        return KBRuntime(descriptor, conn, catalog_map, sort_alignments(alignments))

    def _runtime(self, kb_id: str) -> KBRuntime:
        rt = self.runtimes.get(kb_id)
        if rt is None:
            raise NotFoundError(f"unknown KB id {kb_id!r}")
        return rt

    def kbs(self) -> list[KBDescriptor]:
        return [rt.descriptor for rt in self.runtimes.values()]

    # -- entity + predicate suggestions ----------------------------------

    def entity_suggest(self, kb_id: str, prefix: str, limit: int = 10) -> list[tuple[str, str]]:
        return self._runtime(kb_id).connection.entity_suggest(prefix, limit)

    def suggest_predicates(self, kb_id: str, subject: str) -> list[PredicateSuggestion]:
        """Catalog predicates in three tiers: populated+aligned, populated, unpopulated."""
        rt = self._runtime(kb_id)
        if not is_absolute_iri(subject):
            raise ValidationError(f"subject is not an absolute IRI: {subject!r}")
        items = []
        for sp in rt.catalog.values():
            populated = rt.connection.is_populated(subject, sp.pred)
            ranked = rt.by_pred.get(sp.pred.key)
            best = ranked[0].score if ranked else None
            tier = 1 if populated and ranked else (2 if populated else 3)
            items.append(PredicateSuggestion(sp.pred, sp.display_label(), tier, sp.variant, best))
        items.sort(
            key=lambda s: (
                s.tier,
                -(s.best_score or 0.0) if s.tier == 1 else 0.0,
                s.label,
                s.pred.iri,
                s.pred.inverse,
            )
        )
        return items

    # -- SPO answering ----------------------------------------------------

    def _execute(self, rt: KBRuntime, subject: str, pred: PredicateRef, variant: str):
        """(count_value, enumeration, total_cardinality) for one row, cached for remote KBs."""
        cache_key = (rt.descriptor.id, subject, pred.key)
        if rt.connection.kind == "remote":
            hit = self._cache.get(cache_key)
            if hit is not None:
                return hit
        terms = rt.connection.spo(subject, pred)
        if variant == COUNTING:
            values = [v for v in (count_value(t) for t in terms) if v is not None]
            result = (max(values) if values else None, [], 0)
        else:
            total = len(terms)
            shown = []
            for term in terms[:ENUMERATION_CAP]:
                if is_iri(term):
                    shown.append((term, rt.label_of(term)))
                elif isinstance(term, Literal):
                    shown.append((term.lexical, term.lexical))
                else:
                    shown.append((term, term))
            result = (None, shown, total)
        if rt.connection.kind == "remote":
            self._cache.put(cache_key, result)
        return result

    def _variant_of(self, rt: KBRuntime, pred: PredicateRef, alignment: Alignment | None) -> str:
        entry = rt.catalog.get(pred.key)
        if entry is not None:
            return entry.variant
        if alignment is not None:
            return COUNTING if pred.key == alignment.counting.key else ENUMERATING
        raise NotFoundError(f"predicate {pred.display()} is not in the {rt.descriptor.id} catalog")

    def _stats_of(self, rt: KBRuntime, pred: PredicateRef, variant: str) -> dict[str, float]:
        entry = rt.catalog.get(pred.key)
        if entry is None:
            return {}
        if variant == COUNTING:
            return {} if entry.profile.mean_value is None else {"mean_value": entry.profile.mean_value}
        return {"mean_per_subject": entry.profile.mean_per_subject}

    def _build_row(
        self,
        rt: KBRuntime,
        subject: str,
        pred: PredicateRef,
        role: str,
        alignment: Alignment | None,
    ) -> QueryRow:
        variant = self._variant_of(rt, pred, alignment)
        value, enumeration, total = self._execute(rt, subject, pred, variant)
        return QueryRow(
            pred=pred,
            role=role,
            label=pred.display(rt.label_of(pred.iri)),
            variant=variant,
            count_value=value,
            enumeration=enumeration,
            total_cardinality=total,
            sparql=build_spo_query(subject, pred),
            stats=self._stats_of(rt, pred, variant),
            alignment_score=alignment.score if alignment is not None else None,
        )

    def _related_row(self, rt, subject, pred, alignment) -> QueryRow:
        """Related rows degrade to error rows instead of failing the response."""
        try:
            return self._build_row(rt, subject, pred, ROLE_RELATED, alignment)
        except CounqerError as exc:
            log.warning("related row %s failed: %s", pred.display(), exc)
            return QueryRow(
                pred=pred,
                role=ROLE_RELATED,
                label=pred.display(rt.label_of(pred.iri)) if rt.catalog.get(pred.key) else pred.display(),
                variant=self._variant_of(rt, pred, alignment),
                count_value=None,
                enumeration=[],
                total_cardinality=0,
                sparql=build_spo_query(subject, pred),
                stats={},
                alignment_score=alignment.score,
                error=str(exc),
            )

    def answer_spo(self, query: SPOQuery) -> tuple[QueryRow, list[QueryRow]]:
        """The main answer row plus up to five related rows from top alignments.

        Related rows are returned even when empty, and even when the main
        result is empty; a predicate without alignments gets none.
        """
        rt = self._runtime(query.kb_id)
        if query.pred.key not in rt.catalog:
            raise NotFoundError(
                f"predicate {query.pred.display()} is not in the {rt.descriptor.id} catalog"
            )
        if not is_absolute_iri(query.subject):
            raise ValidationError(f"subject is not an absolute IRI: {query.subject!r}")
        try:
            main = self._build_row(rt, query.subject, query.pred, ROLE_MAIN, None)
        except TransportError as exc:
            raise TransportError(
                f"main row {query.pred.display()}: {exc}", status=exc.status, retriable=exc.retriable
            ) from exc
        top = rt.by_pred.get(query.pred.key, [])[:RELATED_CAP]
        work = [(alignment.partner_of(query.pred), alignment) for alignment in top]
        if rt.connection.kind == "remote" and len(work) > 1:
            futures = [
                self._pool.submit(self._related_row, rt, query.subject, pred, alignment)
                for pred, alignment in work
            ]
            related = [f.result(timeout=rt.descriptor.timeout * 2) for f in futures]
        else:
            related = [self._related_row(rt, query.subject, pred, alignment) for pred, alignment in work]
        return main, related

    # -- consistency -------------------------------------------------------

    def check_consistency(
        self, kb_id: str, subject: str, counting: PredicateRef, enumerating: PredicateRef
    ) -> ConsistencyReport:
        rt = self._runtime(kb_id)
        if (counting.key, enumerating.key) not in rt.pairs:
            raise ValidationError(
                f"({counting.display()}, {enumerating.display()}) is not an aligned pair in {kb_id}"
            )
        counting_terms = rt.connection.spo(subject, counting)
        enumerating_terms = rt.connection.spo(subject, enumerating)
        if not counting_terms and not enumerating_terms:
            raise ValidationError(f"{subject} holds neither predicate of the pair")
        values = [v for v in (count_value(t) for t in counting_terms) if v is not None]
        v = max(values) if values else None
        n = len(enumerating_terms)
        return ConsistencyReport(subject, counting, enumerating, v, n, verdict_for(v, n))

    # -- alignment browsing --------------------------------------------------

    def list_alignments(self, kb_id: str, search: str = "", offset: int = 0, limit: int = 50):
        """(total, page) of the KB's ranked alignment table, with display labels
        and the co-occurrence query per row."""
        rt = self._runtime(kb_id)
        if offset < 0 or limit <= 0:
            raise ValidationError("offset must be >= 0 and limit positive")
        needle = search.strip().lower()
        rows = []
        for alignment in rt.alignments:
            c_label = alignment.counting.display(rt.label_of(alignment.counting.iri))
            e_label = alignment.enumerating.display(rt.label_of(alignment.enumerating.iri))
            if needle and not any(
                needle in hay.lower()
                for hay in (c_label, e_label, alignment.counting.iri, alignment.enumerating.iri)
            ):
                continue
            rows.append(
                {
                    "alignment": alignment,
                    "counting_label": c_label,
                    "enumerating_label": e_label,
                    "sparql_cooccurrence": build_cooccurrence_query(
                        alignment.counting, alignment.enumerating
                    ),
                }
            )
        return len(rows), rows[offset : offset + limit]
