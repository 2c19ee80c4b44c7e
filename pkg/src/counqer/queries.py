"""SPARQL query text generation.

Every query the system fires is built here so the text shown in the UI is
exactly the text executed. Formatting contract: single space between tokens,
patterns joined by " . ", no trailing newline. The SPO and co-occurrence
shapes are displayed verbatim and compared bit-exactly by tests; do not
reformat them.
"""
from __future__ import annotations

from .errors import ValidationError
from .kb import RDFS_LABEL, PredicateRef, is_absolute_iri


def build_spo_query(subject: str, pred: PredicateRef) -> str:
    """SELECT of all values for one (subject, directed predicate) pair."""
    if not isinstance(subject, str) or not is_absolute_iri(subject):
        raise ValidationError(f"subject is not an absolute IRI: {subject!r}")
    if pred.inverse:
        return f"SELECT ?s WHERE {{ ?s <{pred.iri}> <{subject}> }}"
    return f"SELECT ?o WHERE {{ <{subject}> <{pred.iri}> ?o }}"


def _pattern(ref: PredicateRef, value_var: str) -> str:
    if ref.inverse:
        return f"{value_var} <{ref.iri}> ?x"
    return f"?x <{ref.iri}> {value_var}"


def build_cooccurrence_query(counting, enumerating) -> str:
    """SELECT DISTINCT of subjects instantiating both sides of an alignment.

    Accepts PredicateRefs or classified set predicates; when variants are
    available they are validated (one counting, one enumerating).
    """
    c_variant = getattr(counting, "variant", None)
    e_variant = getattr(enumerating, "variant", None)
    if c_variant is not None and c_variant != "COUNTING":
        raise ValidationError(f"left side of an alignment must be COUNTING, got {c_variant}")
    if e_variant is not None and e_variant != "ENUMERATING":
        raise ValidationError(f"right side of an alignment must be ENUMERATING, got {e_variant}")
    c_ref: PredicateRef = getattr(counting, "pred", counting)
    e_ref: PredicateRef = getattr(enumerating, "pred", enumerating)
    if c_ref.key == e_ref.key:
        raise ValidationError("alignment sides must be distinct predicates")
    return f"SELECT DISTINCT ?x WHERE {{ {_pattern(c_ref, '?c')} . {_pattern(e_ref, '?e')} }}"


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def build_entity_suggest_query(prefix: str, limit: int) -> str:
    """Label prefix search for the autocomplete field, shortest labels first."""
    needle = prefix.strip().lower()
    if not needle:
        raise ValidationError("entity prefix must be non-empty")
    if limit <= 0:
        raise ValidationError("limit must be positive")
    return (
        f"SELECT ?e ?label WHERE {{ ?e <{RDFS_LABEL}> ?label . "
        f"FILTER ( STRSTARTS ( LCASE ( STR ( ?label ) ) , {_quote(needle)} ) ) }} "
        f"ORDER BY STRLEN ( STR ( ?label ) ) STR ( ?label ) STR ( ?e ) LIMIT {limit}"
    )


def build_label_query(iri: str) -> str:
    if not is_absolute_iri(iri):
        raise ValidationError(f"not an absolute IRI: {iri!r}")
    return f"SELECT ?label WHERE {{ <{iri}> <{RDFS_LABEL}> ?label }} LIMIT 1"


def build_dump_query() -> str:
    """Full-store scan used to materialize a remote KB for offline profiling."""
    return "SELECT ?s ?p ?o WHERE { ?s ?p ?o }"
