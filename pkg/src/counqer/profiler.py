"""Per-predicate usage statistics: the raw material for classification and alignment."""
from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

from .errors import NotFoundError, ParseError
from .kb import XSD, Literal, PredicateRef, Term, TripleStore, is_iri

INTEGER_DATATYPES = frozenset(
    XSD + name
    for name in (
        "integer",
        "int",
        "long",
        "short",
        "byte",
        "nonNegativeInteger",
        "positiveInteger",
        "nonPositiveInteger",
        "negativeInteger",
        "unsignedLong",
        "unsignedInt",
        "unsignedShort",
        "unsignedByte",
    )
)

NUMERIC_DATATYPES = INTEGER_DATATYPES | frozenset((XSD + "decimal", XSD + "double", XSD + "float"))

_PLAIN_DIGITS = re.compile(r"^[0-9]+$")
_NUMBER = re.compile(r"^[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?$")


def numeric_value(term: Term) -> float | None:
    """Numeric reading of a literal; accepts the xsd numeric types and bare digit strings."""
    if not isinstance(term, Literal):
        return None
    if term.datatype is None and term.lang is None and _PLAIN_DIGITS.match(term.lexical):
        return float(term.lexical)
    if term.datatype in NUMERIC_DATATYPES and _NUMBER.match(term.lexical.strip()):
        return float(term.lexical)
    return None


def is_nonneg_integer_literal(term: Term) -> bool:
    if not isinstance(term, Literal):
        return False
    if term.datatype is None and term.lang is None:
        return bool(_PLAIN_DIGITS.match(term.lexical))
    if term.datatype in INTEGER_DATATYPES:
        value = numeric_value(term)
        return value is not None and value >= 0
    return False


def count_value(term: Term) -> int | None:
    """The non-negative integer a counting fact asserts, or None."""
    if not is_nonneg_integer_literal(term):
        return None
    return int(float(term.lexical))


@dataclass
class PredicateProfile:
    """Usage statistics of one directed predicate over one KB.

    mean_value/median_value are present only if at least one object parses as
    a number; fractions are over all facts of the predicate.
    """

    pred: PredicateRef
    subject_count: int
    fact_count: int
    mean_value: float | None
    median_value: float | None
    mean_per_subject: float
    integer_fraction: float
    entity_fraction: float


def enumerate_candidates(store: TripleStore, min_subjects: int = 2) -> list[PredicateRef]:
    """All directed predicates worth profiling, in deterministic order.

    Forward refs need min_subjects distinct subjects; inverse refs need
    min_subjects distinct IRI objects. IRI-lexicographic, forward before
    inverse.
    """
    out: list[PredicateRef] = []
    for iri in store.predicates():
        triples = store.by_predicate[iri]
        if len({t.subject for t in triples}) >= min_subjects:
            out.append(PredicateRef(iri, inverse=False))
        if len({t.object for t in triples if is_iri(t.object)}) >= min_subjects:
            out.append(PredicateRef(iri, inverse=True))
    return out


def profile_predicate(store: TripleStore, pred: PredicateRef) -> PredicateProfile:
    facts = store.facts(pred)
    if not facts:
        raise NotFoundError(f"predicate {pred.display()} does not occur in the store")
    subjects = {s for s, _ in facts}
    values = sorted(v for v in (numeric_value(obj) for _, obj in facts) if v is not None)
    n_facts = len(facts)
    mean_value = sum(values) / len(values) if values else None
    # even-length lists take the lower-middle element: deterministic, no interpolation
    median_value = values[(len(values) - 1) // 2] if values else None
    return PredicateProfile(
        pred=pred,
        subject_count=len(subjects),
        fact_count=n_facts,
        mean_value=mean_value,
        median_value=median_value,
        mean_per_subject=n_facts / len(subjects),
        integer_fraction=sum(1 for _, obj in facts if is_nonneg_integer_literal(obj)) / n_facts,
        entity_fraction=sum(1 for _, obj in facts if is_iri(obj)) / n_facts,
    )


def profile_all(store: TripleStore, min_subjects: int = 2) -> list[PredicateProfile]:
    return [profile_predicate(store, pred) for pred in enumerate_candidates(store, min_subjects)]


# --- TSV interchange --------------------------------------------------------

PROFILE_HEADER = (
    "iri",
    "inverse",
    "subject_count",
    "fact_count",
    "mean_value",
    "median_value",
    "mean_per_subject",
    "integer_fraction",
    "entity_fraction",
)


def _fmt(value: float | None) -> str:
    return "" if value is None else f"{value:.6f}"


def write_profiles(path: str | Path, profiles: list[PredicateProfile]) -> None:
    lines = ["\t".join(PROFILE_HEADER)]
    for p in profiles:
        lines.append(
            "\t".join(
                (
                    p.pred.iri,
                    "true" if p.pred.inverse else "false",
                    str(p.subject_count),
                    str(p.fact_count),
                    _fmt(p.mean_value),
                    _fmt(p.median_value),
                    _fmt(p.mean_per_subject),
                    _fmt(p.integer_fraction),
                    _fmt(p.entity_fraction),
                )
            )
        )
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def _parse_bool(text: str, where: str) -> bool:
    if text == "true":
        return True
    if text == "false":
        return False
    raise ParseError(f"{where}: expected true/false, got {text!r}")


def read_profiles(path: str | Path) -> list[PredicateProfile]:
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    if not lines or tuple(lines[0].split("\t")) != PROFILE_HEADER:
        raise ParseError(f"{path}: missing or wrong profile header")
    out = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line:
            continue
        cols = line.split("\t")
        if len(cols) != len(PROFILE_HEADER):
            raise ParseError(f"{path}:{lineno}: expected {len(PROFILE_HEADER)} columns")
        try:
            out.append(
                PredicateProfile(
                    pred=PredicateRef(cols[0], inverse=_parse_bool(cols[1], f"{path}:{lineno}")),
                    subject_count=int(cols[2]),
                    fact_count=int(cols[3]),
                    mean_value=float(cols[4]) if cols[4] else None,
                    median_value=float(cols[5]) if cols[5] else None,
                    mean_per_subject=float(cols[6]),
                    integer_fraction=float(cols[7]),
                    entity_fraction=float(cols[8]),
                )
            )
        except ValueError as exc:
            raise ParseError(f"{path}:{lineno}: {exc}") from exc
    return out
