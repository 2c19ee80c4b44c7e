"""RDF terms, descriptors, N-Triples loading, and the embedded triple store.

The embedded store deliberately supports only the query shapes this system
fires (single-subject SPO lookups, co-occurrence joins, label prefix search);
anything richer has to go to a remote SPARQL endpoint.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ParseError, ValidationError

RDFS_LABEL = "http://www.w3.org/2000/01/rdf-schema#label"
XSD = "http://www.w3.org/2001/XMLSchema#"

INVERSE_MARKER = "⁻¹"  # superscript -1, rendered after inverse predicate labels


@dataclass(frozen=True)
class Literal:
    """An RDF literal: lexical form plus optional datatype IRI or language tag."""

    lexical: str
    datatype: str | None = None
    lang: str | None = None


# IRIs and blank nodes travel as plain strings; a "_:" prefix marks a blank node.
Term = str | Literal


def is_literal(term: Term) -> bool:
    return isinstance(term, Literal)


def is_bnode(term: Term) -> bool:
    return isinstance(term, str) and term.startswith("_:")


def is_iri(term: Term) -> bool:
    return isinstance(term, str) and not term.startswith("_:")


_ABSOLUTE_IRI = re.compile(r'^[A-Za-z][A-Za-z0-9+.\-]*:[^\x00-\x20<>"{}|^`\\]*$')


def is_absolute_iri(value: str) -> bool:
    return bool(_ABSOLUTE_IRI.match(value))


def local_name(iri: str) -> str:
    """Tail of an IRI after the last '#', '/' or ':' (used as a label fallback)."""
    trimmed = iri.rstrip("#/")
    cut = max(trimmed.rfind(sep) for sep in "#/:")
    name = trimmed[cut + 1 :]
    return name or iri


def term_key(term: Term) -> tuple:
    """Deterministic sort key over mixed terms: IRIs, then blank nodes, then literals."""
    if isinstance(term, Literal):
        return (2, term.lexical, term.datatype or "", term.lang or "")
    if term.startswith("_:"):
        return (1, term, "", "")
    return (0, term, "", "")


@dataclass(frozen=True)
class PredicateRef:
    """A predicate IRI plus a direction flag.

    inverse=True means the predicate is read object-to-subject, e.g.
    workInstitution read backwards enumerates the people at an institution.
    """

    iri: str
    inverse: bool = False

    def __post_init__(self):
        if not isinstance(self.iri, str) or not is_absolute_iri(self.iri):
            raise ValidationError(f"not an absolute IRI: {self.iri!r}")

    @property
    def key(self) -> tuple[str, bool]:
        return (self.iri, self.inverse)

    def display(self, label: str | None = None) -> str:
        base = label if label is not None else local_name(self.iri)
        return base + INVERSE_MARKER if self.inverse else base


@dataclass(frozen=True)
class Triple:
    subject: str
    predicate: str
    object: Term

    def __post_init__(self):
        if isinstance(self.subject, Literal):
            raise ValidationError("triple subject must not be a literal")
        if not is_iri(self.predicate):
            raise ValidationError("triple predicate must be an IRI")


_KB_ID = re.compile(r"^[a-z0-9_-]+$")


@dataclass
class KBDescriptor:
    """One configured knowledge base: either a SPARQL endpoint or a local dump."""

    id: str
    name: str
    endpoint: str | None = None
    dump: str | Path | None = None
    prefixes: dict[str, str] = field(default_factory=dict)
    timeout: float = 30.0
    page_size: int = 1000

    def __post_init__(self):
        if not _KB_ID.match(self.id or ""):
            raise ValidationError(f"bad KB id {self.id!r}: must match [a-z0-9_-]+")
        if (self.endpoint is None) == (self.dump is None):
            raise ValidationError(f"KB {self.id}: exactly one of endpoint/dump must be set")
        if self.endpoint is not None and not re.match(r"^https?://", self.endpoint):
            raise ValidationError(f"KB {self.id}: endpoint must be an absolute HTTP(S) URL")
        if self.timeout <= 0:
            raise ValidationError(f"KB {self.id}: timeout must be > 0")
        if self.page_size <= 0:
            raise ValidationError(f"KB {self.id}: page_size must be > 0")


# --- N-Triples parsing ------------------------------------------------------

_IRIREF = r'<([^\x00-\x20<>"{}|^`\\]*)>'
_BNODE = r"(_:[A-Za-z0-9][A-Za-z0-9._\-]*)"
_STRING = r'"((?:[^"\\\n\r]|\\.)*)"'
_LANG = r"@([A-Za-z]+(?:-[A-Za-z0-9]+)*)"

_TRIPLE_LINE = re.compile(
    rf"^(?:{_IRIREF}|{_BNODE})\s+{_IRIREF}\s+"
    rf"(?:{_IRIREF}|{_BNODE}|{_STRING}(?:\^\^{_IRIREF}|{_LANG})?)\s*\.\s*(?:#.*)?$"
)

_ECHAR = {"t": "\t", "b": "\b", "n": "\n", "r": "\r", "f": "\f", '"': '"', "'": "'", "\\": "\\"}


def _unescape(raw: str, where: str) -> str:
    if "\\" not in raw:
        return raw
    out: list[str] = []
    i = 0
    n = len(raw)
    while i < n:
        ch = raw[i]
        if ch != "\\":
            out.append(ch)
            i += 1
            continue
        if i + 1 >= n:
            raise ParseError(f"dangling escape in {where}")
        esc = raw[i + 1]
        if esc == "u" or esc == "U":
            width = 4 if esc == "u" else 8
            hexpart = raw[i + 2 : i + 2 + width]
            if len(hexpart) != width or not re.fullmatch(r"[0-9A-Fa-f]+", hexpart):
                raise ParseError(f"bad \\{esc} escape in {where}")
            out.append(chr(int(hexpart, 16)))
            i += 2 + width
        elif esc in _ECHAR:
            out.append(_ECHAR[esc])
            i += 2
        else:
            raise ParseError(f"unknown escape \\{esc} in {where}")
    return "".join(out)


def parse_ntriples_line(line: str) -> Triple | None:
    """Parse one N-Triples line; returns None for blank and comment lines."""
    stripped = line.strip()
    if not stripped or stripped.startswith("#"):
        return None
    match = _TRIPLE_LINE.match(stripped)
    if not match:
        raise ParseError(f"not a valid N-Triples statement: {stripped[:80]!r}")
    s_iri, s_bnode, p_iri, o_iri, o_bnode, o_str, o_dt, o_lang = match.groups()

    subject = _unescape(s_iri, "subject IRI") if s_iri is not None else s_bnode
    if s_iri is not None and not is_absolute_iri(subject):
        raise ParseError(f"subject is not an absolute IRI: {subject!r}")
    predicate = _unescape(p_iri, "predicate IRI")
    if not is_absolute_iri(predicate):
        raise ParseError(f"predicate is not an absolute IRI: {predicate!r}")

    obj: Term
    if o_iri is not None:
        obj = _unescape(o_iri, "object IRI")
        if not is_absolute_iri(obj):
            raise ParseError(f"object is not an absolute IRI: {obj!r}")
    elif o_bnode is not None:
        obj = o_bnode
    else:
        datatype = _unescape(o_dt, "datatype IRI") if o_dt is not None else None
        obj = Literal(_unescape(o_str, "literal"), datatype=datatype, lang=o_lang)
    return Triple(subject, predicate, obj)


class TripleStore:
    """Immutable in-memory triple set with subject / predicate / (predicate, object) indexes.

    Safe for any number of concurrent readers once constructed; nothing here
    mutates after __init__.
    """

    def __init__(self, triples, line_count: int = 0, skipped_count: int = 0):
        # dict.fromkeys both de-duplicates and preserves first-seen order
        self.triples: tuple[Triple, ...] = tuple(dict.fromkeys(triples))
        self.line_count = line_count
        self.skipped_count = skipped_count

        by_subject: dict[str, list[Triple]] = {}
        by_predicate: dict[str, list[Triple]] = {}
        by_predicate_object: dict[tuple[str, Term], list[Triple]] = {}
        labels: dict[str, str] = {}
        for t in self.triples:
            by_subject.setdefault(t.subject, []).append(t)
            by_predicate.setdefault(t.predicate, []).append(t)
            by_predicate_object.setdefault((t.predicate, t.object), []).append(t)
            if t.predicate == RDFS_LABEL and isinstance(t.object, Literal):
                labels.setdefault(t.subject, t.object.lexical)
        self.by_subject = {k: tuple(v) for k, v in by_subject.items()}
        self.by_predicate = {k: tuple(v) for k, v in by_predicate.items()}
        self.by_predicate_object = {k: tuple(v) for k, v in by_predicate_object.items()}
        self.labels = labels

    def __len__(self) -> int:
        return len(self.triples)

    def predicates(self) -> list[str]:
        return sorted(self.by_predicate)

    def label(self, iri: str) -> str:
        """rdfs:label of an entity, falling back to the IRI local name."""
        got = self.labels.get(iri)
        return got if got is not None else local_name(iri)

    def facts(self, pred: PredicateRef) -> list[tuple[str, Term]]:
        """Direction-aware (subject, value) pairs for one directed predicate.

        For an inverse ref the original objects act as subjects, so only
        triples whose object is an IRI contribute.
        """
        triples = self.by_predicate.get(pred.iri, ())
        if not pred.inverse:
            return [(t.subject, t.object) for t in triples]
        return [(t.object, t.subject) for t in triples if is_iri(t.object)]

    def spo(self, subject: str, pred: PredicateRef) -> list[Term]:
        """Values of one SPO query, deterministically ordered."""
        if not pred.inverse:
            found = [t.object for t in self.by_subject.get(subject, ()) if t.predicate == pred.iri]
        else:
            found = [t.subject for t in self.by_predicate_object.get((pred.iri, subject), ())]
        return sorted(found, key=term_key)

    def is_populated(self, subject: str, pred: PredicateRef) -> bool:
        if not pred.inverse:
            return any(t.predicate == pred.iri for t in self.by_subject.get(subject, ()))
        return bool(self.by_predicate_object.get((pred.iri, subject)))

    def cooccurring_subjects(self, a: PredicateRef, b: PredicateRef) -> list[str]:
        """Subjects holding at least one fact for each of the two directed predicates."""
        first = {s for s, _ in self.facts(a)}
        second = {s for s, _ in self.facts(b)}
        return sorted(first & second)

    def entity_suggest(self, prefix: str, limit: int) -> list[tuple[str, str]]:
        """Entities whose label starts with the prefix, case-insensitive.

        Ordered by label length, then label, then IRI, so repeated calls are
        identical.
        """
        needle = prefix.strip().lower()
        if not needle:
            raise ValidationError("entity prefix must be non-empty")
        if limit <= 0:
            raise ValidationError("limit must be positive")
        hits = [(iri, lab) for iri, lab in self.labels.items() if lab.lower().startswith(needle)]
        hits.sort(key=lambda pair: (len(pair[1]), pair[1], pair[0]))
        return hits[:limit]


def load_ntriples(path: str | Path, strict: bool = False) -> TripleStore:
    """Load a UTF-8 N-Triples file into a TripleStore.

    Lenient by default: malformed lines are skipped and counted on the store
    (skipped_count). strict=True raises ParseError at the first bad line.
    """
    text = Path(path).read_text(encoding="utf-8")
    triples: list[Triple] = []
    skipped = 0
    line_count = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line_count = lineno
        try:
            triple = parse_ntriples_line(raw)
        except ParseError as exc:
            if strict:
                raise ParseError(f"{path}:{lineno}: {exc}") from exc
            skipped += 1
            continue
        if triple is not None:
            triples.append(triple)
    return TripleStore(triples, line_count=line_count, skipped_count=skipped)
