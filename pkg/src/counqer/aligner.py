"""Scoring and ranking of counting-enumerating predicate pairs.

An automatic score blends a lexical label metric with a statistical
co-occurrence metric, scaled into [0, 0.9) so that manually curated
alignments, which live in [0.9, 1.0], always rank above every automatic one.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

from .classifier import COUNT_TOKENS, COUNTING, ENUMERATING, SetPredicate, tokenize
from .errors import ParseError, ValidationError
from .kb import PredicateRef, TripleStore, local_name
from .profiler import count_value

AUTOMATIC = "AUTOMATIC"
MANUAL = "MANUAL"

DEFAULT_MIN_SCORE = 0.05
DEFAULT_MANUAL_SCORE = 0.95
MANUAL_RANGE = (0.9, 1.0)

_AUTOMATIC_SCALE = 0.9

STOP_TOKENS = frozenset({"of", "the", "has"})

_IRREGULAR_SINGULARS = {"children": "child", "people": "person", "men": "man", "women": "woman"}


def singularize(token: str) -> str:
    """Cheap singularization: irregular table, then -ies -> y, then drop trailing -s."""
    if token in _IRREGULAR_SINGULARS:
        return _IRREGULAR_SINGULARS[token]
    if token.endswith("ies"):
        return token[:-3] + "y"
    if token.endswith("s") and len(token) > 3:
        return token[:-1]
    return token


def _signature(label: str) -> set[str]:
    tokens = [t for t in tokenize(label) if t not in COUNT_TOKENS and t not in STOP_TOKENS]
    return {singularize(t) for t in tokens}


def lexical_score(counting_label: str, enumerating_label: str) -> float:
    """Jaccard similarity of the singularized, stop-listed token sets of both labels."""
    if not counting_label.strip() or not enumerating_label.strip():
        raise ValidationError("labels must be non-empty")
    left = _signature(counting_label)
    right = _signature(enumerating_label)
    if not left or not right:
        return 0.0
    return len(left & right) / len(left | right)


def statistical_score(
    store: TripleStore, counting: PredicateRef, enumerating: PredicateRef
) -> tuple[float, int]:
    """Value-vs-cardinality agreement over co-occurring subjects, times coverage.

    For each subject holding both predicates, the asserted count (maximum if
    several) is compared against the enumeration cardinality; coverage is the
    co-occurrence count over the rarer predicate's subject count.
    """
    counting_facts = store.facts(counting)
    enumerating_facts = store.facts(enumerating)
    if not any(count_value(obj) is not None for _, obj in counting_facts):
        raise ValidationError(f"{counting.display()} has no integer-valued facts")
    if not enumerating_facts:
        raise ValidationError(f"{enumerating.display()} has no facts")

    values_by_subject: dict[str, list[int]] = {}
    for subject, obj in counting_facts:
        values_by_subject.setdefault(subject, [])
        value = count_value(obj)
        if value is not None:
            values_by_subject[subject].append(value)
    cardinality_by_subject: dict[str, int] = {}
    for subject, _ in enumerating_facts:
        cardinality_by_subject[subject] = cardinality_by_subject.get(subject, 0) + 1

    shared = sorted(set(values_by_subject) & set(cardinality_by_subject))
    support = len(shared)
    if not shared:
        return 0.0, 0
    agreements = []
    for subject in shared:
        values = values_by_subject[subject]
        if not values:
            agreements.append(0.0)  # co-occurring but no parseable count
            continue
        v = max(values)
        n = cardinality_by_subject[subject]
        if v == 0 and n == 0:
            agreements.append(1.0)
        elif v == 0 or n == 0:
            agreements.append(0.0)
        else:
            agreements.append(min(v, n) / max(v, n))
    coverage = support / min(len(values_by_subject), len(cardinality_by_subject))
    return sum(agreements) / len(agreements) * coverage, support


@dataclass(frozen=True)
class Alignment:
    """A scored counting-enumerating pair. Build via automatic_alignment / manual_alignment."""

    counting: PredicateRef
    enumerating: PredicateRef
    score: float
    lexical: float | None
    statistical: float | None
    support: int | None
    provenance: str

    @property
    def pair(self) -> tuple[tuple[str, bool], tuple[str, bool]]:
        return (self.counting.key, self.enumerating.key)

    def partner_of(self, pred: PredicateRef) -> PredicateRef:
        return self.enumerating if pred.key == self.counting.key else self.counting


def automatic_alignment(
    counting: PredicateRef,
    enumerating: PredicateRef,
    lexical: float,
    statistical: float,
    support: int,
) -> Alignment:
    if not (0.0 <= lexical <= 1.0 and 0.0 <= statistical <= 1.0):
        raise ValidationError("component scores must lie in [0, 1]")
    score = _AUTOMATIC_SCALE * (0.5 * lexical + 0.5 * statistical)
    # a perfect 1.0/1.0 pair would land exactly on the manual boundary;
    # keep automatic scores strictly below it
    if score >= _AUTOMATIC_SCALE:
        score = math.nextafter(_AUTOMATIC_SCALE, 0.0)
    return Alignment(counting, enumerating, score, lexical, statistical, support, AUTOMATIC)


def manual_alignment(
    counting: PredicateRef, enumerating: PredicateRef, score: float | None = None
) -> Alignment:
    value = DEFAULT_MANUAL_SCORE if score is None else score
    if not (MANUAL_RANGE[0] <= value <= MANUAL_RANGE[1]):
        raise ValidationError(f"manual score {value} outside [{MANUAL_RANGE[0]}, {MANUAL_RANGE[1]}]")
    return Alignment(counting, enumerating, value, None, None, None, MANUAL)


def score_alignment(
    store: TripleStore, counting: SetPredicate, enumerating: SetPredicate
) -> Alignment:
    if counting.variant != COUNTING:
        raise ValidationError(f"{counting.pred.display()} is not a counting predicate")
    if enumerating.variant != ENUMERATING:
        raise ValidationError(f"{enumerating.pred.display()} is not an enumerating predicate")
    c_label = counting.label if counting.label is not None else store.label(counting.pred.iri)
    e_label = enumerating.label if enumerating.label is not None else store.label(enumerating.pred.iri)
    lex = lexical_score(c_label, e_label)
    stat, support = statistical_score(store, counting.pred, enumerating.pred)
    return automatic_alignment(counting.pred, enumerating.pred, lex, stat, support)


def sort_alignments(alignments) -> list[Alignment]:
    return sorted(
        alignments,
        key=lambda a: (
            -a.score,
            a.counting.iri,
            a.counting.inverse,
            a.enumerating.iri,
            a.enumerating.inverse,
        ),
    )


def rank_alignments(
    store: TripleStore,
    counting_set,
    enumerating_set,
    min_score: float = DEFAULT_MIN_SCORE,
) -> list[Alignment]:
    """Score every cross-variant pair and keep those at or above min_score."""
    kept = []
    for counting in counting_set:
        for enumerating in enumerating_set:
            alignment = score_alignment(store, counting, enumerating)
            if alignment.score >= min_score:
                kept.append(alignment)
    return sort_alignments(kept)


def inject_manual(auto, manual) -> list[Alignment]:
    """Merge curator-asserted pairs over the automatic table.

    manual is a sequence of (counting_ref, enumerating_ref, score-or-None);
    a manual entry replaces any automatic entry for the same pair.
    """
    merged: dict = {a.pair: a for a in auto}
    for counting, enumerating, score in manual:
        entry = manual_alignment(counting, enumerating, score)
        merged[entry.pair] = entry
    return sort_alignments(merged.values())


# --- TSV interchange --------------------------------------------------------

ALIGNMENT_HEADER = (
    "kb",
    "counting_iri",
    "counting_inverse",
    "enumerating_iri",
    "enumerating_inverse",
    "score",
    "lexical",
    "statistical",
    "support",
    "provenance",
)


def write_alignments(path: str | Path, kb_id: str, alignments) -> None:
    lines = ["\t".join(ALIGNMENT_HEADER)]
    for a in alignments:
        lines.append(
            "\t".join(
                (
                    kb_id,
                    a.counting.iri,
                    "true" if a.counting.inverse else "false",
                    a.enumerating.iri,
                    "true" if a.enumerating.inverse else "false",
                    f"{a.score:.6f}",
                    "" if a.lexical is None else f"{a.lexical:.6f}",
                    "" if a.statistical is None else f"{a.statistical:.6f}",
                    "" if a.support is None else str(a.support),
                    a.provenance,
                )
            )
        )
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_alignments(path: str | Path) -> list[tuple[str, Alignment]]:
    """Read an alignment table; returns (kb id, alignment) rows in file order."""
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    if not lines or tuple(lines[0].split("\t")) != ALIGNMENT_HEADER:
        raise ParseError(f"{path}: missing or wrong alignment header")
    out = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line:
            continue
        cols = line.split("\t")
        if len(cols) != len(ALIGNMENT_HEADER):
            raise ParseError(f"{path}:{lineno}: expected {len(ALIGNMENT_HEADER)} columns")
        if cols[9] not in (AUTOMATIC, MANUAL):
            raise ParseError(f"{path}:{lineno}: bad provenance {cols[9]!r}")
        try:
            alignment = Alignment(
                counting=PredicateRef(cols[1], inverse=cols[2] == "true"),
                enumerating=PredicateRef(cols[3], inverse=cols[4] == "true"),
                score=float(cols[5]),
                lexical=float(cols[6]) if cols[6] else None,
                statistical=float(cols[7]) if cols[7] else None,
                support=int(cols[8]) if cols[8] else None,
                provenance=cols[9],
            )
        except (ValueError, ValidationError) as exc:
            raise ParseError(f"{path}:{lineno}: {exc}") from exc
        out.append((cols[0], alignment))
    return out


def predicate_labels(alignment: Alignment, label_of) -> tuple[str, str]:
    """Display labels for both sides, using label_of(iri) with local-name fallback."""
    c_label = label_of(alignment.counting.iri) or local_name(alignment.counting.iri)
    e_label = label_of(alignment.enumerating.iri) or local_name(alignment.enumerating.iri)
    return alignment.counting.display(c_label), alignment.enumerating.display(e_label)
