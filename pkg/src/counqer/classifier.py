"""Set-predicate classification: counting, enumerating, or neither.

The default model is a transparent rule set over the profile statistics; a
trained multinomial logistic regression is available as the supervised path.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import ParseError, ValidationError
from .kb import PredicateRef, is_absolute_iri, local_name
from .profiler import PredicateProfile

COUNTING = "COUNTING"
ENUMERATING = "ENUMERATING"
NONE = "NONE"
CLASSES = (COUNTING, ENUMERATING, NONE)

COUNT_TOKENS = frozenset({"number", "num", "count", "total", "size", "amount", "quantity"})

# Rule-model defaults; kept configurable through classify() keyword arguments.
TYPE_PURITY_THRESHOLD = 0.95
MEDIAN_CAP = 1000.0

_CAMEL_1 = re.compile(r"([a-z0-9])([A-Z])")
_CAMEL_2 = re.compile(r"([A-Z]+)([A-Z][a-z])")
_SEPARATORS = re.compile(r"[_\-\s]+")


def tokenize(label: str) -> list[str]:
    """Lowercased tokens of a predicate label or IRI.

    Strips the namespace of IRIs, then splits on camelCase boundaries,
    underscores, hyphens, and spaces: covers both numberOfChildren and
    "number of children".
    """
    text = local_name(label) if is_absolute_iri(label) else label
    text = _CAMEL_2.sub(r"\1 \2", text)
    text = _CAMEL_1.sub(r"\1 \2", text)
    return [tok.lower() for tok in _SEPARATORS.split(text) if tok]


FEATURE_NAMES = (
    "has_count_token",
    "integer_fraction",
    "entity_fraction",
    "log_median",
    "mean_per_subject",
    "is_inverse",
)


@dataclass(frozen=True)
class FeatureVector:
    has_count_token: float
    integer_fraction: float
    entity_fraction: float
    log_median: float
    mean_per_subject: float
    is_inverse: float

    def as_array(self) -> np.ndarray:
        return np.array(
            [
                self.has_count_token,
                self.integer_fraction,
                self.entity_fraction,
                self.log_median,
                self.mean_per_subject,
                self.is_inverse,
            ],
            dtype=float,
        )


def featurize(pred: PredicateRef, profile: PredicateProfile, label: str | None = None) -> FeatureVector:
    """Deterministic feature vector for one directed predicate.

    The label defaults to the IRI local name; pass the KB label for opaque
    IRIs such as Wikidata P-ids.
    """
    text = label if label is not None else local_name(pred.iri)
    tokens = tokenize(text)
    median = profile.median_value
    return FeatureVector(
        has_count_token=1.0 if any(tok in COUNT_TOKENS for tok in tokens) else 0.0,
        integer_fraction=profile.integer_fraction,
        entity_fraction=profile.entity_fraction,
        log_median=math.log10(max(median, 0.0) + 1.0) if median is not None else 0.0,
        mean_per_subject=profile.mean_per_subject,
        is_inverse=1.0 if pred.inverse else 0.0,
    )


@dataclass(frozen=True)
class ClassifierModel:
    """Either the rule model or trained per-class linear weights."""

    kind: str  # RULES | TRAINED
    weights: np.ndarray | None = None  # shape (3 classes, 6 features)
    bias: np.ndarray | None = None  # shape (3,)

    def __post_init__(self):
        if self.kind not in ("RULES", "TRAINED"):
            raise ValidationError(f"unknown model kind {self.kind!r}")
        if self.kind == "TRAINED":
            if self.weights is None or self.bias is None:
                raise ValidationError("TRAINED model needs weights and bias")
            if not (np.all(np.isfinite(self.weights)) and np.all(np.isfinite(self.bias))):
                raise ValidationError("TRAINED weights must be finite")


RULES_MODEL = ClassifierModel("RULES")


def _softmax(scores: np.ndarray) -> np.ndarray:
    shifted = scores - scores.max()
    exp = np.exp(shifted)
    return exp / exp.sum()


def classify(
    pred: PredicateRef,
    profile: PredicateProfile,
    model: ClassifierModel = RULES_MODEL,
    label: str | None = None,
    type_purity: float = TYPE_PURITY_THRESHOLD,
    median_cap: float = MEDIAN_CAP,
) -> tuple[str, float]:
    """Classify one directed predicate; returns (variant or NONE, confidence)."""
    features = featurize(pred, profile, label=label)
    if model.kind == "RULES":
        if profile.entity_fraction >= type_purity:
            return ENUMERATING, min(1.0, 0.5 + 0.5 * profile.entity_fraction)
        median_ok = profile.median_value is not None and profile.median_value <= median_cap
        if profile.integer_fraction >= type_purity and (features.has_count_token == 1.0 or median_ok):
            return COUNTING, min(1.0, 0.5 + 0.25 + 0.25 * features.has_count_token)
        return NONE, 0.0
    probs = _softmax(model.weights @ features.as_array() + model.bias)
    index = int(np.argmax(probs))
    return CLASSES[index], float(probs[index])


def loss_and_gradient(
    weights: np.ndarray, bias: np.ndarray, features: np.ndarray, onehot: np.ndarray
) -> tuple[float, np.ndarray, np.ndarray]:
    """Mean cross-entropy of the softmax classifier and its analytic gradient."""
    scores = features @ weights.T + bias
    scores = scores - scores.max(axis=1, keepdims=True)
    exp = np.exp(scores)
    probs = exp / exp.sum(axis=1, keepdims=True)
    n = features.shape[0]
    loss = float(-np.log(np.clip((probs * onehot).sum(axis=1), 1e-300, None)).mean())
    delta = (probs - onehot) / n
    return loss, delta.T @ features, delta.sum(axis=0)


def train(
    examples,
    epochs: int = 200,
    learning_rate: float = 0.1,
) -> ClassifierModel:
    """Fit multinomial logistic regression by full-batch gradient descent.

    Weights start at zero and examples are visited in the given order, so the
    result is deterministic. Requires at least one example per class.
    """
    examples = list(examples)
    seen = {lab for _, lab in examples}
    missing = [cls for cls in CLASSES if cls not in seen]
    if missing:
        raise ValidationError(f"training set is missing class(es): {', '.join(missing)}")
    features = np.array([fv.as_array() for fv, _ in examples])
    onehot = np.zeros((len(examples), len(CLASSES)))
    for row, (_, lab) in enumerate(examples):
        onehot[row, CLASSES.index(lab)] = 1.0
    weights = np.zeros((len(CLASSES), len(FEATURE_NAMES)))
    bias = np.zeros(len(CLASSES))
    for _ in range(epochs):
        _, grad_w, grad_b = loss_and_gradient(weights, bias, features, onehot)
        weights = weights - learning_rate * grad_w
        bias = bias - learning_rate * grad_b
    return ClassifierModel("TRAINED", weights, bias)


# --- persistence ------------------------------------------------------------

MODEL_HEADER = ("class", "bias") + FEATURE_NAMES


def save_model(path: str | Path, model: ClassifierModel) -> None:
    if model.kind == "RULES":
        Path(path).write_text("RULES\n", encoding="utf-8")
        return
    lines = ["\t".join(MODEL_HEADER)]
    for index, cls in enumerate(CLASSES):
        cells = [cls, f"{model.bias[index]:.12g}"]
        cells.extend(f"{w:.12g}" for w in model.weights[index])
        lines.append("\t".join(cells))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_model(path: str | Path) -> ClassifierModel:
    text = Path(path).read_text(encoding="utf-8")
    if text.strip() == "RULES":
        return RULES_MODEL
    lines = text.splitlines()
    if not lines or tuple(lines[0].split("\t")) != MODEL_HEADER:
        raise ParseError(f"{path}: missing or wrong model header")
    weights = np.zeros((len(CLASSES), len(FEATURE_NAMES)))
    bias = np.zeros(len(CLASSES))
    seen = set()
    for lineno, line in enumerate(lines[1:], start=2):
        if not line:
            continue
        cols = line.split("\t")
        if len(cols) != len(MODEL_HEADER) or cols[0] not in CLASSES:
            raise ParseError(f"{path}:{lineno}: bad model row")
        index = CLASSES.index(cols[0])
        seen.add(cols[0])
        try:
            bias[index] = float(cols[1])
            weights[index] = [float(c) for c in cols[2:]]
        except ValueError as exc:
            raise ParseError(f"{path}:{lineno}: {exc}") from exc
    if seen != set(CLASSES):
        raise ParseError(f"{path}: model rows missing for {set(CLASSES) - seen}")
    return ClassifierModel("TRAINED", weights, bias)


# --- the set-predicate catalog ----------------------------------------------


@dataclass(frozen=True)
class SetPredicate:
    """A predicate admitted to the catalog: its variant, confidence, and profile."""

    pred: PredicateRef
    variant: str
    confidence: float
    profile: PredicateProfile
    label: str | None = None

    def __post_init__(self):
        if self.variant not in (COUNTING, ENUMERATING):
            raise ValidationError(f"bad variant {self.variant!r}")
        if self.variant == COUNTING and self.profile.integer_fraction < TYPE_PURITY_THRESHOLD:
            raise ValidationError(
                f"{self.pred.display()}: COUNTING requires integer_fraction >= {TYPE_PURITY_THRESHOLD}"
            )
        if self.variant == ENUMERATING and self.profile.entity_fraction < TYPE_PURITY_THRESHOLD:
            raise ValidationError(
                f"{self.pred.display()}: ENUMERATING requires entity_fraction >= {TYPE_PURITY_THRESHOLD}"
            )

    def display_label(self) -> str:
        return self.pred.display(self.label)


CATALOG_HEADER = (
    "iri",
    "inverse",
    "label",
    "variant",
    "confidence",
    "subject_count",
    "fact_count",
    "mean_value",
    "median_value",
    "mean_per_subject",
    "integer_fraction",
    "entity_fraction",
)


def _clean(text: str) -> str:
    return text.replace("\t", " ").replace("\n", " ")


def write_catalog(path: str | Path, entries: list[SetPredicate]) -> None:
    lines = ["\t".join(CATALOG_HEADER)]
    for sp in entries:
        p = sp.profile
        lines.append(
            "\t".join(
                (
                    sp.pred.iri,
                    "true" if sp.pred.inverse else "false",
                    _clean(sp.label if sp.label is not None else local_name(sp.pred.iri)),
                    sp.variant,
                    f"{sp.confidence:.6f}",
                    str(p.subject_count),
                    str(p.fact_count),
                    "" if p.mean_value is None else f"{p.mean_value:.6f}",
                    "" if p.median_value is None else f"{p.median_value:.6f}",
                    f"{p.mean_per_subject:.6f}",
                    f"{p.integer_fraction:.6f}",
                    f"{p.entity_fraction:.6f}",
                )
            )
        )
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_catalog(path: str | Path) -> list[SetPredicate]:
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    if not lines or tuple(lines[0].split("\t")) != CATALOG_HEADER:
        raise ParseError(f"{path}: missing or wrong catalog header")
    out = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line:
            continue
        cols = line.split("\t")
        if len(cols) != len(CATALOG_HEADER):
            raise ParseError(f"{path}:{lineno}: expected {len(CATALOG_HEADER)} columns")
        try:
            inverse = cols[1] == "true"
            if cols[1] not in ("true", "false"):
                raise ValueError(f"bad inverse flag {cols[1]!r}")
            pred = PredicateRef(cols[0], inverse=inverse)
            profile = PredicateProfile(
                pred=pred,
                subject_count=int(cols[5]),
                fact_count=int(cols[6]),
                mean_value=float(cols[7]) if cols[7] else None,
                median_value=float(cols[8]) if cols[8] else None,
                mean_per_subject=float(cols[9]),
                integer_fraction=float(cols[10]),
                entity_fraction=float(cols[11]),
            )
            out.append(SetPredicate(pred, cols[3], float(cols[4]), profile, label=cols[2]))
        except (ValueError, ValidationError) as exc:
            raise ParseError(f"{path}:{lineno}: {exc}") from exc
    return out
