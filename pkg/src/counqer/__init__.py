"""counqer: discover, classify, align and serve set predicates in RDF knowledge bases.

Set predicates relate an entity to a set of entities either as an integer
count (counting predicates such as numberOfChildren) or as enumerated members
(enumerating predicates such as child, possibly read inversely). This package
profiles predicates over a KB, classifies them, scores counting-enumerating
alignments, and serves SPO queries whose answers are enriched with the
top-ranked aligned facts and consistency verdicts.
"""
from .aligner import (
    Alignment,
    automatic_alignment,
    inject_manual,
    lexical_score,
    manual_alignment,
    rank_alignments,
    score_alignment,
    statistical_score,
)
from .classifier import (
    COUNTING,
    ENUMERATING,
    NONE,
    ClassifierModel,
    FeatureVector,
    RULES_MODEL,
    SetPredicate,
    classify,
    featurize,
    train,
)
from .config import AppConfig, load_config
from .errors import (
    CounqerError,
    EndpointTimeoutError,
    NotFoundError,
    ParseError,
    ProtocolError,
    TransportError,
    ValidationError,
)
from .kb import (
    KBDescriptor,
    Literal,
    PredicateRef,
    Triple,
    TripleStore,
    load_ntriples,
)
from .orchestrator import (
    ConsistencyReport,
    Orchestrator,
    QueryRow,
    SPOQuery,
    verdict_for,
)
from .profiler import PredicateProfile, enumerate_candidates, profile_all, profile_predicate
from .queries import build_cooccurrence_query, build_spo_query
from .sparql import sparql_select

__version__ = "0.1.0"

__all__ = [
    "Alignment",
    "AppConfig",
    "ClassifierModel",
    "ConsistencyReport",
    "CounqerError",
    "COUNTING",
    "ENUMERATING",
    "EndpointTimeoutError",
    "FeatureVector",
    "KBDescriptor",
    "Literal",
    "NONE",
    "NotFoundError",
    "Orchestrator",
    "ParseError",
    "PredicateProfile",
    "PredicateRef",
    "ProtocolError",
    "QueryRow",
    "RULES_MODEL",
    "SPOQuery",
    "SetPredicate",
    "TransportError",
    "Triple",
    "TripleStore",
    "ValidationError",
    "automatic_alignment",
    "build_cooccurrence_query",
    "build_spo_query",
    "classify",
    "enumerate_candidates",
    "featurize",
    "inject_manual",
    "lexical_score",
    "load_config",
    "load_ntriples",
    "manual_alignment",
    "profile_all",
    "profile_predicate",
    "rank_alignments",
    "score_alignment",
    "sparql_select",
    "statistical_score",
    "train",
    "verdict_for",
]
