from pathlib import Path

import pytest

from counqer.kb import KBDescriptor, Literal, PredicateRef, Triple, TripleStore, load_ntriples
from counqer.orchestrator import Orchestrator

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

WD = "http://www.wikidata.org/entity/"
WDT = "http://www.wikidata.org/prop/direct/"
DBO = "http://dbpedia.org/ontology/"
DBP = "http://dbpedia.org/property/"
DBR = "http://dbpedia.org/resource/"
EX = "http://example.org/"
XSD_INT = "http://www.w3.org/2001/XMLSchema#integer"
RDFS_LABEL = "http://www.w3.org/2000/01/rdf-schema#label"


def integer(value: int) -> Literal:
    return Literal(str(value), datatype=XSD_INT)


@pytest.fixture(scope="session")
def wikidata_store() -> TripleStore:
    return load_ntriples(FIXTURES / "wikidata_truthy.nt")


@pytest.fixture(scope="session")
def raw_store() -> TripleStore:
    return load_ntriples(FIXTURES / "dbpedia_raw.nt")


@pytest.fixture(scope="session")
def mapped_store() -> TripleStore:
    return load_ntriples(FIXTURES / "dbpedia_mapped.nt")


@pytest.fixture(scope="session")
def seed_store() -> TripleStore:
    return load_ntriples(FIXTURES / "seed_kb.nt")


def seed_rows() -> list[tuple[PredicateRef, str, str]]:
    """(ref, label, class) rows of the shipped labeled seed set."""
    out = []
    for line in (FIXTURES / "seed_labels.tsv").read_text(encoding="utf-8").splitlines()[1:]:
        if not line:
            continue
        iri, inverse, label, cls = line.split("\t")
        out.append((PredicateRef(iri, inverse=inverse == "true"), label, cls))
    return out


def fixture_descriptor(kb_id: str, filename: str) -> KBDescriptor:
    return KBDescriptor(id=kb_id, name=kb_id, dump=FIXTURES / filename)


@pytest.fixture(scope="session")
def orchestrator() -> Orchestrator:
    """All three scenario KBs behind one serving layer, pipeline run at startup."""
    runtimes = [
        Orchestrator.build_runtime(fixture_descriptor("wikidata", "wikidata_truthy.nt")),
        Orchestrator.build_runtime(fixture_descriptor("dbpedia_mapped", "dbpedia_mapped.nt")),
        Orchestrator.build_runtime(fixture_descriptor("dbpedia_raw", "dbpedia_raw.nt")),
    ]
    return Orchestrator(runtimes)


def wide_enumeration_store(width: int = 1200) -> TripleStore:
    """A store whose one enumerating predicate has `width` objects on one subject."""
    triples = [Triple(EX + "hub", EX + "member", EX + f"m{i:04d}") for i in range(width)]
    triples.append(Triple(EX + "hub", RDFS_LABEL, Literal("Hub")))
    return TripleStore(triples)
