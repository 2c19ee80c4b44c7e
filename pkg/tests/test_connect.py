"""Remote-connection behaviour against the stub endpoint, and the serving
layer's caching / error-row handling on top of it."""
import pytest

from counqer.classifier import COUNTING, ENUMERATING, SetPredicate
from counqer.aligner import automatic_alignment
from counqer.connect import RemoteConnection, connect
from counqer.errors import TransportError
from counqer.kb import KBDescriptor, PredicateRef
from counqer.orchestrator import Orchestrator, SPOQuery
from counqer.profiler import PredicateProfile
from counqer.queries import build_cooccurrence_query, build_label_query, build_spo_query

from conftest import EX
from sparql_stub import StubSparql, lit, uri

XSD_INT = "http://www.w3.org/2001/XMLSchema#integer"


@pytest.fixture
def stub():
    server = StubSparql(variables=("o",))
    server.endpoint = server.start()
    yield server
    server.stop()


def remote(stub, page_size=1000) -> RemoteConnection:
    descriptor = KBDescriptor(
        id="remote", name="remote", endpoint=stub.endpoint, timeout=5.0, page_size=page_size
    )
    return RemoteConnection(descriptor)


def test_remote_spo_forward_and_inverse(stub):
    forward = build_spo_query(EX + "s", PredicateRef(EX + "p"))
    stub.exact[forward] = [{"o": uri(EX + "b")}, {"o": uri(EX + "a")}]
    inverse = build_spo_query(EX + "s", PredicateRef(EX + "p", inverse=True))
    stub.exact[inverse] = [{"s": uri(EX + "x")}]
    conn = remote(stub)
    assert conn.spo(EX + "s", PredicateRef(EX + "p")) == [EX + "a", EX + "b"]  # sorted
    assert conn.spo(EX + "s", PredicateRef(EX + "p", inverse=True)) == [EX + "x"]


def test_remote_is_populated_uses_limit_1(stub):
    query = build_spo_query(EX + "s", PredicateRef(EX + "p"))
    stub.exact[query] = [{"o": uri(EX + "a")}]
    conn = remote(stub)
    assert conn.is_populated(EX + "s", PredicateRef(EX + "p"))
    assert stub.queries[-1].endswith("LIMIT 1")
    assert not conn.is_populated(EX + "s", PredicateRef(EX + "q"))


def test_remote_label_lookup_with_cache(stub):
    stub.exact[build_label_query(EX + "e")] = [{"label": lit("An Entity")}]
    conn = remote(stub)
    assert conn.label(EX + "e") == "An Entity"
    assert conn.label(EX + "e") == "An Entity"
    assert len(stub.queries) == 1  # second hit served from the label cache
    assert conn.label(EX + "unlabeled") == "unlabeled"  # local-name fallback


def test_remote_cooccurring_subjects(stub):
    query = build_cooccurrence_query(PredicateRef(EX + "cnt"), PredicateRef(EX + "enum", inverse=True))
    stub.exact[query] = [{"x": uri(EX + "s2")}, {"x": uri(EX + "s1")}, {"x": uri(EX + "s2")}]
    conn = remote(stub)
    got = conn.cooccurring_subjects(PredicateRef(EX + "cnt"), PredicateRef(EX + "enum", inverse=True))
    assert got == [EX + "s1", EX + "s2"]


def test_connect_picks_transport(stub, tmp_path):
    dump = tmp_path / "d.nt"
    dump.write_text("<http://x/s> <http://x/p> <http://x/o> .\n")
    assert connect(KBDescriptor(id="a", name="a", dump=dump)).kind == "embedded"
    assert connect(KBDescriptor(id="b", name="b", endpoint=stub.endpoint)).kind == "remote"


# --- the serving layer over a remote KB ------------------------------------------


def remote_runtime(stub):
    counting = PredicateRef(EX + "cnt")
    enumerating = PredicateRef(EX + "members")
    profile_c = PredicateProfile(counting, 2, 2, 3.0, 3.0, 1.0, 1.0, 0.0)
    profile_e = PredicateProfile(enumerating, 2, 4, None, None, 2.0, 0.0, 1.0)
    catalog = [
        SetPredicate(counting, COUNTING, 1.0, profile_c, label="thing count"),
        SetPredicate(enumerating, ENUMERATING, 1.0, profile_e, label="things"),
    ]
    alignments = [automatic_alignment(counting, enumerating, 1.0, 0.5, 2)]
    descriptor = KBDescriptor(id="remote", name="remote", endpoint=stub.endpoint, timeout=5.0)
    return Orchestrator.build_runtime(descriptor, catalog, alignments)


def prime_stub_for_subject(stub, subject):
    stub.exact[build_spo_query(subject, PredicateRef(EX + "cnt"))] = [{"o": lit("3", XSD_INT)}]
    stub.exact[build_spo_query(subject, PredicateRef(EX + "members"))] = [
        {"o": uri(EX + "m1")},
        {"o": uri(EX + "m2")},
    ]
    stub.exact[build_label_query(EX + "m1")] = [{"label": lit("Member One")}]
    stub.exact[build_label_query(EX + "m2")] = []


def test_remote_answer_spo_with_cache(stub):
    prime_stub_for_subject(stub, EX + "s")
    orch = Orchestrator([remote_runtime(stub)], cache_ttl=300.0)
    main, related = orch.answer_spo(SPOQuery("remote", EX + "s", PredicateRef(EX + "cnt")))
    assert main.count_value == 3
    assert len(related) == 1
    assert related[0].total_cardinality == 2
    assert related[0].enumeration[0] == (EX + "m1", "Member One")
    assert related[0].enumeration[1] == (EX + "m2", "m2")
    first_count = len(stub.queries)
    main2, related2 = orch.answer_spo(SPOQuery("remote", EX + "s", PredicateRef(EX + "cnt")))
    assert main2.count_value == 3
    assert related2[0].total_cardinality == 2
    # row executions came from the TTL cache; only label lookups could add queries
    assert len(stub.queries) == first_count


def test_remote_cache_disabled_when_ttl_zero(stub):
    prime_stub_for_subject(stub, EX + "s")
    orch = Orchestrator([remote_runtime(stub)], cache_ttl=0.0)
    orch.answer_spo(SPOQuery("remote", EX + "s", PredicateRef(EX + "cnt")))
    first_count = len(stub.queries)
    orch.answer_spo(SPOQuery("remote", EX + "s", PredicateRef(EX + "cnt")))
    assert len(stub.queries) > first_count


def test_failed_related_row_degrades_to_error_row(stub, monkeypatch):
    prime_stub_for_subject(stub, EX + "s")
    runtime = remote_runtime(stub)
    orch = Orchestrator([runtime], cache_ttl=0.0)

    real_spo = runtime.connection.spo

    def flaky(subject, pred):
        if pred.iri == EX + "members":
            raise TransportError("endpoint exploded", status=502)
        return real_spo(subject, pred)

    monkeypatch.setattr(runtime.connection, "spo", flaky)
    main, related = orch.answer_spo(SPOQuery("remote", EX + "s", PredicateRef(EX + "cnt")))
    assert main.count_value == 3  # main row unaffected
    assert len(related) == 1
    assert related[0].error is not None
    assert related[0].total_cardinality == 0


def test_failed_main_row_raises_transport_error(stub, monkeypatch):
    runtime = remote_runtime(stub)
    orch = Orchestrator([runtime], cache_ttl=0.0)

    def broken(subject, pred):
        raise TransportError("endpoint exploded", status=503)

    monkeypatch.setattr(runtime.connection, "spo", broken)
    with pytest.raises(TransportError) as err:
        orch.answer_spo(SPOQuery("remote", EX + "s", PredicateRef(EX + "cnt")))
    assert "main row" in str(err.value)


def test_remote_entity_suggest_round_trip(stub):
    from counqer.queries import build_entity_suggest_query

    stub.exact[build_entity_suggest_query("cha", 5)] = [
        {"e": uri(EX + "chandler"), "label": lit("Chandler")},
        {"e": uri(EX + "chaplin"), "label": lit("Charlie Chaplin")},
    ]
    conn = remote(stub)
    assert conn.entity_suggest("Cha", 5) == [
        (EX + "chandler", "Chandler"),
        (EX + "chaplin", "Charlie Chaplin"),
    ]
