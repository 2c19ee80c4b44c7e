"""Batch entry points for the offline pipeline and the query service.

Exit codes: 0 success, 1 validation error (bad flags, bad ids, malformed
rows), 2 I/O or transport failure. Logs go to stderr; data goes to files.
"""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .aligner import inject_manual, rank_alignments, read_alignments, write_alignments
from .classifier import (
    COUNTING,
    ENUMERATING,
    NONE,
    RULES_MODEL,
    SetPredicate,
    classify,
    load_model,
    read_catalog,
    write_catalog,
)
from .config import AppConfig, KBSetup, load_config
from .connect import RemoteConnection, connect
from .errors import CounqerError, NotFoundError, ParseError, TransportError, ValidationError
from .kb import PredicateRef, Triple, TripleStore, load_ntriples
from .orchestrator import verdict_for
from .profiler import count_value, profile_predicate, enumerate_candidates, write_profiles, read_profiles
from .queries import build_dump_query
from .sparql import sparql_select
from . import server

log = logging.getLogger("counqer")


class _ArgumentParser(argparse.ArgumentParser):
    """argparse that exits 1 on usage errors instead of 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(1)


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="counqer", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", required=True, help="path to the KB configuration file")

    p = sub.add_parser("profile", help="compute per-predicate statistics for one KB")
    common(p)
    p.add_argument("--kb", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--min-subjects", type=int, default=2)

    p = sub.add_parser("classify", help="turn profiles into a set-predicate catalog")
    common(p)
    p.add_argument("--kb", required=True)
    p.add_argument("--in", dest="infile", required=True, help="profiles TSV")
    p.add_argument("--out", required=True)
    p.add_argument("--model", help="trained model TSV; defaults to the rule model")

    p = sub.add_parser("align", help="rank counting-enumerating alignments for one KB")
    common(p)
    p.add_argument("--kb", required=True)
    p.add_argument("--in", dest="infile", required=True, help="catalog TSV")
    p.add_argument("--out", required=True)
    p.add_argument("--manual", help="manual alignments TSV to merge in")
    p.add_argument("--min-score", type=float, default=0.05)

    p = sub.add_parser("check", help="consistency report over all aligned pairs")
    common(p)
    p.add_argument("--kb", required=True)
    p.add_argument("--in", dest="infile", required=True, help="alignments TSV")
    p.add_argument("--out", required=True)

    p = sub.add_parser("serve", help="run the HTTP query service")
    common(p)
    p.add_argument("--port", type=int, help="override the configured port; 0 binds an ephemeral one")
    return parser


def _materialize(setup: KBSetup) -> TripleStore:
    """A store for offline work: the dump, or a full download of a remote KB."""
    descriptor = setup.descriptor
    if descriptor.dump is not None:
        store = load_ntriples(descriptor.dump)
        log.info(
            "%s: %d triples from %d lines (%d skipped)",
            descriptor.id, len(store), store.line_count, store.skipped_count,
        )
        return store
    rows = sparql_select(descriptor, build_dump_query())
    triples = []
    for row in rows:
        s, p, o = row.get("s"), row.get("p"), row.get("o")
        if isinstance(s, str) and isinstance(p, str) and o is not None:
            triples.append(Triple(s, p, o))
    return TripleStore(triples)


def run_profile(config: AppConfig, kb_id: str, out_path: str, min_subjects: int = 2) -> None:
    if min_subjects < 1:
        raise ValidationError("--min-subjects must be >= 1")
    store = _materialize(config.kb(kb_id))
    profiles = [profile_predicate(store, p) for p in enumerate_candidates(store, min_subjects)]
    write_profiles(out_path, profiles)
    log.info("profile: wrote %d rows to %s", len(profiles), out_path)


def run_classify(
    config: AppConfig, kb_id: str, profiles_in: str, out_path: str, model_path: str | None = None
) -> None:
    setup = config.kb(kb_id)
    profiles = read_profiles(profiles_in)
    model = load_model(model_path) if model_path else RULES_MODEL
    if setup.descriptor.dump is not None:
        labeller = load_ntriples(setup.descriptor.dump).label
    else:
        labeller = RemoteConnection(setup.descriptor).label
    entries = []
    for profile in profiles:
        label = labeller(profile.pred.iri)
        variant, confidence = classify(profile.pred, profile, model, label=label)
        if variant == NONE:
            continue
        try:
            entries.append(SetPredicate(profile.pred, variant, confidence, profile, label))
        except ValidationError as exc:
            # a trained model may predict against the type-purity invariant
            log.warning("classify: dropping %s: %s", profile.pred.display(), exc)
    write_catalog(out_path, entries)
    log.info("classify: wrote %d catalog rows to %s", len(entries), out_path)


MANUAL_HEADER = ("counting_iri", "counting_inverse", "enumerating_iri", "enumerating_inverse", "score")


def read_manual(path: str | Path) -> list[tuple[PredicateRef, PredicateRef, float | None]]:
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    if not lines or tuple(lines[0].split("\t")) != MANUAL_HEADER:
        raise ParseError(f"{path}: missing or wrong manual-alignments header")
    out = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line:
            continue
        cols = line.split("\t")
        if len(cols) != len(MANUAL_HEADER):
            raise ParseError(f"{path}:{lineno}: expected {len(MANUAL_HEADER)} columns")
        try:
            out.append(
                (
                    PredicateRef(cols[0], inverse=cols[1] == "true"),
                    PredicateRef(cols[2], inverse=cols[3] == "true"),
                    float(cols[4]) if cols[4] else None,
                )
            )
        except ValueError as exc:
            raise ParseError(f"{path}:{lineno}: {exc}") from exc
    return out


def run_align(
    config: AppConfig,
    kb_id: str,
    catalog_in: str,
    out_path: str,
    manual_in: str | None = None,
    min_score: float = 0.05,
) -> None:
    setup = config.kb(kb_id)
    catalog = read_catalog(catalog_in)
    manual = read_manual(manual_in) if manual_in else []
    store = _materialize(setup)
    counting = [sp for sp in catalog if sp.variant == COUNTING]
    enumerating = [sp for sp in catalog if sp.variant == ENUMERATING]
    alignments = rank_alignments(store, counting, enumerating, min_score=min_score)
    alignments = inject_manual(alignments, manual)
    write_alignments(out_path, kb_id, alignments)
    log.info("align: wrote %d alignments to %s", len(alignments), out_path)


CHECK_HEADER = (
    "subject",
    "counting_iri",
    "counting_inverse",
    "enumerating_iri",
    "enumerating_inverse",
    "v",
    "n",
    "verdict",
)


def run_check(config: AppConfig, kb_id: str, alignments_in: str, out_path: str) -> None:
    setup = config.kb(kb_id)
    rows = read_alignments(alignments_in)
    store = _materialize(setup)
    report_rows = []
    for _, alignment in rows:
        counting_subjects = {s for s, _ in store.facts(alignment.counting)}
        enumerating_subjects = {s for s, _ in store.facts(alignment.enumerating)}
        for subject in sorted(counting_subjects | enumerating_subjects):
            values = [
                v
                for v in (count_value(t) for t in store.spo(subject, alignment.counting))
                if v is not None
            ]
            v = max(values) if values else None
            n = len(store.spo(subject, alignment.enumerating))
            report_rows.append(
                (
                    subject,
                    alignment.counting.iri,
                    "true" if alignment.counting.inverse else "false",
                    alignment.enumerating.iri,
                    "true" if alignment.enumerating.inverse else "false",
                    "" if v is None else str(v),
                    str(n),
                    verdict_for(v, n),
                )
            )
    report_rows.sort()
    lines = ["\t".join(CHECK_HEADER)] + ["\t".join(row) for row in report_rows]
    Path(out_path).write_text("\n".join(lines) + "\n", encoding="utf-8")
    log.info("check: wrote %d verdict rows to %s", len(report_rows), out_path)


def run_serve(config: AppConfig, port: int | None = None) -> None:
    httpd = server.build_server(config, port=port)
    bound = httpd.server_address[1]
    if port == 0:
        print(bound, flush=True)  # callers need the ephemeral port
    log.info("listening on http://%s:%d/", httpd.server_address[0], bound)
    try:
        httpd.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        httpd.server_close()


def main(argv=None) -> int:
    logging.basicConfig(stream=sys.stderr, level=logging.INFO, format="%(levelname)s %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = load_config(args.config)
        if args.command == "profile":
            run_profile(config, args.kb, args.out, min_subjects=args.min_subjects)
        elif args.command == "classify":
            run_classify(config, args.kb, args.infile, args.out, model_path=args.model)
        elif args.command == "align":
            run_align(
                config, args.kb, args.infile, args.out, manual_in=args.manual, min_score=args.min_score
            )
        elif args.command == "check":
            run_check(config, args.kb, args.infile, args.out)
        elif args.command == "serve":
            run_serve(config, port=args.port)
        return 0
    except TransportError as exc:
        log.error("transport failure: %s", exc)
        return 2
    except (ValidationError, NotFoundError) as exc:
        log.error("%s", exc)
        return 1
    except CounqerError as exc:
        log.error("%s", exc)
        return 2
    except (OSError, UnicodeDecodeError) as exc:
        log.error("I/O failure: %s", exc)
        return 2


def entry_point() -> None:
    raise SystemExit(main())
