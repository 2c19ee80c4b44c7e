#!/usr/bin/env python3
"""Run the full offline pipeline (profile -> classify -> align -> check) for
every configured KB and print a short summary of what came out.

    python scripts/run_pipeline.py --config fixtures/counqer.conf --out out/

The resulting TSVs are exactly what `counqer serve` consumes via the
per-KB `catalog` and `alignments` config keys.
"""
import argparse
import sys
from collections import Counter
from pathlib import Path

from counqer.cli import run_align, run_check, run_classify, run_profile
from counqer.config import load_config


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--config", default="fixtures/counqer.conf")
    parser.add_argument("--out", default="out")
    parser.add_argument("--min-subjects", type=int, default=2)
    parser.add_argument("--min-score", type=float, default=0.05)
    args = parser.parse_args()

    config = load_config(args.config)
    out_root = Path(args.out)
    for setup in config.kbs:
        kb_id = setup.descriptor.id
        kb_dir = out_root / kb_id
        kb_dir.mkdir(parents=True, exist_ok=True)
        profiles = kb_dir / "profiles.tsv"
        catalog = kb_dir / "catalog.tsv"
        alignments = kb_dir / "alignments.tsv"
        report = kb_dir / "report.tsv"

        run_profile(config, kb_id, str(profiles), min_subjects=args.min_subjects)
        run_classify(config, kb_id, str(profiles), str(catalog))
        run_align(config, kb_id, str(catalog), str(alignments), min_score=args.min_score)
        run_check(config, kb_id, str(alignments), str(report))

        alignment_rows = alignments.read_text().splitlines()[1:]
        verdicts = Counter(row.split("\t")[-1] for row in report.read_text().splitlines()[1:])
        print(f"\n== {kb_id}: {len(alignment_rows)} alignment(s)")
        for row in alignment_rows[:5]:
            cols = row.split("\t")
            c = cols[1].rsplit("/", 1)[-1] + ("⁻¹" if cols[2] == "true" else "")
            e = cols[3].rsplit("/", 1)[-1] + ("⁻¹" if cols[4] == "true" else "")
            print(f"   {cols[5]}  {c} <-> {e}  [{cols[9]}]")
        print(f"   verdicts: {dict(verdicts)}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
