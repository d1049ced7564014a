#!/usr/bin/env python3
"""Run the randomized property suite and save every failing graph as a file.

    python3 scripts/run_check.py --seed 42 --cases 200 --out runs/seed42
"""

import argparse
import json
from pathlib import Path

from topograph.verify import GenConfig, run_suite


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--cases", type=int, default=200)
    ap.add_argument("--max-vertices", type=int, default=6)
    ap.add_argument("--max-edges", type=int, default=10)
    ap.add_argument("--partial", action="store_true")
    ap.add_argument("--omega", action="store_true")
    ap.add_argument("--groupoid-bound", type=int, default=2)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--out", type=Path, default=None, help="directory for report.txt, report.json and failing graphs")
    args = ap.parse_args()

    cfg = GenConfig(args.seed, args.max_vertices, args.max_edges, args.partial, args.omega)
    report = run_suite(cfg, args.cases, jobs=args.jobs, groupoid_bound=args.groupoid_bound)
    text = report.render()
    print(text.splitlines()[-1])
    if args.out:
        args.out.mkdir(parents=True, exist_ok=True)
        (args.out / "report.txt").write_text(text)
        (args.out / "report.json").write_text(json.dumps(report.to_json(), indent=2, ensure_ascii=False) + "\n")
        for case in report.cases:
            if not case.passed:
                (args.out / f"case{case.index:04d}.graph").write_text(case.graph)
    for case, check in report.failures():
        print(f"case {case.index}: {check.name}: {'; '.join(check.detail)}")
    raise SystemExit(0 if report.passed else 1)


if __name__ == "__main__":
    main()
