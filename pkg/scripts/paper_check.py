"""Run all acceptance checks and optionally save a JSON report with timings.

    python3 scripts/paper_check.py --trials 100 --save report.json
"""

import argparse
import json
import time

from locoloc.checks import DEFAULT_SEED, DEFAULT_TRIALS, CheckConfig, run_all


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=lambda s: int(s, 0), default=DEFAULT_SEED)
    ap.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    ap.add_argument("--parallel", action="store_true")
    ap.add_argument("--save", help="write the report (with timings) to this path")
    args = ap.parse_args()

    cfg = CheckConfig(seed=args.seed, trials=args.trials, parallel=args.parallel)
    t0 = time.perf_counter()
    results = run_all(cfg, progress=lambda r: print(r.line(), flush=True))
    total = time.perf_counter() - t0
    ok = all(r.passed for r in results)
    print(f"{'all passed' if ok else 'FAILURES'} in {total:.1f}s")
    if args.save:
        with open(args.save, "w") as fh:
            json.dump({"seed": cfg.seed, "trials": cfg.trials, "total_seconds": round(total, 2),
                       "criteria": [r.to_json(timing=True) for r in results]}, fh, indent=2)
    raise SystemExit(0 if ok else 1)


if __name__ == "__main__":
    main()
