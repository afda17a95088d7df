#!/usr/bin/env python3
"""Run every registered experiment and print one status line per assertion.

Usage: python scripts/run_all_experiments.py [output_dir] [--parallel]
Exit status 0 iff every assertion of every experiment passes.
"""

import sys
import time
from pathlib import Path

from radialfs.experiments import REGISTRY, ExperimentConfig, run_experiment


def main(argv):
    args = [a for a in argv if not a.startswith("--")]
    outdir = Path(args[0]) if args else Path("out")
    options = {"parallel": "1"} if "--parallel" in argv else {}
    all_ok = True
    for name in sorted(REGISTRY):
        cfg = ExperimentConfig(name, output_dir=outdir / name, options=dict(options))
        t0 = time.time()
        result = run_experiment(cfg)
        for a in result.assertions:
            status = "pass" if a.passed else "FAIL"
            print(f"[{status}] {name}: {a.name} = {a.measured:.6g} "
                  f"({a.kind} {a.threshold:g}; {a.provenance})")
        print(f"         {name} finished in {time.time() - t0:.1f}s")
        all_ok &= result.passed
    print("ALL PASS" if all_ok else "FAILURES PRESENT")
    return 0 if all_ok else 1


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
