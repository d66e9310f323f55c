"""Tabulate criterion sweeps over a range of field sizes.

    python3 scripts/sweep_table.py --n 2 3 4 6 8 --budget 100000 --workers 1
"""

import argparse
import time

from trinperm.sweep import SweepConfig, verify_theorem


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, nargs="+", default=[2, 3, 4, 5, 6])
    ap.add_argument("--budget", type=int, default=None, help="samples for sampled mode")
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    print(f"{'q':>6} {'mode':>8} {'checked':>10} {'pp':>6} {'rootless':>8} {'disagree':>8} {'sec':>7}")
    bad = 0
    for n in args.n:
        t0 = time.perf_counter()
        out = verify_theorem(SweepConfig(n, args.budget, args.workers, args.seed))
        checked = out["pairs"]["checked"] if "pairs" in out else (
            out["sufficiency"]["checked"] + out["necessity"]["checked"])
        print(f"{out['q']:>6} {out['mode']:>8} {checked:>10} {out['pp_count']:>6} "
              f"{out['rootless_count']:>8} {out['disagreements']:>8} {time.perf_counter() - t0:>7.1f}")
        bad += not out["ok"]
    return 2 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
