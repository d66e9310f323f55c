"""Replay the symbolic stages and print one line per stage plus any non-pass identities.

    python3 scripts/replay_summary.py [--stages e3zero,base_field] [--corpus-dir DIR]
"""

import argparse

from trinperm.proof import STAGES, Catalog, run_all


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--stages", default=",".join(STAGES))
    ap.add_argument("--corpus-dir", default=None)
    args = ap.parse_args(argv)
    cat = Catalog(args.corpus_dir, strict=False) if args.corpus_dir else None
    reports = run_all(args.stages.split(","), catalog=cat)
    for rep in reports:
        odd = [r for r in rep.results if r.status != "pass"]
        print(f"{rep.stage:<13} {'PASS' if rep.passed else 'FAIL'} {len(rep.results):>3} identities "
              f"{rep.wall_ms / 1000:>6.1f}s")
        for r in odd:
            print(f"    {r.status}: {r.id}  {r.witness}")
    return 0 if all(rep.passed for rep in reports) else 2


if __name__ == "__main__":
    raise SystemExit(main())
