"""Recompute the ideal-membership multipliers and freeze them into the corpus.

Each eliminated equation G (elim_*, e3zero_*) is written as
sum(M_F * equation_F) over the seven D/E/F equations; every nonzero M_F goes to
corpus/multipliers/<G>__<F>.txt. The manifest is rewritten afterwards.

    python3 scripts/freeze_multipliers.py [--corpus-dir DIR]
"""

import argparse
from pathlib import Path

from trinperm.proof.catalog import CORPUS_DIR, Catalog, format_entry, write_manifest
from trinperm.proof.derive import coefficient_system, ideal_multipliers

TARGETS = {
    False: ("elim_D3", "elim_from_F2", "elim_from_F1", "elim_from_F0"),
    True: ("e3zero_from_F6", "e3zero_from_F5", "e3zero_from_F4", "e3zero_D0"),
}


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--corpus-dir", type=Path, default=CORPUS_DIR)
    args = ap.parse_args(argv)
    cat = Catalog(args.corpus_dir, strict=False)
    out = args.corpus_dir / "multipliers"
    out.mkdir(exist_ok=True)
    for stale in out.glob("*.txt"):
        stale.unlink()
    for e3_zero, names in TARGETS.items():
        system = coefficient_system(e3_zero)
        for name in names:
            mult, rem = ideal_multipliers(cat[name], system)
            if not rem.is_zero():
                raise SystemExit(f"{name} is not in the ideal; remainder {rem}")
            for fv, m in mult.items():
                if not m.is_zero():
                    label = f"{name}__{fv}"
                    (out / f"{label}.txt").write_text(format_entry(label, m))
            print(f"{name}: {sum(not m.is_zero() for m in mult.values())} multipliers")
    table = write_manifest(args.corpus_dir)
    print(f"manifest: {len(table)} files")


if __name__ == "__main__":
    main()
