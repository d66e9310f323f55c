"""trinperm command line: PP checks, criterion sweeps, proof replay and polynomial tools.

Exit codes: 0 success, 1 usage or parse error, 2 mathematical disagreement.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time
from dataclasses import dataclass

from . import gf2x
from .fields import FieldError, decode_element, encode_element, modulus_registry
from .mvpoly import MvPoly, PolyParseError, parse, prem
from .pp_core import criterion_thm11, extension, is_pp_exhaustive, is_pp_mu, make_trinomial
from .resultant import resultant
from .sweep import SweepConfig, config_dict, verify_theorem

EXIT_OK, EXIT_USAGE, EXIT_DISAGREE = 0, 1, 2
METHODS = ("criterion", "mu", "exhaustive")
THEOREM = "f is a PP of F_{q^2} iff a = b and X^3+X+1/a has no root in F_q"


class UsageError(Exception):
    pass


@dataclass
class Report:
    command: str
    config: dict
    results: list
    wall_ms: float = 0.0

    def summary(self) -> dict:
        fails = sum(1 for r in self.results if r.get("status") == "fail")
        return {"pass": len(self.results) - fails, "fail": fails, "wall_ms": round(self.wall_ms, 1)}

    def to_json(self) -> str:
        d = {"command": self.command, "config": self.config, "results": self.results,
             "summary": self.summary()}
        return json.dumps(d, indent=2, sort_keys=True)


def _status(ok: bool) -> str:
    return "pass" if ok else "fail"


# -- pp-check ---------------------------------------------------------------------

def cmd_pp_check(args) -> tuple[Report, str, int]:
    if args.n is None or args.a is None or args.b is None:
        raise UsageError("pp-check needs --n, --a and --b")
    try:
        ext = extension(args.n)
        a = decode_element(ext.base, args.a)
        b = decode_element(ext, args.b)
        inst = make_trinomial(ext, a, b)
    except (FieldError, ValueError) as exc:
        raise UsageError(str(exc)) from exc
    methods = METHODS if args.method == "all" else (args.method,)
    oracle = {"criterion": criterion_thm11, "mu": is_pp_mu, "exhaustive": is_pp_exhaustive}
    verdicts = {}
    for m in methods:
        try:
            verdicts[m] = oracle[m](inst)
        except ValueError as exc:
            raise UsageError(f"{m}: {exc}") from exc
    agree = len(set(verdicts.values())) == 1
    results = [{"id": m, "anchor": THEOREM, "pp": v, "status": "pass"} for m, v in verdicts.items()]
    if len(methods) > 1:
        results.append({"id": "agreement", "anchor": THEOREM, "agree": agree, "status": _status(agree)})
    cfg = {"n": args.n, "q": ext.q, "a": encode_element(ext.base, a), "b": encode_element(ext, b),
           "method": args.method}
    lines = [f"q={ext.q} a={cfg['a']} b={cfg['b']}"]
    lines += [f"  {m:<11} PP={str(v).lower()}" for m, v in verdicts.items()]
    if len(methods) > 1:
        lines.append(f"  all agree: {str(agree).lower()}")
    return Report("pp-check", cfg, results), "\n".join(lines), EXIT_OK if agree else EXIT_DISAGREE


# -- verify-theorem ---------------------------------------------------------------

def cmd_verify_theorem(args) -> tuple[Report, str, int]:
    if args.n is None:
        raise UsageError("verify-theorem needs --n")
    if not 1 <= args.n <= 16:
        raise UsageError("--n must be in 1..16")
    if args.budget is not None and args.budget < 0:
        raise UsageError("--budget must be nonnegative")
    cfg = SweepConfig(args.n, args.budget, max(1, args.workers), args.seed)
    out = verify_theorem(cfg)
    results = [
        {"id": "oracle_agreement", "anchor": THEOREM, "status": _status(out["disagreements"] == 0),
         "disagreements": out["disagreements"], "witnesses": out["witnesses"]},
        {"id": "pp_count_equals_rootless", "anchor": "#PP pairs = #{a : X^3+X+1/a rootless in F_q}",
         "status": _status(out["counts_equal"]), "pp_count": out["pp_count"],
         "rootless_count": out["rootless_count"]},
    ]
    for key in ("pairs", "sufficiency", "necessity"):
        if key in out:
            results[0][key] = out[key]
    lines = [f"q={out['q']} mode={out['mode']} oracles={','.join(out['oracles'])}"]
    for key in ("pairs", "sufficiency", "necessity"):
        if key in out:
            lines.append(f"  {key}: " + ", ".join(f"{k}={v}" for k, v in out[key].items()))
    lines.append(f"  PP count {out['pp_count']}, rootless-cubic count {out['rootless_count']}")
    for w in out["witnesses"]:
        lines.append(f"  witness: {w}")
    lines.append("  OK" if out["ok"] else "  DISAGREEMENT")
    return (Report("verify-theorem", config_dict(cfg), results), "\n".join(lines),
            EXIT_OK if out["ok"] else EXIT_DISAGREE)


# -- replay -----------------------------------------------------------------------

def cmd_replay(args) -> tuple[Report, str, int]:
    from .proof import STAGES, Catalog, CatalogError, run_all

    names = [s.strip() for s in (args.stages or "all").split(",") if s.strip()]
    if names == ["all"]:
        names = list(STAGES)
    unknown = [s for s in names if s not in STAGES]
    if unknown:
        raise UsageError(f"unknown stage(s) {', '.join(unknown)}; choose from {', '.join(STAGES)} or all")
    try:
        catalog = Catalog(args.corpus_dir) if args.corpus_dir else None
    except CatalogError as exc:
        raise UsageError(str(exc)) from exc
    progress = None if args.json else (lambda rep: print(rep.to_text(), flush=True))
    reports = run_all(names, catalog=catalog, progress=progress)
    results = []
    for rep in reports:
        for r in rep.results:
            results.append({"stage": rep.stage, "id": r.id, "anchor": r.anchor, "status": r.status,
                            "millis": r.millis, "witness": r.witness, **({"detail": r.detail} if r.detail else {})})
    ok = all(rep.passed for rep in reports)
    cfg = {"stages": names, "corpus_dir": str(args.corpus_dir) if args.corpus_dir else None}
    text = "" if progress else "\n".join(rep.to_text() for rep in reports)
    return Report("replay", cfg, results), text, EXIT_OK if ok else EXIT_DISAGREE


# -- poly ---------------------------------------------------------------------------

_REF = re.compile(r"@([A-Za-z][A-Za-z0-9_/]*)")


def read_poly(text: str, catalog=None) -> MvPoly:
    """Parse a sum of monomials in which ``@name`` stands for a catalog entry."""
    refs = {}

    def swap(m):
        key = f"catref{len(refs)}x"
        refs[key] = m.group(1)
        return key

    body = _REF.sub(swap, text)
    p = parse(body)
    if refs:
        if catalog is None:
            from .proof import default_catalog
            catalog = default_catalog()
        try:
            p = p.substitute({k: catalog[name] for k, name in refs.items()})
        except KeyError as exc:
            raise UsageError(f"no catalog entry {exc.args[0]!r}") from exc
    return p


def _as_gf2x(p: MvPoly, var: str) -> int:
    extra = set(p.variables) - {var}
    if extra:
        raise UsageError(f"gcd works on polynomials in {var} alone; found {sorted(extra)}")
    out = 0
    for e in p.exponents():
        out ^= 1 << (e[0] if e else 0)
    return out


def _from_gf2x(v: int, var: str) -> MvPoly:
    x = MvPoly.var(var)
    out = MvPoly.zero()
    for e in gf2x.exponents(v):
        out = out + x ** e
    return out


def cmd_poly(args) -> tuple[Report, str, int]:
    if len(args.inputs) != 2:
        raise UsageError("poly tools take exactly two inputs")
    if not args.var:
        raise UsageError("poly needs --var")
    catalog = None
    if args.corpus_dir:
        from .proof import Catalog
        catalog = Catalog(args.corpus_dir)
    try:
        f, g = (read_poly(t, catalog) for t in args.inputs)
    except PolyParseError as exc:
        raise UsageError(str(exc)) from exc
    var = args.var
    if args.tool == "resultant":
        out = resultant(f, g, var)
    elif args.tool == "gcd":
        out = _from_gf2x(gf2x.gcd(_as_gf2x(f, var), _as_gf2x(g, var)), var)
    else:
        if g.degree(var) <= 0:
            raise UsageError(f"divisor has no {var}")
        out = prem(f, g, var)
    text = out.serialize()
    cfg = {"tool": args.tool, "var": var, "inputs": list(args.inputs)}
    return Report("poly", cfg, [{"id": args.tool, "anchor": "", "status": "pass", "result": text}]), text, EXIT_OK


def cmd_moduli(args) -> tuple[Report, str, int]:
    rows = modulus_registry()
    return (Report("moduli", {}, [{"id": r.split(":")[0], "anchor": "", "status": "pass", "modulus": r}
                                  for r in rows]), "\n".join(rows), EXIT_OK)


# -- wiring -------------------------------------------------------------------------

COMMANDS = {
    "pp-check": cmd_pp_check,
    "verify-theorem": cmd_verify_theorem,
    "replay": cmd_replay,
    "poly": cmd_poly,
    "moduli": cmd_moduli,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the structured report")
    common.add_argument("--no-timings", action="store_true", help="zero all timings (byte-stable JSON)")
    p = _Parser(prog="trinperm", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("pp-check", parents=[common], help="test one trinomial")
    s.add_argument("--n", type=int, help="q = 2^n")
    s.add_argument("--a", help="element of F_q, e.g. 0x3")
    s.add_argument("--b", help="element u:v of F_{q^2}, e.g. 0x1:0x0")
    s.add_argument("--method", choices=METHODS + ("all",), default="all")

    s = sub.add_parser("verify-theorem", parents=[common], help="sweep the criterion")
    s.add_argument("--n", type=int)
    s.add_argument("--budget", type=int, default=None, help="random necessity samples")
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--seed", type=int, default=0)

    s = sub.add_parser("replay", parents=[common], help="replay the symbolic proof")
    s.add_argument("--stages", default="all", help="comma-separated stage names, or all")
    s.add_argument("--corpus-dir", default=None)

    s = sub.add_parser("poly", parents=[common], help="resultant, gcd or pseudo-remainder")
    s.add_argument("tool", choices=("resultant", "gcd", "pseudo-rem"))
    s.add_argument("inputs", nargs="*", help="polynomials; @name reads a catalog entry")
    s.add_argument("--var")
    s.add_argument("--corpus-dir", default=None)

    sub.add_parser("moduli", parents=[common], help="list the default field moduli")
    return p


def _zero_timings(obj):
    if isinstance(obj, dict):
        return {k: (0.0 if k in ("wall_ms", "millis") else _zero_timings(v)) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_zero_timings(v) for v in obj]
    return obj


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    t0 = time.perf_counter()
    try:
        report, text, code = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"trinperm {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report.wall_ms = (time.perf_counter() - t0) * 1000
    if args.json:
        out = report.to_json()
        if args.no_timings:
            out = json.dumps(_zero_timings(json.loads(out)), indent=2, sort_keys=True)
        print(out)
    elif text:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
