"""Per-identity results and stage reports, with text and JSON renderings."""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field

from ..mvpoly import MvPoly

PASS = "pass"
FAIL = "fail"
# a printed display differs from the recomputed value while the mathematics checks out
DISPLAY = "display-mismatch"
WITNESS_TERMS = 6


def term_diff(lhs: MvPoly, rhs: MvPoly, limit: int = WITNESS_TERMS) -> str:
    """Symmetric difference of the two term sets, truncated, in canonical order."""
    diff = lhs + rhs
    if diff.is_zero():
        return ""
    lt = set(_terms(lhs))
    only_l, only_r = [], []
    for t in _terms(diff):
        (only_l if t in lt else only_r).append(t)
    out = []
    for label, ts in (("lhs only", only_l), ("rhs only", only_r)):
        if ts:
            shown = " + ".join(ts[:limit])
            more = f" (+{len(ts) - limit} more)" if len(ts) > limit else ""
            out.append(f"{label}: {shown}{more}")
    return "; ".join(out)


def _terms(p: MvPoly) -> list[str]:
    s = p.serialize()
    return [] if s == "0" else s.split("+")


@dataclass
class Outcome:
    ok: bool
    witness: str = ""
    status: str | None = None
    detail: dict = field(default_factory=dict)


def equal(lhs: MvPoly, rhs: MvPoly, **detail) -> Outcome:
    if lhs == rhs:
        return Outcome(True, detail=detail)
    return Outcome(False, term_diff(lhs, rhs), detail=detail)


def truth(ok: bool, witness: str = "", **detail) -> Outcome:
    return Outcome(bool(ok), "" if ok else witness, detail=detail)


@dataclass
class IdentityResult:
    id: str
    anchor: str
    status: str
    millis: float
    witness: str = ""
    detail: dict = field(default_factory=dict)

    @property
    def failed(self) -> bool:
        return self.status == FAIL


@dataclass
class StageReport:
    stage: str
    results: list = field(default_factory=list)
    wall_ms: float = 0.0

    @property
    def passed(self) -> bool:
        return not any(r.failed for r in self.results)

    @property
    def failures(self) -> list:
        return [r for r in self.results if r.failed]

    def check(self, ident: str, anchor: str, fn) -> IdentityResult:
        t0 = time.perf_counter()
        try:
            out = fn()
        except Exception as exc:  # a crash inside an identity is a failure of that identity
            out = Outcome(False, f"{type(exc).__name__}: {exc}")
        ms = (time.perf_counter() - t0) * 1000
        status = out.status or (PASS if out.ok else FAIL)
        res = IdentityResult(ident, anchor, status, round(ms, 1), out.witness, out.detail)
        self.results.append(res)
        return res

    def to_dict(self) -> dict:
        return {
            "stage": self.stage,
            "passed": self.passed,
            "wall_ms": round(self.wall_ms, 1),
            "identities": [asdict(r) for r in self.results],
        }

    def to_text(self) -> str:
        lines = [f"[{'PASS' if self.passed else 'FAIL'}] stage {self.stage} "
                 f"({len(self.results)} identities, {self.wall_ms / 1000:.1f}s)"]
        for r in self.results:
            lines.append(f"  {r.status:<16} {r.id:<28} {r.millis:>9.1f} ms  {r.anchor}")
            if r.witness:
                lines.append(f"      witness: {r.witness}")
        return "\n".join(lines)


def deterministic_view(reports) -> list:
    """Reports without timings, for run-to-run comparison."""
    out = []
    for rep in reports:
        d = rep.to_dict()
        d.pop("wall_ms")
        for r in d["identities"]:
            r.pop("millis")
        out.append(d)
    return out
