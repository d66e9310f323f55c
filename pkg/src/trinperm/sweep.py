"""Grid sweeps and seeded sampling that pit the permutation oracles against each other."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from .fields import encode_element
from .pp_core import (
    criterion_batch,
    extension,
    is_pp_exhaustive,
    is_pp_mu_batch,
    make_trinomial,
    rootless_table,
)

FULL_GRID_Q = 16  # every pair, and the O(q^2) oracle joins in
DEFAULT_GRID_Q = 64  # every pair when no budget is given
DEFAULT_BUDGET = 10 ** 5
MAX_WITNESSES = 10


@dataclass(frozen=True)
class SweepConfig:
    n: int
    budget: int | None = None
    workers: int = 1
    seed: int = 0
    batch: int = 4096

    @property
    def q(self) -> int:
        return 1 << self.n

    @property
    def grid(self) -> bool:
        return self.q <= FULL_GRID_Q or (self.budget is None and self.q <= DEFAULT_GRID_Q)

    @property
    def samples(self) -> int:
        return 0 if self.grid else (DEFAULT_BUDGET if self.budget is None else self.budget)


def _witness(ext, a, bu, bv, mu, crit, exh=None) -> dict:
    w = {"a": encode_element(ext.base, int(a)), "b": encode_element(ext, (int(bu), int(bv))),
         "mu": bool(mu), "criterion": bool(crit)}
    if exh is not None:
        w["exhaustive"] = bool(exh)
    return w


def _compare(ext, a, bu, bv, with_exhaustive: bool):
    """(checked, PP count by the subgroup test, witness list) for one batch of pairs."""
    mu = is_pp_mu_batch(ext, a, bu, bv)
    crit = criterion_batch(ext, a, bu, bv)
    exh = None
    if with_exhaustive:
        exh = np.array([is_pp_exhaustive(make_trinomial(ext, int(x), (int(u), int(v))))
                        for x, u, v in zip(a, bu, bv)], dtype=bool)
        bad = np.flatnonzero((mu != crit) | (mu != exh))
    else:
        bad = np.flatnonzero(mu != crit)
    wit = [_witness(ext, a[i], bu[i], bv[i], mu[i], crit[i], None if exh is None else exh[i])
           for i in bad[:MAX_WITNESSES]]
    return int(a.size), int(mu.sum()), wit, int(bad.size)


def _grid_task(n: int, a: int, with_exhaustive: bool):
    ext = extension(n)
    q = ext.q
    codes = np.arange(1, q * q, dtype=np.int64)
    av = np.full(codes.shape, a, dtype=np.int64)
    return _compare(ext, av, codes & (q - 1), codes >> n, with_exhaustive)


def sample_pairs(n: int, seed: int, index: int, size: int):
    """Pairs for sample block ``index``: a counter-based stream keyed by (seed, index)."""
    q = 1 << n
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, index])))
    a = rng.integers(1, q, size, dtype=np.int64)
    codes = rng.integers(1, q * q, size, dtype=np.int64)
    return a, codes & (q - 1), codes >> n


def _sample_task(n: int, seed: int, index: int, size: int):
    ext = extension(n)
    a, bu, bv = sample_pairs(n, seed, index, size)
    off = ~((bv == 0) & (bu == a))  # the diagonal is swept separately
    return _compare(ext, a[off], bu[off], bv[off], False)


def _diagonal(n: int):
    ext = extension(n)
    a = np.arange(1, ext.q, dtype=np.int64)
    return _compare(ext, a, a, np.zeros_like(a), False)


def _run(tasks, workers: int):
    fn, args = tasks
    if workers <= 1 or len(args) <= 1:
        return [fn(*x) for x in args]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, *zip(*args)))


def verify_theorem(cfg: SweepConfig) -> dict:
    """Check the closed-form criterion against the subgroup test (and f itself at small q).

    In grid mode every pair is compared. Otherwise every diagonal pair (a, a) is
    checked and ``cfg.samples`` seeded random off-diagonal pairs stand in for the
    rest. The PP count must equal the number of a with X^3+X+1/a rootless.
    """
    ext = extension(cfg.n)
    rootless = int(rootless_table(ext.base).sum())
    out = {"q": cfg.q, "mode": "grid" if cfg.grid else "sampled"}
    if cfg.grid:
        exh = cfg.q <= FULL_GRID_Q
        parts = _run((_grid_task, [(cfg.n, a, exh) for a in range(1, cfg.q)]), cfg.workers)
        out["oracles"] = ["criterion", "mu"] + (["exhaustive"] if exh else [])
        checked = sum(p[0] for p in parts)
        pp = sum(p[1] for p in parts)
        bad = sum(p[3] for p in parts)
        wit = [w for p in parts for w in p[2]][:MAX_WITNESSES]
        out["pairs"] = {"checked": checked, "pp": pp, "disagreements": bad}
    else:
        out["oracles"] = ["criterion", "mu"]
        d_checked, d_pp, d_wit, d_bad = _diagonal(cfg.n)
        blocks = []
        left, i = cfg.samples, 0
        while left > 0:
            blocks.append((cfg.n, cfg.seed, i, min(cfg.batch, left)))
            left -= cfg.batch
            i += 1
        parts = _run((_sample_task, blocks), cfg.workers)
        s_checked = sum(p[0] for p in parts)
        s_pp = sum(p[1] for p in parts)
        s_bad = sum(p[3] for p in parts)
        wit = (d_wit + [w for p in parts for w in p[2]])[:MAX_WITNESSES]
        pp, bad = d_pp + s_pp, d_bad + s_bad
        out["sufficiency"] = {"checked": d_checked, "pp": d_pp, "disagreements": d_bad}
        out["necessity"] = {"samples": cfg.samples, "checked": s_checked, "pp": s_pp,
                            "disagreements": s_bad}
    out.update({"pp_count": pp, "rootless_count": rootless, "counts_equal": pp == rootless,
                "disagreements": bad, "witnesses": wit})
    out["ok"] = bad == 0 and pp == rootless
    return out


def config_dict(cfg: SweepConfig) -> dict:
    d = asdict(cfg)
    d["q"] = cfg.q
    d["samples"] = cfg.samples
    return d
