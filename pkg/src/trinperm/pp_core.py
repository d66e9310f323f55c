"""Numeric side of the trinomial f(X) = X^4 (1 + a X^(q-1) + b X^(3(q-1))) over F_{q^2}.

Three permutation oracles of increasing cost:

* ``criterion_thm11``: a == b and X^3 + X + 1/a rootless in F_q, O(q);
* ``is_pp_mu``: the reduced map x^4 (1+ax+bx^3)^(q-1) on the order-(q+1) subgroup, O(q);
* ``is_pp_exhaustive``: f on every element of F_{q^2}, O(q^2).

Batch variants work on numpy arrays of (a, b) pairs; base-field tables limit
them to q <= 2^16.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .fields import ExtCtx, FieldCtx, make_field, make_quadratic_ext
from .unipoly import UniPoly, count_roots

EXHAUSTIVE_LIMIT = 1 << 24


class PoleError(ArithmeticError):
    """The rational map g hit a vanishing denominator."""


class DegenerateQuartic(ArithmeticError):
    """Leading coefficient of the fiber quartic vanished; should never happen."""


# -- instances --------------------------------------------------------------

@dataclass(frozen=True)
class TrinomialInstance:
    ext: ExtCtx
    a: tuple
    b: tuple
    b1: int = field(init=False)
    k_b: int | None = field(init=False)

    def __post_init__(self):
        F, E = self.ext.base, self.ext
        b1 = E.add(self.b, E.frob(self.b))
        if b1[1] != 0:
            raise AssertionError("b + b^q left the base field")
        object.__setattr__(self, "b1", b1[0])
        if b1[0]:
            nb = E.norm(self.b)
            k = F.div(nb, F.sqr(b1[0]))
            if F.trace(k) != 1:
                raise AssertionError(f"Tr(k_b) = 0 for b = {self.b}; z = b/b1 must have trace 1")
            object.__setattr__(self, "k_b", k)
        else:
            object.__setattr__(self, "k_b", None)

    @property
    def q(self) -> int:
        return self.ext.q

    @property
    def b_in_base(self) -> bool:
        return self.b1 == 0

    @property
    def mu(self) -> list:
        return mu_elements(self.ext)

    @property
    def z(self):
        """Trace-one element driving the transport: b/b1, or the basis element when b is in F_q."""
        if self.b1:
            return self.ext.div(self.b, (self.b1, 0))
        return (0, 1)

    @property
    def k(self) -> int:
        """z^2 + z, the base-field constant with Tr(k) = 1."""
        return self.k_b if self.b1 else self.ext.k0


def make_trinomial(ext: ExtCtx, a, b) -> TrinomialInstance:
    """Validate and wrap (a, b); ``a`` may be a base-field int or an embedded pair (a, 0)."""
    if isinstance(a, (int, np.integer)):
        if not ext.base.contains(int(a)):
            raise ValueError(f"a = {a!r} is not in F_{ext.q}")
        a = (int(a), 0)
    if not ext.contains(a):
        raise ValueError(f"a = {a!r} is not an element of F_{ext.q}^2")
    if a[1] != 0:
        raise ValueError("a must lie in the base field F_q")
    if not ext.contains(b):
        raise ValueError(f"b = {b!r} is not an element of F_{ext.q}^2")
    if a == ext.zero or b == ext.zero:
        raise ValueError("a and b must be nonzero")
    return TrinomialInstance(ext, a, b)


@lru_cache(maxsize=None)
def extension(n: int) -> ExtCtx:
    """F_{q^2} with q = 2^n."""
    return make_quadratic_ext(make_field(n))


def eval_f(inst: TrinomialInstance, x):
    E = inst.ext
    if x == E.zero:
        return E.zero
    y = E.pow_q_minus_1(x)
    y3 = E.mul(E.mul(y, y), y)
    inner = E.add(E.add(E.one, E.mul(inst.a, y)), E.mul(inst.b, y3))
    x2 = E.mul(x, x)
    return E.mul(E.mul(x2, x2), inner)


def eval_f_naive(inst: TrinomialInstance, x):
    """Square-and-multiply reference for ``eval_f``."""
    E = inst.ext
    q = inst.q
    return E.mul(E.pow(x, 4), E.add(E.add(E.one, E.mul(inst.a, E.pow(x, q - 1))),
                                     E.mul(inst.b, E.pow(x, 3 * (q - 1)))))


# -- the subgroup of order q+1 ----------------------------------------------------

@lru_cache(maxsize=None)
def _mu_cached(ext: ExtCtx) -> tuple:
    return tuple(ext.enumerate_mu())


def mu_elements(ext: ExtCtx) -> list:
    return list(_mu_cached(ext))


@lru_cache(maxsize=None)
def _mu_powers(ext: ExtCtx):
    """(u, v) arrays of x, x^3, x^4 for x in the subgroup."""
    mu = _mu_cached(ext)
    u = np.array([x[0] for x in mu], dtype=np.int64)
    v = np.array([x[1] for x in mu], dtype=np.int64)
    x2 = ext.vmul(u, v, u, v)
    x3 = ext.vmul(*x2, u, v)
    x4 = ext.vmul(*x2, *x2)
    return (u, v), x3, x4


def _encode(ext: ExtCtx, u, v):
    return u | (v << ext.base.degree)


def _has_repeat(codes) -> np.ndarray:
    """Per row of a 2-d array: does any value occur twice."""
    s = np.sort(codes, axis=1)
    return np.any(s[:, 1:] == s[:, :-1], axis=1)


def _reduced_images(ext: ExtCtx, a, bu, bv, sl):
    """x^4 (1+ax+bx^3)^(q-1) for x in the subgroup slice ``sl``; rows follow the pairs.

    Returns (u, v, zero) where ``zero`` marks x with 1+ax+bx^3 = 0; the image
    there is taken to be 0, which lies outside the subgroup.
    """
    F = ext.base
    (xu, xv), (x3u, x3v), (x4u, x4v) = _mu_powers(ext)
    xu, xv, x3u, x3v, x4u, x4v = (t[None, sl] for t in (xu, xv, x3u, x3v, x4u, x4v))
    a = a[:, None]
    bu, bv = bu[:, None], bv[:, None]
    tu, tv = ext.vmul(bu, bv, x3u, x3v)
    tu = tu ^ F.vmul(a, xu) ^ 1
    tv = tv ^ F.vmul(a, xv)
    # t^(q-1) = t^q / t = (t^q)^2 / N(t)
    nt = ext.vnorm(tu, tv)
    zero = nt == 0
    ninv = F.vinv(np.where(zero, 1, nt))
    fu, fv = tu ^ tv, tv
    su, sv = ext.vmul(fu, fv, fu, fv)
    su, sv = ext.vmul(su, sv, np.broadcast_to(x4u, su.shape), np.broadcast_to(x4v, sv.shape))
    su, sv = F.vmul(su, ninv), F.vmul(sv, ninv)
    return np.where(zero, 0, su), np.where(zero, 0, sv), zero


def screen_chunk(q: int) -> int:
    """Subgroup prefix size for the cheap first pass; a random map almost surely collides in it."""
    return min(q + 1, max(64, 4 * math.isqrt(q + 1)))


def is_pp_mu_batch(ext: ExtCtx, a, b_u, b_v) -> np.ndarray:
    """Subgroup test for many pairs at once: a and b given as int arrays (b as u, v parts).

    A cheap pass over a prefix of the subgroup discards pairs that already
    collide or hit a zero; the survivors get the full check.
    """
    a = np.asarray(a, dtype=np.int64)
    bu = np.asarray(b_u, dtype=np.int64)
    bv = np.asarray(b_v, dtype=np.int64)
    out = np.zeros(a.shape, dtype=bool)
    if a.size == 0:
        return out
    m = screen_chunk(ext.q)
    u, v, zero = _reduced_images(ext, a, bu, bv, slice(0, m))
    alive = ~(zero.any(axis=1) | _has_repeat(_encode(ext, u, v)))
    idx = np.flatnonzero(alive)
    if idx.size:
        u, v, zero = _reduced_images(ext, a[idx], bu[idx], bv[idx], slice(None))
        ok = ~(zero.any(axis=1) | _has_repeat(_encode(ext, u, v)))
        # distinct nonzero values of norm one fill the whole subgroup
        ok &= np.all(ext.vnorm(u, v) == 1, axis=1)
        out[idx] = ok
    return out


def is_pp_mu(inst: TrinomialInstance) -> bool:
    a = np.array([inst.a[0]])
    return bool(is_pp_mu_batch(inst.ext, a, np.array([inst.b[0]]), np.array([inst.b[1]]))[0])


def is_pp_mu_scalar(inst: TrinomialInstance) -> bool:
    """Element-by-element reference for ``is_pp_mu``."""
    E = inst.ext
    seen = set()
    for x in inst.mu:
        x3 = E.mul(E.mul(x, x), x)
        t = E.add(E.add(E.one, E.mul(inst.a, x)), E.mul(inst.b, x3))
        if t == E.zero:
            return False
        x2 = E.mul(x, x)
        img = E.mul(E.mul(x2, x2), E.pow_q_minus_1(t))
        if img in seen:
            return False
        seen.add(img)
    return True


def is_pp_exhaustive(inst: TrinomialInstance, chunk: int | None = None) -> bool:
    """Evaluate f on all of F_{q^2} and mark images in a bit-set; stops at the first collision."""
    E, F = inst.ext, inst.ext.base
    if E.size > EXHAUSTIVE_LIMIT:
        raise ValueError(f"exhaustive test needs q^2 <= 2^24, got q = {E.q}")
    seen = np.zeros(E.size, dtype=bool)
    seen[0] = True  # f(0) = 0
    chunk = chunk or max(E.q, 1 << 14)
    au = inst.a[0]
    bu, bv = inst.b
    for start in range(1, E.size, chunk):
        codes = np.arange(start, min(start + chunk, E.size), dtype=np.int64)
        xu, xv = codes & (E.q - 1), codes >> F.degree
        # x^(q-1) = (x^q)^2 / N(x)
        fu, fv = xu ^ xv, xv
        nx = F.vinv(E.vnorm(xu, xv))
        yu, yv = E.vmul(fu, fv, fu, fv)
        yu, yv = F.vmul(yu, nx), F.vmul(yv, nx)
        y2 = E.vmul(yu, yv, yu, yv)
        y3u, y3v = E.vmul(*y2, yu, yv)
        iu, iv = E.vmul(np.full_like(y3u, bu), np.full_like(y3v, bv), y3u, y3v)
        iu = iu ^ F.vmul(np.full_like(yu, au), yu) ^ 1
        iv = iv ^ F.vmul(np.full_like(yv, au), yv)
        x2 = E.vmul(xu, xv, xu, xv)
        x4 = E.vmul(*x2, *x2)
        ru, rv = E.vmul(*x4, iu, iv)
        img = _encode(E, ru, rv)
        if np.unique(img).size != img.size or seen[img].any():
            return False
        seen[img] = True
    return True


# -- the closed-form criterion ------------------------------------------------------

def cubic_has_root(ctx: FieldCtx, c: int) -> bool:
    """X^3 + X + c has a root in ctx, by root counting."""
    return count_roots(UniPoly(ctx, (c, 1, 0, 1))) > 0


def criterion_thm11(inst: TrinomialInstance) -> bool:
    F = inst.ext.base
    return inst.a == inst.b and not cubic_has_root(F, F.inv(inst.a[0]))


@lru_cache(maxsize=None)
def rootless_table(ctx: FieldCtx) -> np.ndarray:
    """Boolean array over F_q: entry a is X^3+X+1/a rootless (entry 0 False).

    Built from the value set of x^3 + x, independently of ``cubic_has_root``.
    """
    xs = np.arange(ctx.size, dtype=np.int64)
    hit = np.zeros(ctx.size, dtype=bool)
    hit[ctx.vmul(ctx.vmul(xs, xs), xs) ^ xs] = True
    out = np.zeros(ctx.size, dtype=bool)
    nz = xs[1:]
    out[1:] = ~hit[ctx.vinv(nz)]
    return out


def criterion_batch(ext: ExtCtx, a, b_u, b_v) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    return (np.asarray(b_v) == 0) & (np.asarray(b_u) == a) & rootless_table(ext.base)[a]


# -- transport to the base field -------------------------------------------------

def _g(inst: TrinomialInstance, x):
    """x (b^q + a x^2 + x^3) / (1 + a x + b x^3)."""
    E = inst.ext
    x2 = E.mul(x, x)
    x3 = E.mul(x2, x)
    num = E.mul(x, E.add(E.add(E.frob(inst.b), E.mul(inst.a, x2)), x3))
    den = E.add(E.add(E.one, E.mul(inst.a, x)), E.mul(inst.b, x3))
    if den == E.zero:
        raise PoleError(f"denominator of g vanishes at {x}")
    return E.div(num, den)


def phi(inst: TrinomialInstance, x: int):
    """(x+z+1)/(x+z): F_q to the subgroup minus {1}."""
    E = inst.ext
    w = E.add((x, 0), inst.z)
    return E.div(E.add(w, E.one), w)


def transport_check(inst: TrinomialInstance, x: int, y: int) -> bool:
    """Does g(phi(x)) equal (1+a+b)^(q-1) phi(y)?"""
    E = inst.ext
    c = E.add(E.add(E.one, inst.a), inst.b)
    if c == E.zero:
        raise ValueError("1 + a + b = 0")
    return _g(inst, phi(inst, x)) == E.mul(E.pow_q_minus_1(c), phi(inst, y))


def transport_fiber(inst: TrinomialInstance, y: int) -> tuple[list, int]:
    """(x in F_q with transport_check true, number of x where g had a pole)."""
    xs, poles = [], 0
    for x in inst.ext.base.elements():
        try:
            if transport_check(inst, x, y):
                xs.append(x)
        except PoleError:
            poles += 1
    return xs, poles


# -- the fiber quartic ----------------------------------------------------------

@dataclass(frozen=True)
class QuarticSpec:
    """x^4 + alpha2 x^2 + alpha1 x + alpha0 over ``ctx``."""
    ctx: FieldCtx
    alpha0: int
    alpha1: int
    alpha2: int
    source: str = ""

    def poly(self) -> UniPoly:
        return UniPoly(self.ctx, (self.alpha0, self.alpha1, self.alpha2, 0, 1))


def quartic_coefficients(inst: TrinomialInstance, y: int) -> tuple[list, str]:
    """Coefficients (constant first) of the fiber quartic and which form was used.

    For a == b this is the squared normal form x^4 + a^2x^2 + a^2x + (k+ak+k^2+y)^2,
    whose roots are the squares of the transport solutions. Otherwise it is the
    cross-multiplied transport equation itself, with coefficients in F_q.
    """
    E, F = inst.ext, inst.ext.base
    if inst.a == inst.b:
        a, k = inst.a[0], inst.k
        a2 = F.sqr(a)
        c0 = F.sqr(k ^ F.mul(a, k) ^ F.sqr(k) ^ y)
        return [c0, a2, a2, 0, 1], "a=b squared"
    P = lambda *cs: UniPoly(E, cs)  # noqa: E731
    z = inst.z
    w, w1 = P(z, E.one), P(E.add(z, E.one), E.one)
    bq = E.frob(inst.b)
    a = inst.a
    w2, w12 = w * w, w1 * w1
    A = w1 * ((w2 * w).scale(bq) + (w12 * w).scale(a) + w12 * w1)
    B = w * (w2 * w + (w1 * w2).scale(a) + (w12 * w1).scale(inst.b))
    left = E.mul(E.add(E.add(E.one, a), inst.b), E.add((y, 0), z))
    right = E.mul(E.add(E.add(E.one, a), bq), E.add(E.add((y, 0), z), E.one))
    cross = A.scale(left) + B.scale(right)
    cs = list(cross.coeffs) + [E.zero] * (5 - len(cross.coeffs))
    if any(c[1] for c in cs):
        raise AssertionError("quartic coefficients left the base field")
    return [c[0] for c in cs], "transport"


def fiber_quartic(inst: TrinomialInstance, y: int) -> list:
    F = inst.ext.base
    cs, _ = quartic_coefficients(inst, y)
    if cs[4] == 0:
        raise DegenerateQuartic(f"C4 = 0 at a={inst.a}, b={inst.b}")
    p = UniPoly(F, tuple(cs))
    return [x for x in F.elements() if p.eval(x) == 0]


# -- quartic / cubic root criteria ------------------------------------------------

def lw_unique_root(spec: QuarticSpec) -> bool:
    """Unique root of the quartic in F_q, read off the cubic X^3 + alpha2 X + alpha1."""
    if spec.alpha0 == 0 or spec.alpha1 == 0:
        raise ValueError("needs alpha0 * alpha1 != 0")
    return count_roots(UniPoly(spec.ctx, (spec.alpha1, spec.alpha2, 0, 1))) == 0


def lw_cubic_irreducible(ctx: FieldCtx, alpha2: int, alpha1: int) -> bool:
    """X^3 + alpha2 X + alpha1 irreducible, via the trace and sextic conditions."""
    if alpha1 == 0:
        raise ValueError("needs alpha1 != 0")
    a2c = ctx.pow(alpha2, 3)
    if ctx.trace(1 ^ ctx.div(a2c, ctx.sqr(alpha1))) != 0:
        return False
    ext = make_quadratic_ext(ctx)
    if alpha2 == 0:
        # X^6 + alpha1 X^3 = X^3 (X^3 + alpha1); the root 0 says nothing about the cubic
        return count_roots(UniPoly(ext, ((alpha1, 0), ext.zero, ext.zero, ext.one))) == 0
    sextic = UniPoly(ext, ((a2c, 0), ext.zero, ext.zero, (alpha1, 0), ext.zero, ext.zero, ext.one))
    return count_roots(sextic) == 0


def quartic_uniqueness_scan(q: int) -> list[dict]:
    """For each a in F_q^*: does x^4+a^2x^2+a^2x+(k+ak+k^2+y)^2 have one root for every y?

    k is the trace-one constant of the extension basis. The additive part is
    tabulated once per a and the fiber sizes counted with a histogram.
    """
    n = q.bit_length() - 1
    if q != 1 << n or n < 1:
        raise ValueError(f"q must be a power of two, got {q}")
    ext = extension(n)
    F = ext.base
    k = ext.k0
    xs = np.arange(q, dtype=np.int64)
    rows = []
    for a in range(1, q):
        a2 = F.sqr(a)
        add = F.vmul(xs, xs)
        add = F.vmul(add, add) ^ F.vmul(np.full_like(xs, a2), add) ^ F.vmul(np.full_like(xs, a2), xs)
        counts = np.bincount(add, minlength=q)
        const = k ^ F.mul(a, k) ^ F.sqr(k)
        c0 = F.vmul(xs ^ const, xs ^ const)  # xs plays y here
        rows.append({
            "a": a,
            "unique_all_y": bool(np.all(counts[c0] == 1)),
            "cubic_rootless": not cubic_has_root(F, F.inv(a)),
        })
    return rows
