"""Dense univariate polynomials over a binary field context.

Works over anything exposing ``zero``, ``one``, ``add``, ``mul``, ``inv``,
``size``, ``elements`` and ``contains``: both ``FieldCtx`` and ``ExtCtx`` do.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .fields import decode_element, encode_element

DEG_ZERO = -math.inf
ENUMERATION_LIMIT = 1 << 16


class ContextMismatch(ValueError):
    pass


def _trim(ctx, coeffs) -> tuple:
    c = list(coeffs)
    while c and c[-1] == ctx.zero:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class UniPoly:
    ctx: object
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(self.ctx, self.coeffs))

    @classmethod
    def from_coeffs(cls, ctx, coeffs) -> "UniPoly":
        for c in coeffs:
            if not ctx.contains(c):
                raise ValueError(f"coefficient {c!r} not in context")
        return cls(ctx, tuple(coeffs))

    @classmethod
    def monomial(cls, ctx, d: int, c=None) -> "UniPoly":
        c = ctx.one if c is None else c
        return cls(ctx, (ctx.zero,) * d + (c,))

    @classmethod
    def constant(cls, ctx, c) -> "UniPoly":
        return cls(ctx, (c,))

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else DEG_ZERO

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.ctx.zero

    def _same(self, other: "UniPoly"):
        if self.ctx is not other.ctx and self.ctx != other.ctx:
            raise ContextMismatch("polynomials live over different contexts")

    def __add__(self, other: "UniPoly") -> "UniPoly":
        self._same(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        add = self.ctx.add
        out = list(a)
        for i, c in enumerate(b):
            out[i] = add(out[i], c)
        return UniPoly(self.ctx, tuple(out))

    __sub__ = __add__

    def __mul__(self, other: "UniPoly") -> "UniPoly":
        self._same(other)
        if self.is_zero() or other.is_zero():
            return UniPoly(self.ctx, ())
        ctx = self.ctx
        out = [ctx.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x == ctx.zero:
                continue
            for j, y in enumerate(other.coeffs):
                out[i + j] = ctx.add(out[i + j], ctx.mul(x, y))
        return UniPoly(ctx, tuple(out))

    def scale(self, c) -> "UniPoly":
        return UniPoly(self.ctx, tuple(self.ctx.mul(c, x) for x in self.coeffs))

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        return self.scale(self.ctx.inv(self.lc))

    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        self._same(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        ctx = self.ctx
        r = list(self.coeffs)
        db = len(other.coeffs) - 1
        inv_lc = ctx.inv(other.lc)
        quot = [ctx.zero] * max(len(r) - db, 0)
        for s in range(len(r) - 1 - db, -1, -1):
            c = r[s + db]
            if c == ctx.zero:
                continue
            t = ctx.mul(c, inv_lc)
            quot[s] = t
            for j, y in enumerate(other.coeffs):
                r[s + j] = ctx.add(r[s + j], ctx.mul(t, y))
        return UniPoly(ctx, tuple(quot)), UniPoly(ctx, tuple(r[:db] if db else ()))

    def __mod__(self, other: "UniPoly") -> "UniPoly":
        return self.divmod(other)[1]

    def __eq__(self, other) -> bool:
        return isinstance(other, UniPoly) and self.ctx == other.ctx and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def eval(self, x):
        if not self.ctx.contains(x):
            raise ContextMismatch(f"{x!r} is not an element of the context")
        ctx = self.ctx
        acc = ctx.zero
        for c in reversed(self.coeffs):
            acc = ctx.add(ctx.mul(acc, x), c)
        return acc

    def to_text(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for d in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[d]
            if c == self.ctx.zero:
                continue
            h = encode_element(self.ctx, c)
            parts.append(h if d == 0 else f"{h}*X" if d == 1 else f"{h}*X^{d}")
        return " + ".join(parts)

    @classmethod
    def from_text(cls, ctx, text: str) -> "UniPoly":
        text = text.strip()
        if text == "0":
            return cls(ctx, ())
        coeffs: dict[int, object] = {}
        for term in text.split("+"):
            term = term.strip()
            if "*" in term:
                c, mono = term.split("*", 1)
                mono = mono.strip()
                if mono == "X":
                    d = 1
                elif mono.startswith("X^") and mono[2:].isdigit():
                    d = int(mono[2:])
                else:
                    raise ValueError(f"bad monomial {mono!r}")
            else:
                c, d = term, 0
            if d in coeffs:
                raise ValueError(f"repeated degree {d}")
            coeffs[d] = decode_element(ctx, c.strip())
        top = max(coeffs)
        return cls(ctx, tuple(coeffs.get(i, ctx.zero) for i in range(top + 1)))

    def __repr__(self):
        return f"UniPoly({self.to_text()})"


def derivative(p: UniPoly) -> UniPoly:
    ctx = p.ctx
    return UniPoly(ctx, tuple(c if i % 2 else ctx.zero for i, c in enumerate(p.coeffs))[1:])


def gcd(p: UniPoly, q: UniPoly) -> UniPoly:
    p._same(q)
    if p.is_zero() and q.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    while not q.is_zero():
        p, q = q, p % q
    return p.monic()


def powmod(base: UniPoly, e: int, m: UniPoly) -> UniPoly:
    result = UniPoly.constant(base.ctx, base.ctx.one) % m
    base = base % m
    while e:
        if e & 1:
            result = (result * base) % m
        base = (base * base) % m
        e >>= 1
    return result


def frobenius_power_x(p: UniPoly) -> UniPoly:
    """X^|F| mod p, by squaring X log2|F| times."""
    ctx = p.ctx
    t = UniPoly.monomial(ctx, 1) % p
    for _ in range(ctx.size.bit_length() - 1):
        t = (t * t) % p
    return t


def count_roots_enum(p: UniPoly) -> int:
    if p.is_zero():
        raise ValueError("zero polynomial has every element as a root")
    return sum(1 for x in p.ctx.elements() if p.eval(x) == p.ctx.zero)


def count_roots_frobenius(p: UniPoly) -> int:
    if p.is_zero():
        raise ValueError("zero polynomial has every element as a root")
    if p.degree == 0:
        return 0
    t = frobenius_power_x(p) + UniPoly.monomial(p.ctx, 1)
    return int(gcd(p, t).degree)


def count_roots(p: UniPoly, method: str = "auto") -> int:
    if method == "auto":
        method = "enum" if p.ctx.size <= ENUMERATION_LIMIT else "frobenius"
    if method == "enum":
        return count_roots_enum(p)
    if method == "frobenius":
        return count_roots_frobenius(p)
    raise ValueError(f"unknown root-counting method {method!r}")


def resultant(p: UniPoly, q: UniPoly):
    """Res(p, q) by the Euclidean recurrence over the coefficient field.

    Uses Res(f, g) = lc(g)^(deg f - deg r) Res(g, r) for r = f mod g; in
    characteristic 2 the sign factors vanish.
    """
    p._same(q)
    if p.is_zero() or q.is_zero():
        raise ValueError("resultant with the zero polynomial")
    ctx = p.ctx
    acc = ctx.one
    f, g = p, q
    while True:
        n, m = int(f.degree), int(g.degree)
        if n == 0:
            return ctx.mul(acc, ctx.pow(f.lc, m))
        if m == 0:
            return ctx.mul(acc, ctx.pow(g.lc, n))
        if n < m:
            f, g = g, f
            continue
        r = f % g
        if r.is_zero():
            return ctx.zero
        acc = ctx.mul(acc, ctx.pow(g.lc, n - int(r.degree)))
        f, g = g, r


def sylvester_matrix(p: UniPoly, q: UniPoly) -> list[list]:
    ctx = p.ctx
    n, m = int(p.degree), int(q.degree)
    size = n + m
    rows = []
    pc = list(reversed(p.coeffs))
    qc = list(reversed(q.coeffs))
    for i in range(m):
        rows.append([ctx.zero] * i + pc + [ctx.zero] * (size - n - 1 - i))
    for i in range(n):
        rows.append([ctx.zero] * i + qc + [ctx.zero] * (size - m - 1 - i))
    return rows


def determinant(ctx, rows: list[list]):
    """Gaussian elimination over the field (characteristic 2, so no sign tracking)."""
    a = [list(r) for r in rows]
    n = len(a)
    det = ctx.one
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != ctx.zero), None)
        if piv is None:
            return ctx.zero
        a[col], a[piv] = a[piv], a[col]
        pv = a[col][col]
        det = ctx.mul(det, pv)
        inv = ctx.inv(pv)
        for r in range(col + 1, n):
            c = a[r][col]
            if c == ctx.zero:
                continue
            t = ctx.mul(c, inv)
            a[r] = [ctx.add(x, ctx.mul(t, y)) for x, y in zip(a[r], a[col])]
    return det


def sylvester_resultant(p: UniPoly, q: UniPoly):
    if p.is_zero() or q.is_zero():
        raise ValueError("resultant with the zero polynomial")
    if p.degree == 0 and q.degree == 0:
        return p.ctx.one
    return determinant(p.ctx, sylvester_matrix(p, q))
