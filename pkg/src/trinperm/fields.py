"""Binary fields F_{2^n}, quotient fields F2[x]/(m), and quadratic extensions.

Base-field elements are ints whose bit i is the coefficient of x^i.  An
extension element is a pair ``(u, v)`` standing for ``u + v*z`` with
``z^2 + z + k0 = 0``; in that basis Frobenius is ``(u, v) -> (u + v, v)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import gf2x

MAX_DEGREE = 24
MAX_QUOTIENT_DEGREE = 48
TABLE_DEGREE = 16


class FieldError(ValueError):
    pass


class ReducibleModulusError(FieldError):
    def __init__(self, modulus: int, factor: int):
        super().__init__(
            f"modulus {gf2x.to_str(modulus)} is reducible; factor {gf2x.to_str(factor)}"
        )
        self.modulus = modulus
        self.factor = factor


class ElementFormatError(FieldError):
    pass


def _order_divisors(n: int) -> list[int]:
    order = (1 << n) - 1
    return [order // p for p in gf2x.prime_factors(order)] if order > 1 else []


@dataclass(frozen=True, eq=False)
class FieldCtx:
    degree: int
    modulus: int
    generator: int
    kind: str = "base"
    _exp: list = field(default=None, repr=False)
    _log: list = field(default=None, repr=False)
    trace_mask: int = field(default=0, repr=False)

    zero = 0
    one = 1

    @property
    def size(self) -> int:
        return 1 << self.degree

    @property
    def order(self) -> int:
        return (1 << self.degree) - 1

    def elements(self) -> range:
        return range(self.size)

    def contains(self, x) -> bool:
        return isinstance(x, (int, np.integer)) and 0 <= x < self.size

    # scalar arithmetic

    def add(self, x: int, y: int) -> int:
        return x ^ y

    def mul(self, x: int, y: int) -> int:
        if x == 0 or y == 0:
            return 0
        if self._exp is not None:
            return self._exp[self._log[x] + self._log[y]]
        return gf2x.mulmod(x, y, self.modulus)

    def sqr(self, x: int) -> int:
        return self.mul(x, x)

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        if self._exp is not None:
            return self._exp[self.order - self._log[x]]
        return gf2x.powmod(x, self.order - 1, self.modulus) if self.order > 1 else 1

    def div(self, x: int, y: int) -> int:
        return self.mul(x, self.inv(y))

    def pow(self, x: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(x), -e)
        if e == 0:
            return 1
        if x == 0:
            return 0
        if self._exp is not None:
            return self._exp[(self._log[x] * e) % self.order]
        return gf2x.powmod(x, e % self.order or self.order, self.modulus)

    def log(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("log of zero")
        if self._log is not None:
            return self._log[x]
        raise FieldError("discrete log needs tables (degree <= 16)")

    def trace(self, x: int) -> int:
        """Absolute trace to F2, as 0 or 1."""
        return (x & self.trace_mask).bit_count() & 1

    def sqrt(self, x: int) -> int:
        return self.pow(x, 1 << (self.degree - 1)) if self.degree > 1 else x

    def order_of(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("order of zero")
        n = self.order
        for p in gf2x.prime_factors(n):
            while n % p == 0 and self.pow(x, n // p) == 1:
                n //= p
        return n

    # vectorized arithmetic (numpy int64 arrays), tables required

    @property
    def vtables(self):
        return _vtables(self)

    def vmul(self, x, y):
        lg, ex = self.vtables
        return ex[lg[x] + lg[y]]

    def vinv(self, x):
        lg, ex = self.vtables
        if np.any(np.asarray(x) == 0):
            raise ZeroDivisionError("inverse of zero")
        return ex[self.order - lg[x]]

    def vpow(self, x, e: int):
        x = np.asarray(x)
        lg, ex = self.vtables
        if e == 0:
            return np.ones_like(x)
        r = ex[(lg[x] * (e % self.order)) % self.order]
        return np.where(x == 0, 0, r)

    def vtrace(self, x):
        x = np.asarray(x) & self.trace_mask
        out = np.zeros_like(x)
        while np.any(x):
            out ^= x & 1
            x = x >> 1
        return out

    def __repr__(self):
        return f"FieldCtx(2^{self.degree}, modulus={self.modulus:#x}, kind={self.kind})"


@lru_cache(maxsize=None)
def _vtables_cached(degree: int, modulus: int, generator: int):
    ctx_order = (1 << degree) - 1
    exp = np.zeros(4 * ctx_order + 2, dtype=np.int64)
    log = np.zeros(1 << degree, dtype=np.int64)
    x = 1
    for i in range(ctx_order):
        exp[i] = x
        exp[i + ctx_order] = x
        log[x] = i
        x = gf2x.mulmod(x, generator, modulus)
    # log(0) sentinel: any sum involving it lands in the zero-padded tail
    log[0] = 2 * ctx_order
    return log, exp


def _vtables(ctx: FieldCtx):
    if ctx.degree > TABLE_DEGREE:
        raise FieldError("vectorized arithmetic needs degree <= 16")
    return _vtables_cached(ctx.degree, ctx.modulus, ctx.generator)


def _build(modulus: int, kind: str) -> FieldCtx:
    n = gf2x.deg(modulus)
    order = (1 << n) - 1
    tables = None
    if n <= TABLE_DEGREE:
        tables = _find_generator_tables(modulus, n)
    if tables is not None:
        generator, exp, log = tables
    else:
        generator = _find_generator(modulus, n)
        exp = log = None
    tmask = 0
    for i in range(n):
        t = 0
        y = 1 << i
        for _ in range(n):
            t ^= y
            y = gf2x.mulmod(y, y, modulus)
        if t == 1:
            tmask |= 1 << i
        elif t != 0:
            raise AssertionError("trace landed outside F2")
    ctx = FieldCtx(n, modulus, generator, kind, exp, log, tmask)
    if ctx.order_of(generator) != order:
        raise AssertionError("generator check failed")
    return ctx


def _find_generator(modulus: int, n: int) -> int:
    order = (1 << n) - 1
    if order == 1:
        return 1
    divs = _order_divisors(n)
    for g in range(2, 1 << n):
        if all(gf2x.powmod(g, d, modulus) != 1 for d in divs):
            return g
    raise AssertionError("no generator found")


def _find_generator_tables(modulus: int, n: int):
    g = _find_generator(modulus, n)
    order = (1 << n) - 1
    exp = [0] * (2 * order + 1)
    log = [0] * (1 << n)
    x = 1
    for i in range(order):
        exp[i] = x
        exp[i + order] = x
        log[x] = i
        x = gf2x.mulmod(x, g, modulus)
    exp[2 * order] = exp[0] if order else 1
    return g, exp, log


@lru_cache(maxsize=None)
def canonical_modulus(n: int) -> int:
    """Smallest-encoded irreducible of degree n with nonzero constant term."""
    for m in range((1 << n) | 1, 1 << (n + 1), 2):
        if gf2x.is_irreducible(m):
            return m
    raise AssertionError("unreachable")


@lru_cache(maxsize=None)
def make_field(n: int) -> FieldCtx:
    if not isinstance(n, int) or not 1 <= n <= MAX_DEGREE:
        raise FieldError(f"degree must be in 1..{MAX_DEGREE}, got {n!r}")
    return _build(canonical_modulus(n), "base")


@lru_cache(maxsize=None)
def make_quotient_field(m: int) -> FieldCtx:
    if m < 2:
        raise FieldError("modulus must be nonconstant")
    n = gf2x.deg(m)
    if n > MAX_QUOTIENT_DEGREE:
        raise FieldError(f"quotient degree {n} exceeds {MAX_QUOTIENT_DEGREE}")
    factor = gf2x.nontrivial_factor(m)
    if factor is not None:
        raise ReducibleModulusError(m, factor)
    return _build(m, "quotient")


def modulus_registry(nmax: int = MAX_DEGREE) -> list[str]:
    return [f"{n}: {canonical_modulus(n):#x}" for n in range(1, nmax + 1)]


# quadratic extension


@dataclass(frozen=True, eq=False)
class ExtCtx:
    base: FieldCtx
    k0: int
    generator: tuple = (0, 1)

    zero = (0, 0)
    one = (1, 0)

    @property
    def q(self) -> int:
        return self.base.size

    @property
    def size(self) -> int:
        return self.q * self.q

    @property
    def order(self) -> int:
        return self.q * self.q - 1

    def elements(self):
        q = self.q
        for v in range(q):
            for u in range(q):
                yield (u, v)

    def encode_int(self, x) -> int:
        return x[0] | (x[1] << self.base.degree)

    def decode_int(self, e: int):
        return (e & (self.q - 1), e >> self.base.degree)

    def contains(self, x) -> bool:
        return (
            isinstance(x, tuple)
            and len(x) == 2
            and self.base.contains(x[0])
            and self.base.contains(x[1])
        )

    def embed(self, a: int):
        return (a, 0)

    def in_base(self, x) -> bool:
        return x[1] == 0

    def add(self, x, y):
        return (x[0] ^ y[0], x[1] ^ y[1])

    def mul(self, x, y):
        F = self.base
        m1 = F.mul(x[0], y[0])
        m2 = F.mul(x[1], y[1])
        m3 = F.mul(x[0] ^ x[1], y[0] ^ y[1])
        return (m1 ^ F.mul(self.k0, m2), m3 ^ m1)

    def frob(self, x):
        return (x[0] ^ x[1], x[1])

    def norm(self, x) -> int:
        F = self.base
        return F.mul(x[0], x[0] ^ x[1]) ^ F.mul(self.k0, F.mul(x[1], x[1]))

    def trace(self, x) -> int:
        return x[1]

    def inv(self, x):
        n = self.norm(x)
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        ni = self.base.inv(n)
        u, v = self.frob(x)
        return (self.base.mul(u, ni), self.base.mul(v, ni))

    def div(self, x, y):
        return self.mul(x, self.inv(y))

    def pow(self, x, e: int):
        if e < 0:
            return self.pow(self.inv(x), -e)
        r = (1, 0)
        while e:
            if e & 1:
                r = self.mul(r, x)
            x = self.mul(x, x)
            e >>= 1
        return r

    def pow_q_minus_1(self, x):
        """x^(q-1) as Frob(x)/x; x must be nonzero."""
        return self.div(self.frob(x), x)

    def trace_norm_frob(self, x):
        xq = self.frob(x)
        t = self.add(x, xq)
        nn = self.mul(x, xq)
        if t[1] != 0 or nn[1] != 0:
            raise AssertionError("trace or norm left the base field")
        return t[0], nn[0], xq

    def order_of(self, x) -> int:
        n = self.order
        for p in gf2x.prime_factors(n):
            while n % p == 0 and self.pow(x, n // p) == (1, 0):
                n //= p
        return n

    def enumerate_mu(self) -> list:
        h = self.pow(self.generator, self.q - 1)
        out = [(1, 0)]
        x = h
        while x != (1, 0):
            out.append(x)
            x = self.mul(x, h)
        if len(out) != self.q + 1:
            raise AssertionError("mu enumeration has wrong size")
        return out

    # vectorized pair arithmetic on numpy arrays

    def vmul(self, xu, xv, yu, yv):
        F = self.base
        m1 = F.vmul(xu, yu)
        m2 = F.vmul(xv, yv)
        m3 = F.vmul(xu ^ xv, yu ^ yv)
        return m1 ^ F.vmul(np.full_like(m2, self.k0), m2), m3 ^ m1

    def vnorm(self, u, v):
        F = self.base
        return F.vmul(u, u ^ v) ^ F.vmul(np.full_like(v, self.k0), F.vmul(v, v))

    def vinv(self, u, v):
        ni = self.base.vinv(self.vnorm(u, v))
        return self.base.vmul(u ^ v, ni), self.base.vmul(v, ni)

    def __repr__(self):
        return f"ExtCtx(q=2^{self.base.degree}, k0={self.k0:#x})"


@lru_cache(maxsize=None)
def make_quadratic_ext(base: FieldCtx) -> ExtCtx:
    if base.kind != "base":
        raise FieldError("quadratic extensions are built over base fields only")
    k0 = next(x for x in base.elements() if base.trace(x) == 1)
    probe = ExtCtx(base, k0)
    order = probe.order
    divs = [order // p for p in gf2x.prime_factors(order)]
    for e in range(2, probe.q * probe.q):
        g = probe.decode_int(e)
        if all(probe.pow(g, d) != (1, 0) for d in divs):
            return ExtCtx(base, k0, g)
    raise AssertionError("no generator of the extension found")


# element text format

_HEX = re.compile(r"0x[0-9a-fA-F]+\Z")


def encode_element(ctx, x) -> str:
    if isinstance(ctx, ExtCtx):
        return f"{x[0]:#x}:{x[1]:#x}"
    return f"{x:#x}"


def _parse_hex(text: str, ctx: FieldCtx) -> int:
    text = text.strip()
    if not _HEX.match(text):
        raise ElementFormatError(f"malformed element literal {text!r}")
    val = int(text, 16)
    if val >= ctx.size:
        raise ElementFormatError(f"{text} out of range for 2^{ctx.degree}")
    return val


def decode_element(ctx, text: str):
    if isinstance(ctx, ExtCtx):
        parts = text.split(":")
        if len(parts) != 2:
            raise ElementFormatError(f"extension literal must be 'u:v', got {text!r}")
        return (_parse_hex(parts[0], ctx.base), _parse_hex(parts[1], ctx.base))
    return _parse_hex(text, ctx)
