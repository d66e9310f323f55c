"""Polynomials over F2 packed into Python ints (bit i = coefficient of x^i)."""

from __future__ import annotations


def deg(p: int) -> int:
    return p.bit_length() - 1


def mul(a: int, b: int) -> int:
    if a.bit_count() > b.bit_count():
        a, b = b, a
    r = 0
    while a:
        low = a & -a
        r ^= b << (low.bit_length() - 1)
        a ^= low
    return r


def sqr(a: int) -> int:
    r = 0
    i = 0
    while a:
        if a & 1:
            r |= 1 << (2 * i)
        a >>= 1
        i += 1
    return r


def divmod_(a: int, b: int) -> tuple[int, int]:
    if b == 0:
        raise ZeroDivisionError("division by the zero polynomial")
    db = b.bit_length()
    q = 0
    while a.bit_length() >= db:
        s = a.bit_length() - db
        q ^= 1 << s
        a ^= b << s
    return q, a


def mod(a: int, b: int) -> int:
    if b == 0:
        raise ZeroDivisionError("division by the zero polynomial")
    db = b.bit_length()
    while a.bit_length() >= db:
        a ^= b << (a.bit_length() - db)
    return a


def gcd(a: int, b: int) -> int:
    while b:
        a, b = b, mod(a, b)
    return a


def mulmod(a: int, b: int, m: int) -> int:
    # reduce as we go so intermediates stay below 2*deg(m) bits
    dm = m.bit_length()
    r = 0
    a = mod(a, m)
    b = mod(b, m)
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a.bit_length() == dm:
            a ^= m
    return r


def powmod(a: int, e: int, m: int) -> int:
    r = mod(1, m)
    a = mod(a, m)
    while e:
        if e & 1:
            r = mulmod(r, a, m)
        a = mulmod(a, a, m)
        e >>= 1
    return r


def prime_factors(n: int) -> list[int]:
    fs = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            fs.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        fs.append(n)
    return fs


def nontrivial_factor(m: int) -> int | None:
    """Return a proper factor of ``m`` if it is reducible, else None.

    Ben-Or style: the smallest-degree irreducible factor divides x^(2^i) - x
    for the first i where the gcd is nontrivial.
    """
    n = deg(m)
    if n < 1:
        raise ValueError("constant polynomial")
    if n == 1:
        return None
    if m & 1 == 0:
        return 0b10
    x = 0b10
    t = x
    for i in range(1, n // 2 + 1):
        t = mulmod(t, t, m)
        g = gcd(m, t ^ x)
        if g != 1:
            if g == m:
                # all factors share degree i; peel one off by equal-degree split
                return _split_equal_degree(m, i)
            return g
    return None


def _split_equal_degree(m: int, d: int) -> int:
    # Cantor-Zassenhaus for characteristic 2 with deterministic trial elements
    n = deg(m)
    r = 0b11
    while True:
        # trace map T(r) = r + r^2 + ... + r^(2^(d-1)) computed in F2[x]/(m)
        acc = r
        t = r
        for _ in range(d - 1):
            t = mulmod(t, t, m)
            acc ^= t
        g = gcd(m, acc)
        if 0 < deg(g) < n:
            return g
        r += 1
        if deg(r) >= n:
            raise ArithmeticError("equal-degree split failed")


def is_irreducible(m: int) -> bool:
    return deg(m) >= 1 and nontrivial_factor(m) is None


def from_exponents(exps) -> int:
    r = 0
    for e in exps:
        r ^= 1 << e
    return r


def exponents(p: int) -> list[int]:
    out = []
    while p:
        low = p & -p
        out.append(low.bit_length() - 1)
        p ^= low
    return out


def to_str(p: int, var: str = "x") -> str:
    if p == 0:
        return "0"
    parts = []
    for e in sorted(exponents(p), reverse=True):
        parts.append("1" if e == 0 else var if e == 1 else f"{var}^{e}")
    return "+".join(parts)
