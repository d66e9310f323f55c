"""Sparse multivariate polynomials over F2.

A polynomial is a set of monomials. Each monomial is packed into one int with
16 bits per variable, first variable in the most significant field, so plain
integer order on the packed form is lexicographic order on exponent vectors.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from functools import reduce
from operator import or_

import numpy as np

from . import gf2x

FIELD_BITS = 16
FIELD_MASK = (1 << FIELD_BITS) - 1
MAX_EXP = FIELD_MASK
CANONICAL_ORDER = ("a", "b", "b1", "k", "z", "Y")
NUMPY_MUL_THRESHOLD = 4096

_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


class PolyParseError(ValueError):
    pass


def var_key(name: str):
    if name in CANONICAL_ORDER:
        return (0, CANONICAL_ORDER.index(name), "")
    return (1, 0, name)


def sort_vars(names) -> tuple:
    return tuple(sorted(set(names), key=var_key))


def _shifts(n: int) -> list[int]:
    return [FIELD_BITS * (n - 1 - i) for i in range(n)]


def pack(exps, n: int | None = None) -> int:
    n = len(exps) if n is None else n
    m = 0
    for e in exps:
        if e < 0 or e > MAX_EXP:
            raise OverflowError(f"exponent {e} outside 0..{MAX_EXP}")
        m = (m << FIELD_BITS) | e
    return m


def unpack(m: int, n: int) -> tuple:
    out = [0] * n
    for i in range(n - 1, -1, -1):
        out[i] = m & FIELD_MASK
        m >>= FIELD_BITS
    return tuple(out)


@dataclass(frozen=True)
class MvPoly:
    variables: tuple
    terms: frozenset

    # -- construction -----------------------------------------------------
    @staticmethod
    def _make(variables: tuple, terms) -> "MvPoly":
        """Build and drop variables that do not occur."""
        terms = terms if isinstance(terms, frozenset) else frozenset(terms)
        n = len(variables)
        if n == 0:
            return MvPoly((), terms)
        used = reduce(or_, terms, 0)
        keep = [i for i, s in enumerate(_shifts(n)) if (used >> s) & FIELD_MASK]
        if len(keep) == n:
            return MvPoly(variables, terms)
        return _repack(MvPoly(variables, terms), tuple(variables[i] for i in keep), keep)

    @classmethod
    def zero(cls) -> "MvPoly":
        return cls((), frozenset())

    @classmethod
    def one(cls) -> "MvPoly":
        return cls((), frozenset([0]))

    @classmethod
    def const(cls, c: int) -> "MvPoly":
        return cls.one() if c & 1 else cls.zero()

    @classmethod
    def var(cls, name: str, power: int = 1) -> "MvPoly":
        if not _NAME_RE.match(name):
            raise PolyParseError(f"bad variable name {name!r}")
        if power == 0:
            return cls.one()
        return cls((name,), frozenset([pack((power,))]))

    @classmethod
    def from_exponents(cls, variables, exps) -> "MvPoly":
        variables = tuple(variables)
        order = sort_vars(variables)
        if len(order) != len(variables):
            raise ValueError("repeated variable")
        perm = [variables.index(v) for v in order]
        cnt = Counter(pack([e[i] for i in perm]) for e in exps)
        return cls._make(order, frozenset(m for m, c in cnt.items() if c & 1))

    @classmethod
    def from_univariate(cls, p: int, var: str) -> "MvPoly":
        return cls._make((var,), frozenset(gf2x.exponents(p)))

    # -- inspection -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self.terms == frozenset([0])

    def __len__(self) -> int:
        return len(self.terms)

    def exponents(self) -> list[tuple]:
        """Exponent vectors, descending lexicographic."""
        n = len(self.variables)
        return [unpack(m, n) for m in sorted(self.terms, reverse=True)]

    def degree(self, var: str) -> int:
        """Degree in ``var``; -1 for the zero polynomial, 0 if var is absent."""
        if not self.terms:
            return -1
        if var not in self.variables:
            return 0
        s = _shifts(len(self.variables))[self.variables.index(var)]
        return max((m >> s) & FIELD_MASK for m in self.terms)

    def degrees(self) -> dict:
        return {v: self.degree(v) for v in self.variables}

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.exponents())

    def __eq__(self, other) -> bool:
        return isinstance(other, MvPoly) and self.variables == other.variables and self.terms == other.terms

    def __hash__(self):
        return hash((self.variables, self.terms))

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other: "MvPoly") -> "MvPoly":
        if isinstance(other, int):
            other = MvPoly.const(other)
        a, b = _align(self, other)
        return MvPoly._make(a.variables, a.terms ^ b.terms)

    __radd__ = __add__
    __sub__ = __add__

    def __mul__(self, other: "MvPoly") -> "MvPoly":
        if isinstance(other, int):
            return self if other & 1 else MvPoly.zero()
        if not self.terms or not other.terms:
            return MvPoly.zero()
        a, b = _align(self, other)
        if len(a.terms) > len(b.terms):
            a, b = b, a
        n = len(a.variables)
        if n > 0:
            da, db = _maxdegs(a), _maxdegs(b)
            if any(x + y > MAX_EXP for x, y in zip(da, db)):
                raise OverflowError("product degree exceeds packed exponent range")
        if len(a.terms) == 1:
            (t,) = a.terms
            return MvPoly(a.variables, frozenset(t + m for m in b.terms))
        if len(a.terms) * len(b.terms) >= NUMPY_MUL_THRESHOLD:
            return _mul_numpy(a, b)
        cnt = Counter(x + y for x in a.terms for y in b.terms)
        return MvPoly(a.variables, frozenset(m for m, c in cnt.items() if c & 1))

    __rmul__ = __mul__

    def square(self) -> "MvPoly":
        # Frobenius: cross terms cancel in characteristic 2
        if any(d * 2 > MAX_EXP for d in _maxdegs(self)):
            raise OverflowError("square degree exceeds packed exponent range")
        return MvPoly(self.variables, frozenset(2 * m for m in self.terms))

    def __pow__(self, e: int) -> "MvPoly":
        if e < 0:
            raise ValueError("negative power")
        result = MvPoly.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base.square()
        return result

    # -- structure --------------------------------------------------------
    def collect(self, var: str) -> list["MvPoly"]:
        """Coefficients by degree in ``var``; sum(c_i * var^i) == self."""
        if not self.terms:
            return []
        if var not in self.variables:
            return [self]
        n = len(self.variables)
        i = self.variables.index(var)
        s = _shifts(n)[i]
        buckets: dict[int, list[int]] = {}
        clear = ~(FIELD_MASK << s)
        for m in self.terms:
            buckets.setdefault((m >> s) & FIELD_MASK, []).append(m & clear)
        top = max(buckets)
        return [MvPoly._make(self.variables, frozenset(buckets.get(d, ()))) for d in range(top + 1)]

    @staticmethod
    def from_collected(var: str, coeffs) -> "MvPoly":
        out = MvPoly.zero()
        x = MvPoly.var(var)
        for c in reversed(list(coeffs)):
            out = out * x + c
        return out

    def leading_coeff(self, var: str) -> "MvPoly":
        c = self.collect(var)
        return c[-1] if c else MvPoly.zero()

    def to_univariate(self, var: str) -> int:
        """Pack a polynomial in ``var`` alone into a gf2x int."""
        if not self.terms:
            return 0
        if set(self.variables) - {var}:
            raise ValueError(f"polynomial is not univariate in {var}: {self.variables}")
        if not self.variables:
            return 1
        return gf2x.from_exponents(self.terms)

    # -- substitution -----------------------------------------------------
    def substitute(self, bindings: dict, ctx: "AlgebraicContext | None" = None) -> "MvPoly":
        """Simultaneous substitution of polynomials for variables."""
        bindings = {v: _as_poly(p) for v, p in bindings.items()}
        for v, p in bindings.items():
            if v in p.variables:
                raise ValueError(f"binding for {v} mentions {v}; substitution would not terminate")
        live = [v for v in bindings if v in self.variables]
        out = self
        if live:
            clash = any(w in bindings[v].variables for v in live for w in live)
            if clash:
                tmp = {v: MvPoly.var(f"zz_tmp_{i}") for i, v in enumerate(live)}
                out = out.substitute(tmp)
                bindings = {f"zz_tmp_{i}": bindings[v] for i, v in enumerate(live)}
                live = list(bindings)
            for v in live:
                out = _horner_substitute(out, v, bindings[v])
        if ctx is not None:
            out = ctx.reduce(out)
        return out

    def substitute_fraction(self, var: str, num: "MvPoly", den: "MvPoly") -> tuple["MvPoly", int]:
        """den^D * self(var = num/den) with D = deg_var(self); returns (poly, D)."""
        num, den = _as_poly(num), _as_poly(den)
        if var in num.variables or var in den.variables:
            raise ValueError(f"fraction for {var} mentions {var}")
        coeffs = self.collect(var)
        if not coeffs:
            return MvPoly.zero(), 0
        d = len(coeffs) - 1
        # Horner on the homogenised form: sum c_j num^j den^(d-j)
        out = coeffs[d]
        for j in range(d - 1, -1, -1):
            out = out * num + coeffs[j] * den ** (d - j)
        return out, d

    # -- text -------------------------------------------------------------
    def serialize(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in self.exponents():
            fs = [v if x == 1 else f"{v}^{x}" for v, x in zip(self.variables, e) if x]
            parts.append("*".join(fs) if fs else "1")
        return "+".join(parts)

    __str__ = serialize

    def __repr__(self):
        s = self.serialize()
        return f"MvPoly({s if len(s) < 200 else s[:200] + '...'})"


def _as_poly(p) -> MvPoly:
    if isinstance(p, MvPoly):
        return p
    if isinstance(p, int):
        return MvPoly.const(p)
    if isinstance(p, str):
        return parse(p)
    raise TypeError(f"cannot treat {type(p).__name__} as a polynomial")


def _maxdegs(p: MvPoly) -> list[int]:
    n = len(p.variables)
    if not p.terms:
        return [0] * n
    if n <= 4:
        arr = np.fromiter(p.terms, dtype=np.uint64, count=len(p.terms))
        return [int(((arr >> np.uint64(s)) & np.uint64(FIELD_MASK)).max()) for s in _shifts(n)]
    out = [0] * n
    for m in p.terms:
        for i, x in enumerate(unpack(m, n)):
            if x > out[i]:
                out[i] = x
    return out


def _repack(p: MvPoly, variables: tuple, src_index) -> MvPoly:
    """Re-encode p into ``variables``; src_index[j] = position in p.variables or None."""
    n_old = len(p.variables)
    shifts_old = _shifts(n_old)
    n_new = len(variables)
    shifts_new = _shifts(n_new)
    moves = [(shifts_old[i], shifts_new[j]) for j, i in enumerate(src_index) if i is not None]
    out = []
    for m in p.terms:
        r = 0
        for so, sn in moves:
            r |= ((m >> so) & FIELD_MASK) << sn
        out.append(r)
    return MvPoly(variables, frozenset(out))


def _align(a: MvPoly, b: MvPoly) -> tuple[MvPoly, MvPoly]:
    if a.variables == b.variables:
        return a, b
    union = sort_vars(a.variables + b.variables)

    def lift(p):
        if p.variables == union:
            return p
        idx = [p.variables.index(v) if v in p.variables else None for v in union]
        return _repack(p, union, idx)

    return lift(a), lift(b)


def exponent_matrix(p: MvPoly) -> np.ndarray:
    n = len(p.variables)
    if n == 0 or not p.terms:
        return np.zeros((len(p.terms), n), dtype=np.int64)
    if n <= 4:
        arr = np.fromiter(p.terms, dtype=np.uint64, count=len(p.terms))
        return np.stack([((arr >> np.uint64(s)) & np.uint64(FIELD_MASK)).astype(np.int64) for s in _shifts(n)], axis=1)
    return np.array([unpack(m, n) for m in p.terms], dtype=np.int64)


def from_exponent_matrix(variables: tuple, mat: np.ndarray) -> MvPoly:
    """Inverse of exponent_matrix; rows must be distinct."""
    n = len(variables)
    if n <= 4:
        packed = np.zeros(mat.shape[0], dtype=np.uint64)
        for i, s in enumerate(_shifts(n)):
            packed |= mat[:, i].astype(np.uint64) << np.uint64(s)
        return MvPoly._make(variables, frozenset(packed.tolist()))
    return MvPoly._make(variables, frozenset(pack(row) for row in mat.tolist()))


def _odd_multiplicity(keys: np.ndarray) -> np.ndarray:
    keys.sort()
    if keys.size == 0:
        return keys
    # run boundaries of the sorted keys; keep runs of odd length
    edge = np.flatnonzero(np.diff(keys)) + 1
    starts = np.concatenate(([0], edge))
    lengths = np.diff(np.concatenate((starts, [keys.size])))
    return keys[starts[(lengths & 1) == 1]]


def _mul_numpy(a: MvPoly, b: MvPoly) -> MvPoly:
    n = len(a.variables)
    da, db = _maxdegs(a), _maxdegs(b)
    widths = [max(int(x + y).bit_length(), 1) for x, y in zip(da, db)]
    if sum(widths) > 63:
        cnt = Counter(x + y for x in a.terms for y in b.terms)
        return MvPoly(a.variables, frozenset(m for m, c in cnt.items() if c & 1))
    shifts = []
    acc = 0
    for w in reversed(widths):
        shifts.append(acc)
        acc += w
    shifts.reverse()

    def compact(p):
        mat = exponent_matrix(p)
        out = np.zeros(mat.shape[0], dtype=np.int64)
        for i in range(n):
            out |= mat[:, i] << shifts[i]
        return out

    ka, kb = compact(a), compact(b)
    chunk = max(1, (1 << 22) // max(kb.size, 1))
    result = np.zeros(0, dtype=np.int64)
    for s in range(0, ka.size, chunk):
        part = (ka[s:s + chunk, None] + kb[None, :]).ravel()
        result = np.setxor1d(result, _odd_multiplicity(part), assume_unique=True)
    mat = np.stack([(result >> shifts[i]) & ((1 << widths[i]) - 1) for i in range(n)], axis=1)
    return from_exponent_matrix(a.variables, mat)


def _horner_substitute(p: MvPoly, var: str, value: MvPoly) -> MvPoly:
    coeffs = p.collect(var)
    out = MvPoly.zero()
    for c in reversed(coeffs):
        out = out * value + c
    return out


@dataclass(frozen=True)
class AlgebraicContext:
    """Rewrite rules var^degree -> replacement, with deg_var(replacement) < degree."""

    relations: tuple  # of (var, degree, MvPoly)

    def __post_init__(self):
        for var, d, rep in self.relations:
            if d < 1 or rep.degree(var) >= d:
                raise ValueError(f"relation for {var} does not lower its degree")

    @classmethod
    def quadratic(cls, var: str, linear: MvPoly, const: MvPoly) -> "AlgebraicContext":
        """var^2 + linear*var + const = 0, i.e. var^2 -> linear*var + const."""
        return cls(((var, 2, linear * MvPoly.var(var) + const),))

    def reduce(self, p: MvPoly) -> MvPoly:
        for var, d, rep in self.relations:
            if p.degree(var) < d:
                continue
            coeffs = p.collect(var)
            rc = rep.collect(var)
            for j in range(len(coeffs) - 1, d - 1, -1):
                c = coeffs[j]
                if c.is_zero():
                    continue
                coeffs[j] = MvPoly.zero()
                for i, r in enumerate(rc):
                    if not r.is_zero():
                        coeffs[j - d + i] = coeffs[j - d + i] + c * r
            p = MvPoly.from_collected(var, coeffs[:d])
        return p


def pseudo_divrem(f: MvPoly, g: MvPoly, var: str, check: bool = False) -> tuple[int, MvPoly, MvPoly]:
    """(e, Q, R) with lc(g)^e * f = Q*g + R and deg_var R < deg_var g.

    e is fixed at max(deg f - deg g + 1, 0), the classical pseudo-division count.
    """
    m = g.degree(var)
    if m < 1:
        raise ValueError(f"divisor has no positive degree in {var}")
    fc = f.collect(var)
    gc = g.collect(var)
    lc = gc[-1]
    n = len(fc) - 1
    e = max(n - m + 1, 0)
    if e == 0:
        return 0, MvPoly.zero(), f
    r = list(fc)
    q = [MvPoly.zero()] * (n - m + 1)
    for s in range(n - m, -1, -1):
        c = r[s + m]
        # multiply everything accumulated so far by lc, then cancel the top term
        r = [x * lc for x in r[: s + m]]
        q = [x * lc for x in q]
        q[s] = c
        for j, y in enumerate(gc[:-1]):
            if not y.is_zero() and not c.is_zero():
                r[s + j] = r[s + j] + c * y
    Q = MvPoly.from_collected(var, q)
    R = MvPoly.from_collected(var, r)
    if check and lc ** e * f != Q * g + R:
        raise ArithmeticError("pseudo-division identity failed")
    return e, Q, R


def prem(f: MvPoly, g: MvPoly, var: str) -> MvPoly:
    return pseudo_divrem(f, g, var)[2]


def evaluate(p: MvPoly, field, values: dict) -> int:
    """Evaluate at field elements (ints in a FieldCtx); all variables must be bound."""
    missing = set(p.variables) - set(values)
    if missing:
        raise ValueError(f"unbound variables {sorted(missing)}")
    xs = [values[v] for v in p.variables]
    acc = 0
    cache: dict = {}
    for e in p.exponents():
        t = 1
        for i, d in enumerate(e):
            if d:
                key = (i, d)
                if key not in cache:
                    cache[key] = field.pow(xs[i], d)
                t = field.mul(t, cache[key])
        acc ^= t
    return acc


# -- text -------------------------------------------------------------------

_FACTOR_RE = re.compile(r"\s*([A-Za-z][A-Za-z0-9_]*)\s*(?:\^\s*(\d+))?\s*\Z")


def parse(text: str, allowed=None) -> MvPoly:
    """Parse the '+'/'*'/'^' grammar; duplicate terms cancel."""
    if text is None:
        raise PolyParseError("no text")
    body = text.strip()
    if not body:
        raise PolyParseError("empty polynomial text")
    if body == "0":
        return MvPoly.zero()
    allowed = None if allowed is None else set(allowed)
    rows: list[dict] = []
    for raw in body.split("+"):
        term = raw.strip()
        if not term:
            raise PolyParseError(f"empty term in {text!r}")
        exps: dict[str, int] = {}
        for fac in term.split("*"):
            if fac.strip() == "1":
                continue
            m = _FACTOR_RE.match(fac)
            if not m:
                raise PolyParseError(f"malformed factor {fac.strip()!r}")
            name, e = m.group(1), m.group(2)
            if allowed is not None and name not in allowed:
                raise PolyParseError(f"unknown variable {name!r}")
            e = 1 if e is None else int(e)
            if e > MAX_EXP:
                raise PolyParseError(f"exponent {e} too large")
            exps[name] = exps.get(name, 0) + e
        rows.append(exps)
    names = sort_vars(v for r in rows for v in r)
    return MvPoly.from_exponents(names, [tuple(r.get(v, 0) for v in names) for r in rows])


def P(text: str) -> MvPoly:
    """Short alias used by catalog code and tests."""
    return parse(text)


def expand_factors(factors) -> MvPoly:
    """Multiply out [(poly, exponent), ...]; strings are parsed."""
    out = MvPoly.one()
    for f, e in factors:
        out = out * _as_poly(f) ** e
    return out


def verify_factorization(lhs: MvPoly, factors) -> tuple[bool, MvPoly]:
    """Check a stated factorization by expansion; returns (equal, expanded product)."""
    rhs = expand_factors(factors)
    return lhs == rhs, rhs
