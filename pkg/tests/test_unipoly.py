import random

import pytest
from hypothesis import given, strategies as st

from trinperm import gf2x
from trinperm.fields import make_field, make_quadratic_ext
from trinperm.unipoly import (
    DEG_ZERO,
    UniPoly,
    count_roots,
    count_roots_enum,
    count_roots_frobenius,
    gcd,
    resultant,
    sylvester_resultant,
)

F2 = make_field(1)
F4 = make_field(2)
F256 = make_field(8)
W = 2  # a primitive cube root of unity in F4


def U(ctx, *cs):
    return UniPoly.from_coeffs(ctx, cs)


def from_bits(v):
    return UniPoly(F2, tuple((v >> i) & 1 for i in range(v.bit_length())))


def test_zero_degree_marker():
    assert UniPoly(F4, ()).degree == DEG_ZERO
    assert UniPoly(F4, (0, 0)).is_zero()


def test_eval_examples():
    assert U(F2, 1, 1, 0, 1).eval(1) == 1
    w2 = F4.sqr(W)
    assert U(F4, w2, 1, 0, 1).eval(W) == 0
    assert U(F4, 3).eval(2) == 3


def test_count_roots_examples():
    assert count_roots(U(F4, 1, 1, 0, 1)) == 0
    assert count_roots(U(F4, F4.sqr(W), 1, 0, 1)) >= 1
    for n in (2, 3, 5):
        F = make_field(n)
        xq_minus_x = UniPoly.monomial(F, F.size) + UniPoly.monomial(F, 1)
        assert count_roots(xq_minus_x) == F.size


def test_gcd_examples():
    a1 = from_bits(0b11)
    p = a1 * a1 * from_bits(0b1011)
    assert gcd(p, a1 * a1 * a1) == a1 * a1
    q = U(F256, 7, 3, 9)
    assert gcd(q, UniPoly(F256, ())) == q.monic()
    i5 = from_bits(0b100101)
    i7 = from_bits(0b10000011)
    assert gf2x.is_irreducible(0b100101) and gf2x.is_irreducible(0b10000011)
    assert gcd(i5, i7) == UniPoly.constant(F2, 1)


def test_resultant_linear():
    rng = random.Random(0)
    for _ in range(50):
        c, d = rng.randrange(256), rng.randrange(256)
        assert resultant(U(F256, c, 1), U(F256, d, 1)) == c ^ d


def _rand(ctx, rng, dmax):
    d = rng.randint(1, dmax)
    cs = [rng.randrange(ctx.size) for _ in range(d)] + [rng.randrange(1, ctx.size)]
    return UniPoly(ctx, tuple(cs))


def test_resultant_matches_sylvester():
    rng = random.Random(1)
    for _ in range(100):
        p, q = _rand(F256, rng, 6), _rand(F256, rng, 6)
        assert resultant(p, q) == sylvester_resultant(p, q)


def test_resultant_zero_iff_common_factor():
    rng = random.Random(2)
    F8 = make_field(3)
    for _ in range(200):
        p, q = _rand(F8, rng, 4), _rand(F8, rng, 4)
        assert (resultant(p, q) == 0) == (gcd(p, q).degree > 0)


def test_root_count_methods_agree_on_extension():
    E = make_quadratic_ext(make_field(3))
    rng = random.Random(4)
    for _ in range(40):
        cs = tuple((rng.randrange(8), rng.randrange(8)) for _ in range(4)) + (E.one,)
        p = UniPoly(E, cs)
        assert count_roots_enum(p) == count_roots_frobenius(p)


# -- properties -------------------------------------------------------------

ctxs = st.sampled_from([F2, F4, make_field(3), make_field(5), F256])


@st.composite
def poly_pair(draw):
    ctx = draw(ctxs)
    el = st.integers(0, ctx.size - 1)
    p = UniPoly(ctx, tuple(draw(st.lists(el, min_size=1, max_size=7))))
    q = UniPoly(ctx, tuple(draw(st.lists(el, min_size=1, max_size=7))))
    r = UniPoly(ctx, tuple(draw(st.lists(el, min_size=1, max_size=5))))
    return ctx, p, q, r


@given(poly_pair())
def test_root_methods_agree(args):
    _, p, _, _ = args
    if not p.is_zero():
        assert count_roots_enum(p) == count_roots_frobenius(p)


@given(poly_pair())
def test_gcd_divides(args):
    _, p, q, _ = args
    if p.is_zero() and q.is_zero():
        return
    g = gcd(p, q)
    assert (p % g).is_zero() and (q % g).is_zero()


@given(poly_pair())
def test_resultant_multiplicative(args):
    ctx, p, q, r = args
    if p.is_zero() or q.is_zero() or r.is_zero():
        return
    assert resultant(p * r, q) == ctx.mul(resultant(p, q), resultant(r, q))


@given(poly_pair())
def test_text_roundtrip(args):
    ctx, p, _, _ = args
    assert UniPoly.from_text(ctx, p.to_text()) == p


def test_divmod_by_zero():
    with pytest.raises(ZeroDivisionError):
        U(F4, 1, 1).divmod(UniPoly(F4, ()))
