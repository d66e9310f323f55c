import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from trinperm import gf2x
from trinperm.fields import (
    ElementFormatError,
    FieldError,
    ReducibleModulusError,
    decode_element,
    encode_element,
    make_field,
    make_quadratic_ext,
    make_quotient_field,
)


def _no_roots_brute(m: int) -> bool:
    # a cubic over F2 is irreducible iff it has no root in F2
    return all(sum(((m >> i) & 1) * (x ** i) for i in range(4)) % 2 for x in (0, 1))


def test_small_moduli():
    assert make_field(2).modulus == 0b111
    f1 = make_field(1)
    assert (f1.modulus, f1.generator) == (0b11, 1)
    cubic = next(m for m in range(8, 16) if _no_roots_brute(m))
    assert make_field(3).modulus == cubic


def test_quotient_fields():
    t12 = gf2x.from_exponents([7, 6, 5, 4, 3, 2, 0])
    assert make_quotient_field(t12).size == 1 << 7
    assert make_quotient_field(0b111).size == 4
    with pytest.raises(ReducibleModulusError) as err:
        make_quotient_field(0b101)
    assert err.value.factor == 0b11


def test_field_degree_limits():
    with pytest.raises(FieldError):
        make_field(0)
    with pytest.raises(FieldError):
        make_field(25)


def test_quadratic_ext_constants():
    assert make_quadratic_ext(make_field(1)).k0 == 1
    f4 = make_field(2)
    traces = {x: f4.trace(x) for x in f4.elements()}
    assert make_quadratic_ext(f4).k0 == min(x for x, t in traces.items() if t == 1) == 2


def test_small_arithmetic():
    f4 = make_field(2)
    assert f4.mul(0b10, 0b10) == 0b11
    f8 = make_field(3)
    g = f8.generator
    assert f8.pow(g, 7) == 1
    assert all(f8.pow(g, k) != 1 for k in range(1, 7))


@pytest.mark.parametrize("n", [4, 8])
def test_frobenius_is_swap(n):
    E = make_quadratic_ext(make_field(n))
    rng = random.Random(n)
    for _ in range(200):
        x = (rng.randrange(E.q), rng.randrange(E.q))
        assert E.pow(x, E.q) == E.frob(x)


def test_trace_norm_of_z():
    for n in (2, 3, 8):
        E = make_quadratic_ext(make_field(n))
        tr, nm, _ = E.trace_norm_frob((0, 1))
        assert (tr, nm) == (1, E.k0)
        assert E.trace((0, 1)) == 1
        x = (5 % E.q, 0)
        tr, nm, _ = E.trace_norm_frob(x)
        assert (tr, nm) == (0, E.base.sqr(x[0]))


def test_norm_multiplicative_f256():
    E = make_quadratic_ext(make_field(8))
    rng = random.Random(1)
    for _ in range(500):
        x = (rng.randrange(256), rng.randrange(256))
        y = (rng.randrange(256), rng.randrange(256))
        assert E.norm(E.mul(x, y)) == E.base.mul(E.norm(x), E.norm(y))


@pytest.mark.parametrize("n", [2, 3, 5])
def test_enumerate_mu(n):
    E = make_quadratic_ext(make_field(n))
    mu = E.enumerate_mu()
    assert len(mu) == E.q + 1 == len(set(mu))
    assert (1, 0) in mu
    assert all(E.pow(x, E.q + 1) == (1, 0) for x in mu)
    assert {E.inv(x) for x in mu} == set(mu)
    assert [x for x in mu if x[1] == 0] == [(1, 0)]


def test_element_io():
    f4 = make_field(2)
    assert encode_element(f4, 2) == "0x2"
    assert decode_element(f4, "0x2") == 2
    E = make_quadratic_ext(make_field(4))
    assert encode_element(E, (2, 1)) == "0x2:0x1"
    assert decode_element(E, "0x2:0x1") == (2, 1)
    with pytest.raises(ElementFormatError):
        decode_element(f4, "0x1z")
    with pytest.raises(ElementFormatError):
        decode_element(f4, "0x4")


def test_quotient_matches_base_field():
    F = make_field(8)
    Q = make_quotient_field(F.modulus)
    rng = random.Random(3)
    for _ in range(300):
        x, y = rng.randrange(256), rng.randrange(1, 256)
        assert Q.mul(x, y) == F.mul(x, y)
        assert Q.inv(y) == F.inv(y)


@pytest.mark.parametrize("n", [6, 10, 12])
def test_vectorized_matches_scalar(n):
    F = make_field(n)
    rng = np.random.default_rng(n)
    x = rng.integers(0, F.size, 2000)
    y = rng.integers(1, F.size, 2000)
    assert [F.mul(int(a), int(b)) for a, b in zip(x, y)] == F.vmul(x, y).tolist()
    assert [F.inv(int(b)) for b in y] == F.vinv(y).tolist()
    assert [F.pow(int(a), 5) for a in x] == F.vpow(x, 5).tolist()
    assert [F.trace(int(a)) for a in x] == F.vtrace(x).tolist()


# -- properties -------------------------------------------------------------

fields = st.sampled_from([1, 2, 3, 7, 8, 13, 16, 20])


@given(fields, st.data())
def test_axioms(n, data):
    F = make_field(n)
    x, y, z = (data.draw(st.integers(0, F.size - 1)) for _ in range(3))
    assert F.mul(x, y) == F.mul(y, x)
    assert F.mul(F.mul(x, y), z) == F.mul(x, F.mul(y, z))
    assert F.mul(x, y ^ z) == F.mul(x, y) ^ F.mul(x, z)
    if x:
        assert F.mul(x, F.inv(x)) == 1


@given(fields, st.data())
def test_trace_properties(n, data):
    F = make_field(n)
    x, y = (data.draw(st.integers(0, F.size - 1)) for _ in range(2))
    assert F.trace(x ^ y) == F.trace(x) ^ F.trace(y)
    assert F.trace(F.sqr(x)) == F.trace(x)


@pytest.mark.parametrize("n", [1, 3, 8])
def test_trace_surjective(n):
    F = make_field(n)
    assert {F.trace(x) for x in F.elements()} == {0, 1}


@given(st.sampled_from([2, 4, 8, 10]), st.data())
def test_ext_frobenius_properties(n, data):
    E = make_quadratic_ext(make_field(n))
    el = st.tuples(st.integers(0, E.q - 1), st.integers(0, E.q - 1))
    x, y = data.draw(el), data.draw(el)
    assert E.frob(E.add(x, y)) == E.add(E.frob(x), E.frob(y))
    assert E.frob(E.mul(x, y)) == E.mul(E.frob(x), E.frob(y))
    assert E.frob(E.frob(x)) == x
    if x != E.zero:
        assert E.mul(x, E.inv(x)) == E.one
        assert E.pow_q_minus_1(x) == E.pow(x, E.q - 1)
