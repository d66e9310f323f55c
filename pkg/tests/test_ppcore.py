import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from trinperm.fields import make_field
from trinperm.pp_core import (
    DegenerateQuartic,
    QuarticSpec,
    criterion_batch,
    criterion_thm11,
    eval_f,
    eval_f_naive,
    extension,
    fiber_quartic,
    is_pp_exhaustive,
    is_pp_mu,
    is_pp_mu_batch,
    is_pp_mu_scalar,
    lw_cubic_irreducible,
    lw_unique_root,
    make_trinomial,
    phi,
    quartic_coefficients,
    quartic_uniqueness_scan,
    transport_fiber,
)


def all_instances(n):
    E = extension(n)
    for a in range(1, E.q):
        for bu in range(E.q):
            for bv in range(E.q):
                if (bu, bv) != (0, 0):
                    yield make_trinomial(E, a, (bu, bv))


def test_make_trinomial_validation():
    E = extension(2)
    inst = make_trinomial(E, 1, (1, 0))
    assert inst.q == 4 and inst.b_in_base
    assert make_trinomial(E, (1, 0), (1, 0)) == inst
    for a, b in [(0, (1, 0)), (1, (0, 0)), (4, (1, 0)), ((1, 1), (1, 0)), (1, (4, 0))]:
        with pytest.raises(ValueError):
            make_trinomial(E, a, b)


def test_small_q_example():
    E = extension(2)
    assert is_pp_exhaustive(make_trinomial(E, 1, (1, 0)))
    assert not is_pp_exhaustive(make_trinomial(E, 2, (2, 0)))


def test_eval_f_matches_naive():
    E = extension(4)
    rng = random.Random(7)
    for _ in range(200):
        inst = make_trinomial(E, rng.randrange(1, 16), (rng.randrange(16), rng.randrange(1, 16)))
        for _ in range(50):
            x = (rng.randrange(16), rng.randrange(16))
            assert eval_f(inst, x) == eval_f_naive(inst, x)


@pytest.mark.parametrize("n", [2, 3])
def test_oracles_agree(n):
    for inst in all_instances(n):
        want = is_pp_exhaustive(inst)
        assert is_pp_mu(inst) == is_pp_mu_scalar(inst) == criterion_thm11(inst) == want


def test_batch_matches_scalar():
    E = extension(5)
    rng = np.random.default_rng(3)
    a = rng.integers(1, 32, 400)
    bu, bv = rng.integers(0, 32, 400), rng.integers(0, 32, 400)
    bv[bu + bv == 0] = 1
    a[:40], bu[:40], bv[:40] = np.arange(1, 41) % 31 + 1, np.arange(1, 41) % 31 + 1, 0  # some diagonal pairs
    mu = is_pp_mu_batch(E, a, bu, bv)
    crit = criterion_batch(E, a, bu, bv)
    for i in range(400):
        inst = make_trinomial(E, int(a[i]), (int(bu[i]), int(bv[i])))
        assert mu[i] == is_pp_mu_scalar(inst)
        assert crit[i] == criterion_thm11(inst)
    assert mu.any()


def test_exhaustive_chunking():
    E = extension(3)
    for inst in list(all_instances(3))[::37]:
        assert is_pp_exhaustive(inst, chunk=5) == is_pp_exhaustive(inst)


def test_root_of_inner_factor_in_mu_blocks_pp():
    # 1 + a x + b x^3 vanishing at some x of the subgroup makes f1 hit 0 there
    E = extension(3)
    for inst in all_instances(3):
        hit = any(E.add(E.add(E.one, E.mul(inst.a, x)), E.mul(inst.b, E.pow(x, 3))) == E.zero
                  for x in inst.mu)
        if hit:
            assert not is_pp_mu(inst)


def test_phi_is_injective_into_mu():
    for n in (3, 4):
        E = extension(n)
        inst = make_trinomial(E, 1, (3, 1))
        img = [phi(inst, x) for x in range(E.q)]
        assert len(set(img)) == E.q
        assert E.one not in img
        assert set(img) < set(inst.mu)


@pytest.mark.parametrize("n", [2, 3])
def test_fiber_quartic_contains_transport_solutions(n):
    E = extension(n)
    F = E.base
    for inst in all_instances(n):
        if E.add(E.add(E.one, inst.a), inst.b) == E.zero:
            continue
        pp = is_pp_exhaustive(inst)
        for y in range(E.q):
            xs, poles = transport_fiber(inst, y)
            if pp:
                assert len(xs) == 1 and poles == 0
            roots = fiber_quartic(inst, y)
            if inst.a == inst.b:
                assert sorted(roots) == sorted(F.sqr(x) for x in xs)
            else:
                assert set(xs) <= set(roots)


@given(st.integers(2, 8), st.data())
def test_leading_coefficient_nonzero(n, data):
    E = extension(n)
    q = E.q
    a = data.draw(st.integers(1, q - 1))
    b = data.draw(st.tuples(st.integers(0, q - 1), st.integers(0, q - 1)).filter(lambda t: t != (0, 0)))
    inst = make_trinomial(E, a, b)
    if E.add(E.add(E.one, inst.a), inst.b) == E.zero:
        return
    cs, _ = quartic_coefficients(inst, data.draw(st.integers(0, q - 1)))
    assert cs[4] != 0


def test_degenerate_quartic_is_an_error_type():
    assert issubclass(DegenerateQuartic, ArithmeticError)


def test_lw_examples():
    F2 = make_field(1)
    assert not lw_unique_root(QuarticSpec(F2, 1, 1, 0))  # X^3+1 vanishes at 1
    assert lw_unique_root(QuarticSpec(F2, 1, 1, 1))  # x^4+x^2+x+1 has the single root 1
    F4 = make_field(2)
    with pytest.raises(ValueError):
        lw_unique_root(QuarticSpec(F4, 0, 1, 1))


@pytest.mark.parametrize("q", [4, 8, 16])
def test_uniqueness_scan(q):
    rows = quartic_uniqueness_scan(q)
    assert len(rows) == q - 1
    assert all(r["unique_all_y"] == r["cubic_rootless"] for r in rows)


def test_lw_cubic_irreducible_f8():
    F = make_field(3)
    for a2 in range(8):
        for a1 in range(1, 8):
            roots = sum(1 for x in range(8) if F.mul(F.sqr(x), x) ^ F.mul(a2, x) ^ a1 == 0)
            assert lw_cubic_irreducible(F, a2, a1) == (roots == 0)


def test_lw_cubic_irreducible_zero_alpha2():
    F = make_field(4)
    for a1 in range(1, 16):
        cube = any(F.mul(F.sqr(x), x) == a1 for x in range(16))
        assert lw_cubic_irreducible(F, 0, a1) == (not cube)
