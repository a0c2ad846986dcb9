import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gf2tri.poly import Gf2Poly, clmul_int, mod_int
from gf2tri.trinomial import (ModContext, OpCounters, Trinomial, frobenius_power, mod_mul,
                              mod_square, reduce)

P = Gf2Poly.from_exponents


def ctx_for(r, s):
    return ModContext(Trinomial(r, s))


def test_trinomial_validation():
    with pytest.raises(ValueError):
        Trinomial(8, 4)
    with pytest.raises(ValueError):
        Trinomial(5, 5)
    with pytest.raises(ValueError):
        Trinomial(2, 1)
    t = Trinomial(7, 3)
    assert t.poly == P([7, 3, 0])
    assert t.reciprocal() == Trinomial(7, 4)
    assert str(t) == "x^7 + x^3 + 1"


def test_reduce_examples():
    c = ctx_for(5, 2)
    assert reduce(c, P([6])) == P([3, 1])
    assert reduce(c, P([4, 1])) == P([4, 1])
    assert reduce(c, P([5])) == P([2, 0])
    with pytest.raises(ValueError):
        reduce(c, P([9]))


def test_mod_square_examples():
    c = ctx_for(5, 2)
    assert mod_square(c, P([3])) == P([3, 1])
    assert mod_square(c, P([0])) == P([0])
    c3 = ctx_for(3, 1)
    a = P([1])
    seen = []
    for _ in range(3):
        a = mod_square(c3, a)
        seen.append(a)
    assert seen == [P([2]), P([2, 1]), P([1])]


def test_mod_mul_examples():
    c = ctx_for(5, 2)
    a = P([4, 2, 1])
    assert mod_mul(c, a, P([0])) == a
    assert mod_mul(c, P([3]), P([3])) == mod_square(c, P([3])) == P([3, 1])
    assert mod_mul(c, P([4]), P([1])) == P([2, 0])
    with pytest.raises(ValueError):
        mod_mul(c, P([5]), P([1]))


def test_frobenius_examples():
    c = ctx_for(5, 2)
    assert frobenius_power(c, 0) == P([1])
    assert frobenius_power(c, 3).value == mod_int(1 << 8, Trinomial(5, 2).value)
    assert frobenius_power(ctx_for(3, 1), 3) == P([1])
    assert frobenius_power(ctx_for(7, 1), 7) == P([1])
    with pytest.raises(ValueError):
        frobenius_power(c, -1)


def test_counters_are_injected():
    counters = OpCounters()
    c = ModContext(Trinomial(11, 2), counters=counters)
    mod_square(c, P([5]))
    mod_mul(c, P([5]), P([7]))
    c.gcd(0b1011)
    assert counters == OpCounters(squarings=1, modmuls=1, gcds=1)
    assert (counters - OpCounters(squarings=1)).squarings == 0


trinomials = st.integers(3, 400).flatmap(
    lambda r: st.integers(1, r - 1).filter(lambda s: r % 2 or s % 2).map(lambda s: Trinomial(r, s)))


@settings(max_examples=200)
@given(trinomials, st.randoms(use_true_random=False))
def test_square_equals_product(t, rnd):
    c = ModContext(t)
    a = rnd.getrandbits(t.r)
    assert c.sqr(a) == c.mul(a, a) == mod_int(clmul_int(a, a), t.value)


@settings(max_examples=200)
@given(trinomials, st.randoms(use_true_random=False))
def test_homomorphism(t, rnd):
    c = ModContext(t)
    a, b = rnd.getrandbits(2 * t.r - 1), rnd.getrandbits(2 * t.r - 1)
    assert c.reduce_int(clmul_int(a, b)) == c.mul(c.reduce_int(a), c.reduce_int(b))
    assert c.reduce_int(a) == mod_int(a, t.value)


def test_large_s_reduction():
    rng = random.Random(3)
    for r in (64, 65, 1000):
        for s in (r - 1, r - 2, r // 2):
            if r % 2 == 0 and s % 2 == 0:
                continue
            c = ctx_for(r, s)
            for _ in range(20):
                a = rng.getrandbits(2 * r - 1)
                assert c.reduce_int(a) == mod_int(a, c.P)
