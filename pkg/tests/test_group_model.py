import random

import pytest

from relhyp_cwp.group_model import (
    ConstantsBundle, GroupContext, NfLimitExceeded, bounded_difference_search, components, derived_word,
    is_nf_reduced_slp, is_nf_word, nf_word,
)
from relhyp_cwp.oracle_harness import naive_nf, random_word
from relhyp_cwp.slp_core import doubling_program, epsilon, from_word


def test_alphabet_order(gstar):
    assert gstar.sigma == ("z1^2", "z1^-2", "z2^2", "z2^-2", "z1", "z1^-1", "z2", "z2^-1",
                           "z3^2", "z3^-2", "z3", "z3^-1")
    assert gstar.inverse("z1^2") == "z1^-2"


def test_derived_word_and_components(gstar):
    w = ("z3", "z1", "z1", "z3")
    assert derived_word(gstar, w) == [(2, (1,)), (1, (2, 0)), (2, (1,))]
    assert components(gstar, w) == [(0, 1, 2), (1, 3, 1), (3, 4, 2)]
    assert derived_word(gstar, ()) == []
    assert derived_word(gstar, ("z1", "z2")) == [(1, (1, 1))]


def test_nf_word_examples(gstar):
    assert nf_word(gstar, ("z1", "z3", "z3^-1", "z1")) == ("z1^2",)
    assert nf_word(gstar, ("z1", "z3", "z1", "z3^-1")) == ("z1", "z3", "z1", "z3^-1")
    assert nf_word(gstar, ("z1", "z1^-1")) == ()
    with pytest.raises(NfLimitExceeded):
        nf_word(gstar, ("z1",) * 20, limit=10)


def test_nf_word_agrees_with_oracle(gstar, free3, big):
    for ctx in (gstar, free3, big):
        rng = random.Random(1)
        for _ in range(2000):
            w = random_word(ctx, rng, rng.randint(0, 30))
            nf = nf_word(ctx, w)
            assert nf == naive_nf(ctx, w)
            assert is_nf_word(ctx, nf)


def test_is_nf_reduced_slp(gstar):
    assert is_nf_reduced_slp(gstar, from_word(("z1", "z3", "z1")))
    assert not is_nf_reduced_slp(gstar, from_word(("z1", "z1")))
    assert is_nf_reduced_slp(gstar, epsilon())
    assert is_nf_reduced_slp(gstar, doubling_program(("z1", "z3"), 60))
    assert not is_nf_reduced_slp(gstar, doubling_program(("z1", "z3", "z1"), 60))


def test_is_nf_reduced_slp_random(gstar):
    rng = random.Random(2)
    for _ in range(300):
        w = random_word(gstar, rng, rng.randint(0, 12))
        if rng.random() < 0.5:
            w = naive_nf(gstar, w)
        assert is_nf_reduced_slp(gstar, from_word(w)) == (naive_nf(gstar, w) == tuple(w))


def test_bounded_difference_search(gstar):
    p = from_word(("z1", "z3", "z1"))
    assert bounded_difference_search(gstar, (), (), (p, 2), (p, 2)) == ()
    assert bounded_difference_search(gstar, (), (), (p, 2), (p, 3)) == ("z1",)
    assert bounded_difference_search(gstar, (), (), (p, 0), (p, 3)) is None


def test_bounded_difference_search_modes_agree(gstar):
    rng = random.Random(3)
    for _ in range(60):
        u = naive_nf(gstar, random_word(gstar, rng, 8))
        a, b = random_word(gstar, rng, 2), random_word(gstar, rng, 2)
        v = naive_nf(gstar, a + u + b)
        pu, pv = from_word(u), from_word(v)
        k = rng.randint(0, len(derived_word(gstar, u)))
        l = rng.randint(0, len(derived_word(gstar, v)))
        fast = bounded_difference_search(gstar, a, (), (pu, k), (pv, l))
        slow = bounded_difference_search(gstar, a, (), (pu, k), (pv, l), mode="enumerate")
        assert fast == slow


def test_constants_bundle_validation():
    c = ConstantsBundle(delta=1, K=2, L=2, e_prime=4, e1=2, e2=4, ff=(1, 2))
    assert c.f(4) == 6
    assert c.J == 2
    with pytest.raises(ValueError):
        ConstantsBundle(delta=1, K=2, L=0, e_prime=4, e1=2, e2=4)
    with pytest.raises(ValueError):
        ConstantsBundle(delta=1, K=2, L=2, e_prime=4, e1=2, e2=4, ff=(0, 1))


def test_require_constants():
    ctx = GroupContext.free_product((1, 1))
    with pytest.raises(ValueError):
        ctx.require_constants()
