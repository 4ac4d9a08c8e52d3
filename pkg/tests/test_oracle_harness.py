import random

from relhyp_cwp.group_model import GroupContext, nf_word
from relhyp_cwp.oracle_harness import (
    PROFILES, brute_force_slex, calibrate, evaluate, fingerprint, geodesic_length, naive_nf, random_slp,
    random_tcslp, random_tslp, random_word, syllable_nf, word_syllables,
)
from relhyp_cwp.slp_core import value_length


def test_naive_nf_examples(gstar):
    assert naive_nf(gstar, ("z1", "z1^-1")) == ()
    one = GroupContext.free_product((1,))
    assert naive_nf(one, ("z1",) * 5) == ("z1^2", "z1^2", "z1")
    assert brute_force_slex(one, 1, (5,), 3) == ("z1^2", "z1^2", "z1")


def test_syllable_nf():
    assert syllable_nf([(1, (1, 0)), (1, (1, 0))]) == [(1, (2, 0))]
    assert syllable_nf([(1, (1, 2)), (2, (0,))]) == [(1, (1, 2))]
    assert syllable_nf([(1, (1, 0)), (2, (1,)), (2, (-1,)), (1, (-1, 0))]) == []


def test_syllable_nf_matches_letters(gstar):
    rng = random.Random(1)
    for _ in range(500):
        w = random_word(gstar, rng, rng.randint(0, 20))
        assert syllable_nf(word_syllables(gstar, w)) == syllable_nf(word_syllables(gstar, naive_nf(gstar, w)))


def test_geodesic_length_brute_force():
    ctx = GroupContext.free_product((2,), {1: [("w", (1, 1))]})
    assert ctx.spec(1).M == 3
    for v in [(0, 0), (1, 1), (3, 0), (4, 4), (-2, 5), (6, -6)]:
        assert geodesic_length(ctx, (1, v)) == len(brute_force_slex(ctx, 1, v, 6))


def test_naive_nf_agrees_with_nf_word():
    for ranks, extra in [((2, 1), {}), ((1, 1, 1), {}), ((3, 2), {}), ((2, 1), {1: [("x", (1, 1))]})]:
        ctx = GroupContext.free_product(ranks, extra)
        rng = random.Random(2)
        for _ in range(3000):
            w = random_word(ctx, rng, rng.randint(0, 50))
            assert naive_nf(ctx, w) == nf_word(ctx, w)


def test_random_slp_golden(gstar):
    assert fingerprint(random_slp(gstar, 1, 30, "balanced")) == "70471e994e7e5133"
    assert fingerprint(random_slp(gstar, 2, 30, "unary-heavy")) == "fe2439aab1017ba3"
    assert fingerprint(random_slp(gstar, 3, 30, "component-splitting")) == "bae85e2a7e8d1846"
    assert fingerprint(random_slp(gstar, 4, 30, "near-trivial")) == "f6661b4c9d4427f7"


def test_random_slp_is_deterministic_and_bounded(gstar):
    for profile in PROFILES:
        for seed in range(10):
            p = random_slp(gstar, seed, 50, profile, max_len=10 ** 4)
            assert p.rules == random_slp(gstar, seed, 50, profile, max_len=10 ** 4).rules
            assert value_length(p) <= 10 ** 4


def test_near_trivial_profile_is_often_trivial(gstar):
    trivial = sum(naive_nf(gstar, evaluate(random_slp(gstar, s, 30, "near-trivial"), gstar)) == ()
                  for s in range(40))
    assert trivial >= 10


def test_random_tethered_programs(gstar):
    for seed in range(10):
        t = random_tcslp(gstar, seed, 30)
        assert t.tether_bound() <= gstar.constants.L
        assert random_tcslp(gstar, seed, 30) == t
        u = random_tslp(gstar, seed, 30)
        assert not u.has_cuts()


def test_calibrate():
    for ranks in [(2, 1), (1, 1, 1), (3, 2), (2,)]:
        c = calibrate(GroupContext.free_product(ranks))
        assert (c.delta, c.K, c.L, c.e_prime, c.e1, c.e2, c.ff) == (1, 2, 2, 4, 2, 4, (1, 2))
