import math
import random

from relhyp_cwp.abelian_normalform import (
    abelian_vector, build_factor_spec, compact_vector_slp, power_slp, slex_length, slex_slp, slex_word,
)
from relhyp_cwp.group_model import GroupContext
from relhyp_cwp.oracle_harness import brute_force_slex, spell_syllable
from relhyp_cwp.slp_core import Slp, decompress, doubling_program, from_word, value_length


def test_abelian_vector():
    spec = build_factor_spec(2)
    assert abelian_vector(spec, doubling_program(("z1", "z2"), 2)) == (4, 4)
    assert abelian_vector(spec, Slp([()], 0)) == (0, 0)
    assert abelian_vector(spec, from_word(("z1", "z2", "z1^-1"))) == (0, 1)


def test_power_slp_worked_example():
    p = power_slp("x", 14)
    assert p.size() == 9
    assert decompress(p) == ("x",) * 14
    assert power_slp("x", 1).size() == 1


def test_power_slp_size_bound():
    p = power_slp("x", 2 ** 40)
    assert p.size() <= 3 * 40 + 1
    assert value_length(p) == 2 ** 40
    rng = random.Random(0)
    for n in list(range(1, 3000)) + [rng.randint(1, 10 ** 6) for _ in range(300)]:
        q = power_slp("x", n)
        assert value_length(q) == n
        assert q.size() <= 3 * math.log2(n) + 1


def test_compact_vector_slp():
    spec = build_factor_spec(2)
    assert value_length(compact_vector_slp(spec, (0, 0))) == 0
    one = build_factor_spec(1)
    p = compact_vector_slp(one, (14,))
    assert abelian_vector(one, p) == (14,)
    assert p.size() <= 12
    rng = random.Random(1)
    for _ in range(200):
        v = (rng.randint(-10 ** 6, 10 ** 6), rng.randint(-10 ** 6, 10 ** 6))
        assert abelian_vector(spec, compact_vector_slp(spec, v)) == v


def test_build_factor_spec():
    spec = build_factor_spec(2)
    assert spec.M == 2
    assert [x.name for x in spec.letters] == ["z1^2", "z1^-2", "z2^2", "z2^-2", "z1", "z1^-1", "z2", "z2^-1"]
    one = build_factor_spec(1)
    assert one.M == 2
    assert [x.name for x in one.letters] == ["z1^2", "z1^-2", "z1", "z1^-1"]
    assert build_factor_spec(2, [("w", (1, 1))]).M == 3


def test_slex_word_examples():
    one = build_factor_spec(1)
    assert slex_word(one, (5,)) == ("z1^2", "z1^2", "z1")
    assert slex_word(one, (0,)) == ()
    assert slex_word(build_factor_spec(2), (1, 1)) == ("z1", "z2")


def test_slex_slp():
    one = build_factor_spec(1)
    p = slex_slp(one, from_word(("z1",) * 14))
    assert decompress(p) == ("z1^2",) * 7
    assert value_length(slex_slp(one, from_word(("z1", "z1^-1")))) == 0
    big = slex_slp(one, doubling_program(("z1",), 60))
    assert value_length(big) == 2 ** 59


def test_slex_matches_brute_force_small():
    for ranks, extra in [((1,), {}), ((2,), {}), ((2,), {1: [("w", (1, 1))]}), ((1,), {1: [("x", (2,))]})]:
        ctx = GroupContext.free_product(ranks, extra)
        spec = ctx.spec(1)
        r = ranks[0]
        rng = random.Random(2)
        for _ in range(60):
            v = tuple(rng.randint(-4, 4) for _ in range(r))
            want = brute_force_slex(ctx, 1, v, 6)
            assert slex_word(spec, v) == want
            assert slex_length(spec, v) == len(want)


def test_slex_slp_random_programs():
    ctx = GroupContext.free_product((2,))
    spec = ctx.spec(1)
    rng = random.Random(3)
    for _ in range(100):
        w = tuple(rng.choice(ctx.sigma) for _ in range(rng.randint(0, 100)))
        v = abelian_vector(spec, from_word(w))
        assert decompress(slex_slp(spec, from_word(w))) == tuple(spell_syllable(ctx, (1, v)))
