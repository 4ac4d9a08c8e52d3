import math
import random

import pytest

from relhyp_cwp.abelian_normalform import compact_vector_slp, slex_slp
from relhyp_cwp.compressed_equality import slp_equal
from relhyp_cwp.formats import format_program
from relhyp_cwp.group_model import components, is_nf_reduced_slp
from relhyp_cwp.oracle_harness import (
    PROFILES, evaluate, naive_nf, syllable_nf, random_slp, random_tcslp, random_tslp, random_word,
)
from relhyp_cwp.program_extensions import Cut, Tcslp, Tether
from relhyp_cwp.relhyp_pipeline import (
    append_bounded_suffix, build_nf_tcslp, build_nf_tcslp_geodesic, compressed_index_convert, convert,
    ensure_component_roots, nf_from_quasigeodesic, nf_program, nf_short_hat, run_stages, solve_cwp,
    split_check, tcslp_to_tslp, tslp_to_slp,
)
from relhyp_cwp.relhyp_pipeline.roots import NON_SPLITTING, SPLITTING, letter_index_convert
from relhyp_cwp.relhyp_pipeline.shortnf import SHORT_HAT_C, GluingError
from relhyp_cwp.slp_core import Slp, concat, decompress, epsilon, from_word, inverse_program, value_length


def power_pair(ctx, n):
    """P = (z1 z3)^(2^n) and its formal inverse, as rule lists sharing no variables."""
    rules = [("z1", "z3")] + [(i, i) for i in range(n)]
    inv = [tuple(s + n + 1 if isinstance(s, int) else ctx.inverse(s) for s in reversed(r)) for r in rules]
    return rules, inv


def test_ensure_component_roots_example(gstar):
    p = Slp([(1, 2), ("z3", "z1"), ("z1", "z3")], 0)
    q, idx = ensure_component_roots(p, gstar)
    assert decompress(q) == ("z3", "z1", "z1", "z3")
    roots = idx.component_roots()
    assert [decompress(Slp(q.rules, r)) for r in roots] == [("z3",), ("z1", "z1"), ("z3",)]


def test_ensure_component_roots_random(gstar):
    for seed in range(60):
        g = random_slp(gstar, seed, 30, "component-splitting")
        q, idx = ensure_component_roots(g, gstar)
        assert evaluate(q, gstar) == evaluate(g, gstar)
        assert max(q.heights(), default=0) <= 2 * len(g.rules)
        for a in range(len(q.rules)):
            w = evaluate(Slp(q.rules, a), gstar)
            parts = [evaluate(Slp(q.rules, r), gstar) for r in idx.component_roots(a)]
            assert sum(parts, ()) == w
            assert len(parts) == len(components(gstar, w))


def test_split_check(gstar):
    p = from_word(("z1", "z1", "z3"))
    assert split_check(p, 1, 3, gstar) == SPLITTING
    assert split_check(p, 0, 3, gstar) == NON_SPLITTING
    assert split_check(p, 0, 1, gstar) == SPLITTING
    assert split_check(p, 2, 3, gstar) == NON_SPLITTING


def test_index_conversion(gstar):
    p = from_word(("z3", "z1", "z1", "z3"))
    assert compressed_index_convert(p, 1, 2, gstar) == (1, 3)
    assert compressed_index_convert(p, 0, 3, gstar) == (0, 4)
    assert letter_index_convert(p, 1, 3, gstar) == (1, 2)
    rng = random.Random(4)
    for seed in range(40):
        g = random_slp(gstar, seed, 25, "component-splitting")
        w = evaluate(g, gstar)
        bounds = [c[0] for c in components(gstar, w)] + [len(w)]
        h = len(bounds) - 1
        k = rng.randint(0, h)
        l = rng.randint(k, h)
        assert compressed_index_convert(g, k, l, gstar) == (bounds[k], bounds[l])


def test_nf_from_quasigeodesic(gstar):
    v = from_word(("z1", "z3", "z2"))
    assert decompress(nf_from_quasigeodesic(v, gstar)) == ("z1", "z3", "z2")
    w = Slp([(1, "z3"), ("z3", "z1")], 0)
    assert decompress(nf_from_quasigeodesic(w, gstar)) == ("z3", "z1", "z3")
    rng = random.Random(5)
    for seed in range(60):
        g = nf_program(random_slp(gstar, seed, 25), gstar)
        x = rng.choice(gstar.sigma)
        h = Slp(list(g.rules) + [(g.start, x)], len(g.rules))
        assert evaluate(nf_from_quasigeodesic(h, gstar), gstar) == naive_nf(gstar, evaluate(h, gstar))


def test_nf_from_quasigeodesic_rejects_deep_cancellation(gstar):
    rules, inv = power_pair(gstar, 3)
    p = Slp(rules + inv + [(3, 7)], 8)
    with pytest.raises(GluingError):
        nf_from_quasigeodesic(p, gstar)


def test_nf_short_hat(gstar):
    assert decompress(nf_short_hat(from_word(("z1", "z1")), gstar)) == ("z1^2",)
    assert decompress(nf_short_hat(epsilon(), gstar)) == ()
    rng = random.Random(6)
    for _ in range(100):
        # at most 30 syllables, exponents up to about 10^6
        rules, top, syllables = [], [], []
        for _ in range(rng.randint(1, 30)):
            x = rng.choice(gstar.sigma)
            n = rng.randint(0, 20)
            base = len(rules)
            rules.append((x,))
            for i in range(n):
                rules.append((base + i, base + i))
            top.append(len(rules) - 1)
            letter = gstar.letter(x)
            syllables.append((letter.factor, tuple(c * 2 ** n for c in letter.vector)))
        rules.append(tuple(top))
        p = Slp(rules, len(rules) - 1)
        got = nf_short_hat(p, gstar)
        parts = [slex_slp(gstar.spec(f), compact_vector_slp(gstar.spec(f), v)) for f, v in syllable_nf(syllables)]
        assert slp_equal(got, concat(*parts))
        n = value_length(p)
        assert got.size() <= SHORT_HAT_C * len(top) * math.log2(max(n, 2))


def test_tslp_to_slp(gstar):
    u = Tcslp([("z1", "z3"), Tether(0, ("z3",), ("z1",))], 1, 2)
    assert decompress(tslp_to_slp(u, gstar)) == naive_nf(gstar, ("z3", "z1", "z3", "z1^-1"))
    plain = Tcslp([("z1", "z3"), (0, 0)], 1, 2)
    assert decompress(tslp_to_slp(plain, gstar)) == ("z1", "z3", "z1", "z3")
    for seed in range(80):
        t = random_tslp(gstar, seed, 40)
        assert evaluate(tslp_to_slp(t, gstar), gstar) == evaluate(t, gstar)


def test_tcslp_to_tslp(gstar):
    t = Tcslp([("z1", "z3"), ("z2",), (0, 1), Cut(2, 1, 3)], 3, 2)
    u = tcslp_to_tslp(t, gstar)
    assert not u.has_cuts()
    assert evaluate(u, gstar) == ("z3", "z2")
    full = Tcslp([("z1", "z3"), Cut(0, 0, 2)], 1, 2)
    assert evaluate(tcslp_to_tslp(full, gstar), gstar) == ("z1", "z3")
    for seed in range(80):
        t = random_tcslp(gstar, seed, 40)
        u = tcslp_to_tslp(t, gstar)
        assert not u.has_cuts()
        assert evaluate(u, gstar) == evaluate(t, gstar)


def test_convert_random(gstar, free3, big):
    for ctx in (gstar, free3, big):
        for seed in range(40):
            t = random_tcslp(ctx, seed, 60)
            s = convert(t, ctx)
            assert evaluate(s, ctx) == evaluate(t, ctx)
            assert is_nf_reduced_slp(ctx, s)


def test_append_bounded_suffix(gstar):
    assert decompress(append_bounded_suffix(from_word(("z1",)), ("z1^-1",), gstar)) == ()
    assert decompress(append_bounded_suffix(from_word(("z1", "z3")), ("z3",), gstar)) == ("z1", "z3^2")
    rng = random.Random(7)
    for seed in range(40):
        p = nf_program(random_slp(gstar, seed, 25), gstar)
        v = random_word(gstar, rng, rng.randint(0, 2))
        got = evaluate(append_bounded_suffix(p, v, gstar), gstar)
        assert got == naive_nf(gstar, evaluate(p, gstar) + v)
    with pytest.raises(ValueError):
        append_bounded_suffix(from_word(("z1",)), ("z1",) * 3, gstar)


def test_build_nf_tcslp(gstar):
    g = from_word(("z1", "z1^-1"))
    assert evaluate(build_nf_tcslp(g, gstar), gstar) == ()
    g = Slp([(1, 2), ("z1", "z3"), ("z3^-1", "z1")], 0)
    assert evaluate(build_nf_tcslp(g, gstar), gstar) == ("z1^2",)


def test_build_nf_tcslp_geodesic(gstar):
    g = from_word(("z1", "z3", "z2"))
    assert evaluate(build_nf_tcslp_geodesic(g, gstar), gstar) == ("z1", "z3", "z2")
    g = Slp([(1, "z3"), ("z1", "z1")], 0)
    assert evaluate(build_nf_tcslp_geodesic(g, gstar), gstar) == ("z1^2", "z3")
    for seed in range(40):
        g = nf_program(random_slp(gstar, seed, 25), gstar)
        assert evaluate(build_nf_tcslp_geodesic(g, gstar), gstar) == evaluate(g, gstar)


@pytest.mark.parametrize("profile", PROFILES)
def test_nf_program_matches_oracle(gstar, free3, big, profile):
    for ctx in (gstar, free3, big):
        for seed in range(40):
            g = random_slp(ctx, seed, 40, profile)
            s = nf_program(g, ctx)
            assert evaluate(s, ctx) == naive_nf(ctx, evaluate(g, ctx))
            assert is_nf_reduced_slp(ctx, s)


def test_solve_cwp_examples(gstar):
    assert solve_cwp(from_word(("z1", "z3", "z3^-1", "z1^-1")), gstar)
    assert not solve_cwp(from_word(("z1", "z3", "z1", "z3^-1")), gstar, use_prefilter=False)
    rules, inv = power_pair(gstar, 60)
    assert solve_cwp(Slp(rules + inv + [(60, 121)], 122), gstar, use_prefilter=False)
    assert not solve_cwp(Slp(rules + inv + [(60, "z1", 121)], 122), gstar, use_prefilter=False)


def test_solve_cwp_requires_constants():
    from relhyp_cwp.group_model import GroupContext

    with pytest.raises(ValueError):
        solve_cwp(from_word(("z1",)), GroupContext.free_product((1, 1)))


def test_prefilter_agrees(gstar):
    for seed in range(80):
        g = random_slp(gstar, seed, 30, PROFILES[seed % 4])
        assert solve_cwp(g, gstar) == solve_cwp(g, gstar, use_prefilter=False)


def test_single_factor_group():
    from relhyp_cwp.group_model import GroupContext
    from relhyp_cwp.oracle_harness import constants_for

    ctx = constants_for(GroupContext.free_product((2,)))
    for seed in range(30):
        g = random_slp(ctx, seed, 25)
        assert evaluate(nf_program(g, ctx), ctx) == naive_nf(ctx, evaluate(g, ctx))
        assert solve_cwp(g, ctx) == (naive_nf(ctx, evaluate(g, ctx)) == ())


def test_run_stages_report_and_determinism(gstar):
    g = random_slp(gstar, 3, 60, "near-trivial")
    seen = []
    s1, report = run_stages(g, gstar, trace=lambda stage, prog: seen.append(stage))
    s2, _ = run_stages(g, gstar)
    assert format_program(s1) == format_program(s2)
    assert seen == ["tcslp", "tslp", "nf"]
    for key in ("input_size", "tcslp_size", "tslp_size", "nf_size"):
        assert key in report
    assert set(report["times"]) == {"build", "cut_elimination", "tether_elimination"}


def test_inverse_program_cancels(gstar):
    for seed in range(30):
        g = random_slp(gstar, seed, 30)
        inv = inverse_program(g, gstar.inverse)
        n = len(g.rules)
        rules = list(g.rules) + [tuple(s + n if isinstance(s, int) else s for s in r) for r in inv.rules]
        rules.append((g.start, inv.start + n))
        assert solve_cwp(Slp(rules, len(rules) - 1), gstar, use_prefilter=False)


def test_every_ladder_kind_is_exercised(gstar):
    from relhyp_cwp.relhyp_pipeline.evaluate import Engine
    from relhyp_cwp.relhyp_pipeline.ladder import LadderBuilder, binarized

    kinds = set()
    for seed in range(40):
        t = random_tslp(gstar, seed, 80)
        engine = Engine(gstar)
        prog, nodes = binarized(t, engine)
        lb = LadderBuilder(gstar, engine, prog, nodes)
        s = engine.forest.export(lb.result())
        assert evaluate(s, gstar) == evaluate(t, gstar)
        kinds |= {info.kind for info in lb._info.values()}
    assert kinds >= {"mid", "same", "both", "left", "right", "tether"}
