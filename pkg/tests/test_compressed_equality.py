import random

from relhyp_cwp.compressed_equality import cslp_equal, recompression_equal, slp_compare_prefix, slp_equal
from relhyp_cwp.program_extensions import Cut, Tcslp
from relhyp_cwp.slp_core import Slp, decompress, doubling_program, from_word


def random_pair(rng):
    """Two programs that are equal about half the time."""
    base = [rng.choice("ab") for _ in range(rng.randint(1, 5))]
    k = rng.randint(0, 6)
    g = doubling_program(base, k)
    if rng.random() < 0.5:
        return g, from_word(decompress(g))
    w = list(decompress(g))
    if w and rng.random() < 0.7:
        i = rng.randrange(len(w))
        w[i] = "b" if w[i] == "a" else "a"
    else:
        w.append("a")
    return g, from_word(w)


def test_equal_by_construction():
    g = doubling_program("ab", 6)
    h = doubling_program("abab", 5)
    assert slp_equal(g, h)
    assert recompression_equal(g, h)
    assert not slp_equal(g, doubling_program("ba", 6))


def test_equality_matches_decompression():
    rng = random.Random(7)
    for _ in range(500):
        g, h = random_pair(rng)
        want = decompress(g) == decompress(h)
        assert slp_equal(g, h) == want
        assert slp_equal(g, h, method="recompression") == want


def test_huge_equal_values():
    g = doubling_program("ab", 100)
    rules = [("a", "b", "a", "b")] + [(i, i) for i in range(99)]
    h = Slp(rules, 99)
    assert slp_equal(g, h)
    assert not slp_equal(g, doubling_program("ab", 99))


def test_compare_prefix():
    assert slp_compare_prefix(from_word("abab"), from_word("abba")) == 2
    g = doubling_program("ab", 4)
    assert slp_compare_prefix(g, g) == 32
    rng = random.Random(8)
    for _ in range(100):
        g, h = random_pair(rng)
        u, v = decompress(g), decompress(h)
        n = 0
        while n < min(len(u), len(v)) and u[n] == v[n]:
            n += 1
        assert slp_compare_prefix(g, h) == n


def test_cslp_equal():
    g = Tcslp([Cut(1, 1, 3, False), ("a", "b", "a", "b")], 0)
    assert cslp_equal(g, from_word("ba"))
    e1 = Tcslp([Cut(1, 2, 2, False), ("a", "b")], 0)
    e2 = Tcslp([Cut(1, 0, 0, False), ("b",)], 0)
    assert cslp_equal(e1, e2)
    rng = random.Random(9)
    for _ in range(50):
        w = [rng.choice("ab") for _ in range(12)]
        i, j = sorted(rng.sample(range(13), 2))
        g = Tcslp([Cut(1, i, j, False), tuple(w)], 0)
        k, l = sorted(rng.sample(range(13), 2))
        h = Tcslp([Cut(1, k, l, False), tuple(w)], 0)
        assert cslp_equal(g, h) == (w[i:j] == w[k:l])
