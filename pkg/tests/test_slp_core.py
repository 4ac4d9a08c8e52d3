import random

import pytest

from relhyp_cwp.slp_core import (
    Dfa, ProgramError, Slp, TooLong, balanced_from_word, concat, decompress, doubling_program, epsilon,
    extract_substring, from_word, fsa_membership, height, is_compact, letter_at, restriction, to_cnf, trim,
    value_length,
)


def random_program(rng, n=30, alphabet="abc", dead=0):
    rules = []
    for i in range(n):
        if i < 4 or rng.random() < 0.2:
            rules.append(tuple(rng.choice(alphabet) for _ in range(rng.randint(1, 3))))
        else:
            rules.append((rng.randrange(i), rng.randrange(i)))
    for _ in range(dead):
        rules.append((rng.choice(alphabet), rng.choice(alphabet)))
    return Slp(rules, n - 1)


def test_trim_removes_unreachable():
    p = Slp([(1, 2), ("a",), ("b",), ("a", "a")], 0)
    q = trim(p)
    assert len(q.rules) == 3
    assert decompress(q) == ("a", "b")
    assert trim(q).rules == q.rules


def test_trim_random_with_dead_variables():
    rng = random.Random(5)
    for _ in range(20):
        p = random_program(rng, 40, dead=10)
        q = trim(p)
        assert len(q.rules) <= 40
        assert decompress(q, 10 ** 7) == decompress(p, 10 ** 7)


def test_to_cnf():
    q = to_cnf(Slp([("a", "b", "c")], 0))
    assert decompress(q) == ("a", "b", "c")
    for r in q.rules:
        assert (len(r) == 1 and isinstance(r[0], str)) or (len(r) == 2 and all(isinstance(s, int) for s in r))
    chain = to_cnf(Slp([(1,), ("a",)], 0))
    assert decompress(chain) == ("a",)
    assert len(chain.rules) == 1
    rng = random.Random(1)
    for _ in range(20):
        p = random_program(rng)
        assert decompress(to_cnf(p), 10 ** 7) == decompress(p, 10 ** 7)


def test_value_length():
    assert value_length(doubling_program("ab", 10)) == 2048
    assert value_length(epsilon()) == 0
    rng = random.Random(2)
    for _ in range(20):
        p = random_program(rng, 20)
        assert value_length(p) == len(decompress(p, 10 ** 7))


def test_extract_substring():
    p = from_word("abab")
    assert decompress(extract_substring(p, 1, 3)) == ("b", "a")
    assert decompress(extract_substring(p, 2, 2)) == ()
    big = doubling_program("ab", 20)
    assert decompress(extract_substring(big, 2 ** 20 - 1, 2 ** 20 + 1)) == ("b", "a")
    with pytest.raises(ProgramError):
        extract_substring(p, 3, 9)


def test_extract_substring_random():
    rng = random.Random(3)
    for _ in range(30):
        p = random_program(rng, 15)
        w = decompress(p, 10 ** 6)
        i = rng.randint(0, len(w))
        j = rng.randint(i, len(w))
        assert decompress(extract_substring(p, i, j), 10 ** 6) == w[i:j]


def test_concat():
    assert decompress(concat(from_word("ab"), "c", from_word("d"))) == tuple("abcd")
    assert value_length(concat()) == 0


def test_restriction_and_height():
    p = Slp([(1, 2), ("a", "b"), ("c",)], 0)
    assert decompress(restriction(p, 1)) == ("a", "b")
    assert decompress(restriction(p, 0)) == decompress(trim(p))
    assert height(Slp([("a",)], 0), 0) == 1
    assert height(Slp([(1, 1), ("a",)], 0), 0) == 2
    assert height(doubling_program(("ab",), 7), 7) == 8


def test_fsa_membership():
    even = Dfa(2, 0, [0], {(q, x): 1 - q for q in (0, 1) for x in "abc"})
    has_c = Dfa(2, 0, [1], {(0, "a"): 0, (0, "b"): 0, (0, "c"): 1, (1, "a"): 1, (1, "b"): 1, (1, "c"): 1})
    p = doubling_program("ab", 5)
    assert fsa_membership(p, even)
    assert not fsa_membership(p, has_c)


def test_fsa_membership_random():
    rng = random.Random(4)
    for _ in range(30):
        n = rng.randint(1, 8)
        m = Dfa(n, 0, [q for q in range(n) if rng.random() < 0.5],
                {(q, x): rng.randrange(n) for q in range(n) for x in "abc"})
        p = random_program(rng, 15)
        assert fsa_membership(p, m) == m.run(decompress(p, 10 ** 6))


def test_decompress():
    assert "".join(decompress(doubling_program("ab", 3), 100)) == "ab" * 8
    assert decompress(epsilon()) == ()
    with pytest.raises(TooLong):
        decompress(doubling_program("ab", 80), 10 ** 6)
    assert letter_at(doubling_program("ab", 80), 2 ** 80 + 1) == "b"


def test_is_compact():
    assert is_compact(doubling_program("a", 30), 4)
    assert not is_compact(from_word("a" * 10 ** 4), 4)
    assert is_compact(from_word("ab"), 2)


def test_balanced_from_word():
    w = tuple("abcabcab")
    p = balanced_from_word(w)
    assert decompress(p) == w
    assert height(p, p.start) <= 4


def test_cycles_and_bad_references_rejected():
    with pytest.raises(ProgramError):
        Slp([(1,), (0,)], 0)
    with pytest.raises(ProgramError):
        Slp([(5,)], 0)


def test_size_bound_audit(audit):
    before = audit["checks"]
    doubling_program("ab", 40)
    assert audit["checks"] > before
    assert audit["violations"] == 0
