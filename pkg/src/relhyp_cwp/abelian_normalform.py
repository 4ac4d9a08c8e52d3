"""Free abelian factors: exponent vectors, binary powering, and shortlex forms over Y.

For a factor of rank r with extra generators X the generating set is
Y = {z_i^(+-M)} u {z_i^(+-1)} u X^(+-1), where M exceeds the l1-norm of every
generator.  The order on Y is fixed as

    z_1^M < z_1^-M < ... < z_r^M < z_r^-M < z_1 < z_1^-1 < ... < z_r^-1 < x < x^-1 < ...

so mutually inverse letters are adjacent.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .slp_core import Slp, epsilon, trim

Vector = tuple[int, ...]


@dataclass(frozen=True)
class FactorLetter:
    name: str
    vector: Vector
    rank: int  # position in the order on Y
    inverse: str


@dataclass(frozen=True)
class FactorSpec:
    """One free abelian factor together with its generating set Y."""

    rank: int
    extra: tuple[tuple[str, Vector], ...]
    M: int
    letters: tuple[FactorLetter, ...]
    basis_offset: int = 0
    by_name: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    @property
    def size(self) -> int:
        return len(self.letters)

    def letter(self, name: str) -> FactorLetter:
        try:
            return self.by_name[name]
        except KeyError:
            raise ValueError(f"letter {name!r} does not belong to this factor") from None

    def basis_name(self, i: int, power: int = 1) -> str:
        base = f"z{self.basis_offset + i + 1}"
        return base if power == 1 else f"{base}^{power}"


def build_factor_spec(rank: int, extra: Sequence[tuple[str, Sequence[int]]] = (), basis_offset: int = 0) -> FactorSpec:
    if rank < 1:
        raise ValueError("rank must be positive")
    extra = tuple((name, tuple(int(c) for c in vec)) for name, vec in extra)
    for name, vec in extra:
        if len(vec) != rank:
            raise ValueError(f"extra generator {name} has {len(vec)} coordinates, expected {rank}")
        if not any(vec):
            raise ValueError(f"extra generator {name} is the zero vector")
    M = max([1] + [sum(abs(c) for c in vec) for _, vec in extra]) + 1
    entries: list[tuple[str, Vector, str]] = []

    def unit(i: int, c: int) -> Vector:
        return tuple(c if k == i else 0 for k in range(rank))

    for i in range(rank):
        pos, neg = f"z{basis_offset + i + 1}^{M}", f"z{basis_offset + i + 1}^-{M}"
        entries.append((pos, unit(i, M), neg))
        entries.append((neg, unit(i, -M), pos))
    for i in range(rank):
        pos, neg = f"z{basis_offset + i + 1}", f"z{basis_offset + i + 1}^-1"
        entries.append((pos, unit(i, 1), neg))
        entries.append((neg, unit(i, -1), pos))
    for name, vec in extra:
        inv = f"{name}^-1"
        entries.append((name, vec, inv))
        entries.append((inv, tuple(-c for c in vec), name))
    vectors = [vec for _, vec, _ in entries]
    if len(set(vectors)) != len(vectors):
        raise ValueError("generators of a factor must represent distinct elements")
    letters = tuple(FactorLetter(n, v, k, inv) for k, (n, v, inv) in enumerate(entries))
    by_name = {x.name: x for x in letters}
    if len(by_name) != len(letters):
        raise ValueError("duplicate letter names in factor")
    return FactorSpec(rank, extra, M, letters, basis_offset, by_name)


# -- exponent vectors ---------------------------------------------------------

def add(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def neg(v: Vector) -> Vector:
    return tuple(-a for a in v)


def abelian_vector(spec: FactorSpec, p: Slp) -> Vector:
    vecs: dict[int, Vector] = {}
    zero = (0,) * spec.rank
    for a in p.order():
        acc = list(zero)
        for s in p.rules[a]:
            v = vecs[s] if isinstance(s, int) else spec.letter(s).vector
            for k, c in enumerate(v):
                acc[k] += c
        vecs[a] = tuple(acc)
    return vecs[p.start]


# -- binary powering ----------------------------------------------------------

def power_rules(x, n: int, rules: list) -> list:
    """Append the doubling construction for x^n to ``rules`` and return the top rhs.

    A_1 -> xx and A_i -> A_{i-1}A_{i-1} for every i >= 1 with 2^i < n; the top
    rhs lists, in ascending order, A_i for each set bit i of n (x itself for
    bit 0).  When n = 2^h the top is A_{h-1}A_{h-1}.
    """
    if n < 1:
        raise ValueError("exponent must be positive")
    if n == 1:
        return [x]
    if n == 2:
        return [x, x]
    chain = {}
    i = 1
    while (1 << i) < n:
        if i == 1:
            rules.append((x, x))
        else:
            rules.append((chain[i - 1], chain[i - 1]))
        chain[i] = len(rules) - 1
        i += 1
    if n & (n - 1) == 0:
        h = n.bit_length() - 1
        return [chain[h - 1], chain[h - 1]]
    top = []
    for bit in range(n.bit_length()):
        if n >> bit & 1:
            top.append(x if bit == 0 else chain[bit])
    return top


def power_slp(x: str, n: int) -> Slp:
    rules: list = []
    top = power_rules(x, n, rules)
    rules.append(tuple(top))
    return Slp(rules, len(rules) - 1)


def counts_program(spec: FactorSpec, counts: Sequence[int]) -> Slp:
    """Compact program for the word y_1^c_1 y_2^c_2 ... in the order of Y."""
    rules: list = []
    top: list = []
    for letter, c in zip(spec.letters, counts):
        if c:
            part = power_rules(letter.name, c, rules)
            if len(part) == 1:
                top.extend(part)
            else:
                rules.append(tuple(part))
                top.append(len(rules) - 1)
    if not top:
        return epsilon()
    rules.append(tuple(top))
    return trim(Slp(rules, len(rules) - 1))


def compact_vector_slp(spec: FactorSpec, v: Vector) -> Slp:
    """Compact program for z_1^v_1 z_2^v_2 ... over the unit basis letters."""
    counts = [0] * spec.size
    for i, c in enumerate(v):
        if c > 0:
            counts[2 * spec.rank + 2 * i] = c
        elif c < 0:
            counts[2 * spec.rank + 2 * i + 1] = -c
    return counts_program(spec, counts)


# -- shortlex forms -------------------------------------------------------------

def _coordinate_choice(n: int, M: int) -> tuple[int, int, int]:
    """Best (cost, a, b) with M*a + b = n: minimal |a|+|b|, ties toward more z^M, then z^-M."""
    best = None
    for a in {n // M, -((-n) // M)}:
        b = n - M * a
        cost = abs(a) + abs(b)
        key = (cost, -max(a, 0), -max(-a, 0))
        if best is None or key < best[0]:
            best = (key, a, b)
    return best[0][0], best[1], best[2]


def slex_counts(spec: FactorSpec, v: Sequence[int]) -> tuple[int, ...]:
    """Letter multiplicities of the shortlex-least word over Y representing v.

    X-letter multiplicities range over |c| < M; each basis coordinate of the
    remainder is written as a*M + b with the cheapest choice of a.  Among
    candidates of minimal length the count vector that is lexicographically
    largest in the order of Y wins, which is exactly the shortlex-least word.
    """
    r = spec.rank
    v = tuple(v)
    if len(v) != r:
        raise ValueError(f"vector {v} does not have {r} coordinates")
    M = spec.M
    nx = len(spec.extra)
    best = None
    ranges = [range(-(M - 1), M) for _ in range(nx)]
    for mult in itertools.product(*ranges):
        rest = list(v)
        counts = [0] * spec.size
        length = 0
        for k, c in enumerate(mult):
            if c:
                vec = spec.extra[k][1]
                for i in range(r):
                    rest[i] -= c * vec[i]
                counts[4 * r + 2 * k + (0 if c > 0 else 1)] = abs(c)
                length += abs(c)
        for i in range(r):
            cost, a, b = _coordinate_choice(rest[i], M)
            length += cost
            if a > 0:
                counts[2 * i] = a
            elif a < 0:
                counts[2 * i + 1] = -a
            if b > 0:
                counts[2 * r + 2 * i] = b
            elif b < 0:
                counts[2 * r + 2 * i + 1] = -b
        key = (length, tuple(-c for c in counts))
        if best is None or key < best[0]:
            best = (key, tuple(counts))
    return best[1]


def slex_length(spec: FactorSpec, v: Sequence[int]) -> int:
    return sum(slex_counts(spec, v))


def counts_word(spec: FactorSpec, counts: Sequence[int]) -> tuple[str, ...]:
    out: list[str] = []
    for letter, c in zip(spec.letters, counts):
        out.extend([letter.name] * c)
    return tuple(out)


def slex_word(spec: FactorSpec, v: Sequence[int]) -> tuple[str, ...]:
    return counts_word(spec, slex_counts(spec, v))


def slex_slp(spec: FactorSpec, p: Slp) -> Slp:
    return counts_program(spec, slex_counts(spec, abelian_vector(spec, p)))


def word_vector(spec: FactorSpec, word: Sequence[str]) -> Vector:
    acc = [0] * spec.rank
    for name in word:
        for i, c in enumerate(spec.letter(name).vector):
            acc[i] += c
    return tuple(acc)
