"""Straight-line programs: representation and the basic polynomial-time operations.

A program is a flat table of right-hand sides.  Each right-hand side is a
tuple whose entries are either ``int`` (a reference to another variable) or
``str`` (a letter).  Programs are immutable; derived per-variable data is
memoized on the instance.
"""

from __future__ import annotations

import math
import os
from typing import Iterable, Sequence, Union

Symbol = Union[int, str]


class TooLong(ValueError):
    """Raised when an explicit value would exceed the permitted length."""


class ProgramError(ValueError):
    """Malformed program (dangling reference, cycle, bad index)."""


# Size-bound audit: |val| <= 3^(|G|/3) is checked on every constructed program
# while the audit is switched on (the test suite enables it).
BOUND_AUDIT = {
    "enabled": os.environ.get("RELHYP_AUDIT_BOUND", "") not in ("", "0"),
    "checks": 0,
    "violations": 0,
}

_LOG2_3 = math.log2(3.0)


def enable_bound_audit(flag: bool = True) -> None:
    BOUND_AUDIT["enabled"] = flag


def size_bound_holds(length: int, size: int) -> bool:
    """Exact test of ``length <= 3 ** (size / 3)``."""
    if length <= 1:
        return True
    bits = length.bit_length()
    limit = size * _LOG2_3 / 3.0
    if bits - 1 > limit + 1:
        return False
    if bits < limit - 1:
        return True
    return length ** 3 <= 3 ** size


def audit_size_bound(length: int, size: int) -> bool:
    ok = size_bound_holds(length, size)
    BOUND_AUDIT["checks"] += 1
    if not ok:
        BOUND_AUDIT["violations"] += 1
    return ok


class Slp:
    """An SLP with integer-indexed variables."""

    __slots__ = ("rules", "start", "_order", "_lengths", "_heights")

    def __init__(self, rules: Sequence[Sequence[Symbol]], start: int):
        self.rules = tuple(tuple(r) for r in rules)
        self.start = start
        self._lengths = None
        self._heights = None
        n = len(self.rules)
        if not 0 <= start < n:
            raise ProgramError(f"start variable {start} is not declared")
        for a, rhs in enumerate(self.rules):
            for s in rhs:
                if isinstance(s, int):
                    if not 0 <= s < n:
                        raise ProgramError(f"variable {a} refers to undeclared variable {s}")
                elif not isinstance(s, str):
                    raise ProgramError(f"bad symbol {s!r} in variable {a}")
        self._order = _topological_order(self.rules)
        if BOUND_AUDIT["enabled"]:
            audit_size_bound(self.lengths()[start], self.size())

    # -- derived data -------------------------------------------------
    def order(self) -> tuple[int, ...]:
        """Variables ordered so that every variable follows the ones it uses."""
        return self._order

    def lengths(self) -> list[int]:
        if self._lengths is None:
            lens = [0] * len(self.rules)
            for a in self._order:
                total = 0
                for s in self.rules[a]:
                    total += lens[s] if isinstance(s, int) else 1
                lens[a] = total
            self._lengths = lens
        return self._lengths

    def heights(self) -> list[int]:
        if self._heights is None:
            hts = [0] * len(self.rules)
            for a in self._order:
                h = 0
                for s in self.rules[a]:
                    h = max(h, hts[s] if isinstance(s, int) else 0)
                hts[a] = h + 1
            self._heights = hts
        return self._heights

    def size(self) -> int:
        return sum(len(r) for r in self.rules)

    def __len__(self) -> int:
        return len(self.rules)

    def __repr__(self) -> str:
        return f"Slp(vars={len(self.rules)}, size={self.size()}, start={self.start})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Slp) and self.rules == other.rules and self.start == other.start

    def __hash__(self) -> int:
        return hash((self.rules, self.start))

    def letters(self) -> set[str]:
        return {s for r in self.rules for s in r if isinstance(s, str)}


def _topological_order(rules) -> tuple[int, ...]:
    n = len(rules)
    state = [0] * n  # 0 new, 1 on stack, 2 done
    out = []
    for root in range(n):
        if state[root]:
            continue
        stack = [(root, 0)]
        state[root] = 1
        while stack:
            a, i = stack[-1]
            rhs = rules[a]
            while i < len(rhs) and not isinstance(rhs[i], int):
                i += 1
            if i == len(rhs):
                stack.pop()
                state[a] = 2
                out.append(a)
                continue
            stack[-1] = (a, i + 1)
            b = rhs[i]
            if state[b] == 1:
                raise ProgramError(f"cyclic program: variable {b} derives itself")
            if state[b] == 0:
                state[b] = 1
                stack.append((b, 0))
    return tuple(out)


# -- constructors ---------------------------------------------------------

def epsilon() -> Slp:
    return Slp([()], 0)


def from_word(word: Iterable[str]) -> Slp:
    return Slp([tuple(word)], 0)


def balanced_from_word(word: Sequence[str]) -> Slp:
    """CNF program of logarithmic height for an explicit word."""
    word = list(word)
    if not word:
        return epsilon()
    rules: list[tuple] = []
    leaf: dict[str, int] = {}

    def build(lo: int, hi: int) -> int:
        if hi - lo == 1:
            x = word[lo]
            if x not in leaf:
                leaf[x] = len(rules)
                rules.append((x,))
            return leaf[x]
        mid = (lo + hi) // 2
        a, b = build(lo, mid), build(mid, hi)
        rules.append((a, b))
        return len(rules) - 1

    s = build(0, len(word))
    return Slp(rules, s)


def doubling_program(base: Sequence[str], n: int) -> Slp:
    """The program A_0 -> base, A_i -> A_{i-1} A_{i-1}; value base^(2^n)."""
    rules = [tuple(base)]
    for i in range(1, n + 1):
        rules.append((i - 1, i - 1))
    return Slp(rules, n)


# -- basic operations -------------------------------------------------------

def value_length(p: Slp) -> int:
    return p.lengths()[p.start]


def height(p: Slp, a: int) -> int:
    if not 0 <= a < len(p.rules):
        raise ProgramError(f"unknown variable {a}")
    return p.heights()[a]


def reachable(p: Slp, a: int) -> set[int]:
    seen = {a}
    stack = [a]
    while stack:
        x = stack.pop()
        for s in p.rules[x]:
            if isinstance(s, int) and s not in seen:
                seen.add(s)
                stack.append(s)
    return seen


def restriction(p: Slp, a: int) -> Slp:
    """Keep only the variables reachable from ``a``; ``a`` becomes the start."""
    if not 0 <= a < len(p.rules):
        raise ProgramError(f"unknown variable {a}")
    keep = reachable(p, a)
    order = [x for x in p.order() if x in keep]
    index = {x: i for i, x in enumerate(order)}
    rules = [tuple(index[s] if isinstance(s, int) else s for s in p.rules[x]) for x in order]
    return Slp(rules, index[a])


def trim(p: Slp) -> Slp:
    """Drop unreachable variables; the start ends up last and of maximal height."""
    q = restriction(p, p.start)
    if q == p:
        return p
    return q


def to_cnf(p: Slp) -> Slp:
    """Chomsky normal form: every rhs is one letter or two variables."""
    p = trim(p)
    lens = p.lengths()
    if lens[p.start] == 0:
        return epsilon()
    rules: list[tuple] = []
    leaf: dict[str, int] = {}
    image: dict[int, int] = {}

    def letter_var(x: str) -> int:
        if x not in leaf:
            leaf[x] = len(rules)
            rules.append((x,))
        return leaf[x]

    for a in p.order():
        if lens[a] == 0:
            continue
        parts = []
        for s in p.rules[a]:
            if isinstance(s, int):
                if lens[s]:
                    parts.append(image[s])
            else:
                parts.append(letter_var(s))
        acc = parts[0]
        for b in parts[1:]:
            rules.append((acc, b))
            acc = len(rules) - 1
        image[a] = acc
    return trim(Slp(rules, image[p.start]))


def concat(*parts: Union[Slp, Sequence[str], str]) -> Slp:
    """Disjoint union of the parts plus one new variable for the concatenation."""
    rules: list[tuple] = []
    top: list[Symbol] = []
    for part in parts:
        if isinstance(part, Slp):
            off = len(rules)
            for r in part.rules:
                rules.append(tuple(s + off if isinstance(s, int) else s for s in r))
            top.append(part.start + off)
        elif isinstance(part, str):
            top.append(part)
        else:
            top.extend(part)
    rules.append(tuple(top))
    return trim(Slp(rules, len(rules) - 1))


def extract_into(rules: list, lens: list, a: int, i: int, j: int, memo: dict) -> list:
    """Symbols whose concatenation is val(a)[i:j); appends helper variables to ``rules``.

    ``lens`` must describe every variable of ``rules`` reachable from ``a``.
    """
    if i >= j:
        return []
    if i == 0 and j == lens[a]:
        return [a]
    key = (a, i, j)
    if key in memo:
        return [memo[key]]
    out: list = []
    pos = 0
    for s in rules[a]:
        n = lens[s] if isinstance(s, int) else 1
        lo, hi = max(i, pos), min(j, pos + n)
        if lo < hi:
            if lo == pos and hi == pos + n:
                out.append(s)
            else:
                out.extend(extract_into(rules, lens, s, lo - pos, hi - pos, memo))
        pos += n
        if pos >= j:
            break
    if len(out) > 1:
        rules.append(tuple(out))
        lens.append(j - i)
        memo[key] = len(rules) - 1
        return [memo[key]]
    return out


def extract_substring(p: Slp, i: int, j: int) -> Slp:
    n = value_length(p)
    if not 0 <= i <= j <= n:
        raise ProgramError(f"index range [{i}:{j}) out of range for length {n}")
    if i == j:
        return epsilon()
    rules = list(p.rules)
    lens = list(p.lengths())
    syms = extract_into(rules, lens, p.start, i, j, {})
    rules.append(tuple(syms))
    return trim(Slp(rules, len(rules) - 1))


def letter_at(p: Slp, i: int) -> str:
    lens = p.lengths()
    if not 0 <= i < lens[p.start]:
        raise ProgramError(f"position {i} out of range")
    a = p.start
    while True:
        for s in p.rules[a]:
            n = lens[s] if isinstance(s, int) else 1
            if i < n:
                if isinstance(s, str):
                    return s
                a = s
                break
            i -= n


def decompress(p: Slp, max_len: int = 10 ** 6) -> tuple[str, ...]:
    n = value_length(p)
    if n > max_len:
        raise TooLong(f"value has length {n}, above the limit {max_len}")
    keep = reachable(p, p.start)
    cache: dict[int, tuple] = {}
    for a in p.order():
        if a not in keep:
            continue
        parts = []
        for s in p.rules[a]:
            if isinstance(s, int):
                parts.append(cache[s])
            else:
                parts.append((s,))
        cache[a] = tuple(x for part in parts for x in part)
    return cache[p.start]


def is_compact(p: Slp, c: float) -> bool:
    n = value_length(p)
    if n <= 1:
        raise ProgramError("compactness is defined for values of length > 1")
    return p.size() <= max(c * math.log2(n), 1)


class Dfa:
    """A total deterministic automaton given by a transition dictionary."""

    def __init__(self, states: int, start: int, accepting: Iterable[int], delta: dict):
        self.states = states
        self.start = start
        self.accepting = frozenset(accepting)
        self.delta = dict(delta)

    def run(self, word: Iterable[str]) -> bool:
        q = self.start
        for x in word:
            q = self.delta[(q, x)]
        return q in self.accepting


def fsa_membership(p: Slp, m: Dfa) -> bool:
    """Compose per-variable state maps bottom-up."""
    maps: dict[int, tuple[int, ...]] = {}
    ident = tuple(range(m.states))
    letter_maps: dict[str, tuple[int, ...]] = {}
    for a in p.order():
        f = ident
        for s in p.rules[a]:
            if isinstance(s, int):
                g = maps[s]
            else:
                g = letter_maps.get(s)
                if g is None:
                    g = tuple(m.delta[(q, s)] for q in range(m.states))
                    letter_maps[s] = g
            f = tuple(g[q] for q in f)
        maps[a] = f
    return maps[p.start][m.start] in m.accepting


def inverse_program(p: Slp, invert) -> Slp:
    """Program for the formal inverse: reverse every rhs and invert the letters."""
    rules = [tuple(invert(s) if isinstance(s, str) else s for s in reversed(r)) for r in p.rules]
    return Slp(rules, p.start)
