"""Deterministic equality and longest common prefix for values of SLPs.

Equality is decided by recompression: both programs are processed together,
alternating block compression (maximal runs a^l become fresh letters) and
pair compression (pairs ab with a in a left set and b in a right set become
fresh letters).  Crossing occurrences are first made explicit by popping
letters out of variables.  Fresh letters are shared between the two
programs, so the values are equal exactly when the final letters agree.

Polynomial fingerprints modulo 2^61-1 act only as a filter that may prove
inequality; any "equal" verdict is confirmed exactly.
"""

from __future__ import annotations

import hashlib

from .slp_core import Slp, decompress, extract_substring, letter_at, trim, value_length

MOD = (1 << 61) - 1
BASE = 0x2545F4914F6CDD1D % MOD
DIRECT_LIMIT = 1 << 15


def token_value(token) -> int:
    """Deterministic pseudo-random value in [1, MOD) for a hashable token."""
    h = hashlib.blake2b(repr(token).encode(), digest_size=8).digest()
    return int.from_bytes(h, "big") % (MOD - 1) + 1


class Fingerprints:
    """Per-variable polynomial hashes of an SLP value."""

    def __init__(self, p: Slp):
        self.p = p
        lens = p.lengths()
        self.hash = [0] * len(p.rules)
        self.power = [1] * len(p.rules)
        cache: dict = {}
        for a in p.order():
            h, pw = 0, 1
            for s in p.rules[a]:
                if isinstance(s, int):
                    h = (h * self.power[s] + self.hash[s]) % MOD
                    pw = pw * self.power[s] % MOD
                else:
                    tv = cache.get(s)
                    if tv is None:
                        tv = cache[s] = token_value(s)
                    h = (h * BASE + tv) % MOD
                    pw = pw * BASE % MOD
            self.hash[a] = h
            self.power[a] = pw
        self.lens = lens
        self.letter_value = cache

    def prefix(self, m: int) -> int:
        """Hash of the first m letters of the value."""
        p, lens = self.p, self.lens
        a = p.start
        h = 0
        while m > 0:
            for s in p.rules[a]:
                n = lens[s] if isinstance(s, int) else 1
                if n <= m:
                    if isinstance(s, int):
                        h = (h * self.power[s] + self.hash[s]) % MOD
                    else:
                        tv = self.letter_value.get(s) or token_value(s)
                        h = (h * BASE + tv) % MOD
                    m -= n
                    if m == 0:
                        return h
                else:
                    a = s
                    break
        return h

    def full(self) -> int:
        return self.hash[self.p.start]


# -- recompression ----------------------------------------------------------

class _Grammar:
    """Working grammar: rhs entries are variable ids (int) or letters (tuples (id,))."""

    def __init__(self, programs: list[Slp]):
        self.rules: list[list] = []
        self.starts: list[int] = []
        self.names: dict = {}
        for p in programs:
            off = len(self.rules)
            for r in p.rules:
                self.rules.append([s + off if isinstance(s, int) else self._letter(("L", s)) for s in r])
            self.starts.append(p.start + off)
        self.order = self._order()

    def _letter(self, key) -> tuple:
        if key not in self.names:
            self.names[key] = (len(self.names),)
        return self.names[key]

    def _order(self) -> list[int]:
        n = len(self.rules)
        seen = [False] * n
        out: list[int] = []
        for root in self.starts:
            if seen[root]:
                continue
            stack = [(root, iter(self.rules[root]))]
            seen[root] = True
            while stack:
                a, it = stack[-1]
                for s in it:
                    if isinstance(s, int) and not seen[s]:
                        seen[s] = True
                        stack.append((s, iter(self.rules[s])))
                        break
                else:
                    stack.pop()
                    out.append(a)
        return out

    def lengths(self) -> dict:
        lens: dict = {}
        for a in self.order:
            total = 0
            for s in self.rules[a]:
                total += lens[s] if isinstance(s, int) else (s[1] if len(s) > 1 else 1)
            lens[a] = total
        return lens

    # block compression ------------------------------------------------------
    def block_phase(self) -> None:
        starts = set(self.starts)
        pop_left: dict = {}
        pop_right: dict = {}
        for a in self.order:
            rhs: list = []
            for s in self.rules[a]:
                if isinstance(s, int):
                    if s in pop_left:
                        rhs.extend(pop_left[s])
                    if self.rules[s]:
                        rhs.append(s)
                    if s in pop_right:
                        rhs.extend(pop_right[s])
                else:
                    rhs.append(s if len(s) > 1 else (s[0], 1))
            merged: list = []
            for s in rhs:
                if not isinstance(s, int) and merged and not isinstance(merged[-1], int) and merged[-1][0] == s[0]:
                    merged[-1] = (s[0], merged[-1][1] + s[1])
                else:
                    merged.append(s)
            if a not in starts:
                left: list = []
                right: list = []
                if merged and not isinstance(merged[0], int):
                    left.append(merged.pop(0))
                if merged and not isinstance(merged[-1], int):
                    right.append(merged.pop())
                if left:
                    pop_left[a] = left
                if right:
                    pop_right[a] = right
            self.rules[a] = merged
        for a in self.order:
            self.rules[a] = [s if isinstance(s, int) else (self._letter(("B", s[0], s[1])) if s[1] > 1 else (s[0],))
                             for s in self.rules[a]]
        self.order = [a for a in self.order if self.rules[a] or a in starts]

    # pair compression ---------------------------------------------------------
    def _ends(self) -> tuple[dict, dict]:
        first: dict = {}
        last: dict = {}
        for a in self.order:
            r = self.rules[a]
            if r:
                first[a] = first[r[0]] if isinstance(r[0], int) else r[0]
                last[a] = last[r[-1]] if isinstance(r[-1], int) else r[-1]
        return first, last

    def _partition(self) -> tuple[set, set]:
        first, last = self._ends()
        mult: dict = {a: 0 for a in self.order}
        for s in self.starts:
            mult[s] += 1
        for a in reversed(self.order):
            for s in self.rules[a]:
                if isinstance(s, int):
                    mult[s] += mult[a]
        weight: dict = {}
        for a in self.order:
            r = self.rules[a]
            for x, y in zip(r, r[1:]):
                lx = last[x] if isinstance(x, int) else x
                fy = first[y] if isinstance(y, int) else y
                if lx != fy:
                    weight[(lx, fy)] = weight.get((lx, fy), 0) + mult[a]
        out_w: dict = {}
        in_w: dict = {}
        for (x, y), w in weight.items():
            out_w.setdefault(x, {})[y] = w
            in_w.setdefault(y, {})[x] = w
        letters = sorted(set(out_w) | set(in_w))
        left: set = set()
        right: set = set()
        for c in letters:
            outs, ins = out_w.get(c, {}), in_w.get(c, {})
            gain_left = sum(w for d, w in outs.items() if d in right) + sum(w for d, w in ins.items() if d in right)
            gain_right = sum(w for d, w in outs.items() if d in left) + sum(w for d, w in ins.items() if d in left)
            if gain_left >= gain_right:
                left.add(c)
            else:
                right.add(c)
        forward = sum(w for (x, y), w in weight.items() if x in left and y in right)
        backward = sum(w for (x, y), w in weight.items() if x in right and y in left)
        if backward > forward:
            left, right = right, left
        return left, right

    def pair_phase(self) -> None:
        left, right = self._partition()
        starts = set(self.starts)
        pop_left: dict = {}
        pop_right: dict = {}
        for a in self.order:
            rhs: list = []
            for s in self.rules[a]:
                if isinstance(s, int):
                    if s in pop_left:
                        rhs.append(pop_left[s])
                    if self.rules[s]:
                        rhs.append(s)
                    if s in pop_right:
                        rhs.append(pop_right[s])
                else:
                    rhs.append(s)
            if a not in starts:
                if rhs and not isinstance(rhs[0], int) and rhs[0] in right:
                    pop_left[a] = rhs.pop(0)
                if rhs and not isinstance(rhs[-1], int) and rhs[-1] in left:
                    pop_right[a] = rhs.pop()
            out: list = []
            i = 0
            while i < len(rhs):
                s = rhs[i]
                if (i + 1 < len(rhs) and not isinstance(s, int) and not isinstance(rhs[i + 1], int)
                        and s in left and rhs[i + 1] in right):
                    out.append(self._letter(("P", s, rhs[i + 1])))
                    i += 2
                else:
                    out.append(s)
                    i += 1
            self.rules[a] = out
        self.order = [a for a in self.order if self.rules[a] or a in starts]

    def start_value(self, k: int):
        """The single letter a start reduces to, or None if still longer."""
        r = self.rules[self.starts[k]]
        while len(r) == 1 and isinstance(r[0], int):
            r = self.rules[r[0]]
        if len(r) == 1 and not isinstance(r[0], int):
            return r[0]
        return None


def recompression_equal(g: Slp, h: Slp) -> bool:
    n = value_length(g)
    if n != value_length(h):
        return False
    if n == 0:
        return True
    gram = _Grammar([trim(g), trim(h)])
    for _ in range(8 * n.bit_length() + 32):
        lens = gram.lengths()
        la, lb = lens[gram.starts[0]], lens[gram.starts[1]]
        if la != lb:
            return False
        if la == 1:
            return gram.start_value(0) == gram.start_value(1)
        gram.block_phase()
        lens = gram.lengths()
        if lens[gram.starts[0]] != lens[gram.starts[1]]:
            return False
        if lens[gram.starts[0]] == 1:
            return gram.start_value(0) == gram.start_value(1)
        gram.pair_phase()
    raise RuntimeError("recompression failed to converge")


def _edge_letters(p: Slp):
    n = value_length(p)
    if n == 0:
        return None, None
    return letter_at(p, 0), letter_at(p, n - 1)


def slp_equal(g: Slp, h: Slp, method: str = "auto") -> bool:
    """Exact equality of values.

    ``method`` selects "recompression", "direct" (decompress, small values
    only) or "auto" (direct below a size threshold, recompression otherwise).
    Fingerprints are consulted only to reject.
    """
    n = value_length(g)
    if n != value_length(h):
        return False
    if n == 0:
        return True
    if _edge_letters(g) != _edge_letters(h):
        return False
    if method == "direct" or (method == "auto" and n <= DIRECT_LIMIT):
        return decompress(g, n) == decompress(h, n)
    if Fingerprints(g).full() != Fingerprints(h).full():
        return False
    return recompression_equal(g, h)


def _direct_lcp(g: Slp, h: Slp, m: int) -> int:
    a = decompress(extract_substring(g, 0, m), m)
    b = decompress(extract_substring(h, 0, m), m)
    k = 0
    while k < m and a[k] == b[k]:
        k += 1
    return k


def slp_compare_prefix(g: Slp, h: Slp) -> int:
    """Length of the longest common prefix of the two values."""
    m = min(value_length(g), value_length(h))
    if m == 0:
        return 0
    if m <= DIRECT_LIMIT:
        return _direct_lcp(g, h, m)
    fg, fh = Fingerprints(g), Fingerprints(h)
    lo, hi = 0, m  # hashes agree at lo; search the largest agreeing length
    if fg.prefix(m) == fh.prefix(m):
        lo = m
    else:
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if fg.prefix(mid) == fh.prefix(mid):
                lo = mid
            else:
                hi = mid
    if _verify_prefix(g, h, lo, m):
        return lo
    # A fingerprint collision: fall back to an exact binary search.
    lo, hi = 0, m + 1
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if slp_equal(extract_substring(g, 0, mid), extract_substring(h, 0, mid), "recompression"):
            lo = mid
        else:
            hi = mid
    return lo


def _verify_prefix(g: Slp, h: Slp, k: int, m: int) -> bool:
    if k < m and letter_at(g, k) == letter_at(h, k):
        return False
    return slp_equal(extract_substring(g, 0, k), extract_substring(h, 0, k))


def cslp_equal(g, h, ctx=None) -> bool:
    """Equality of values of cut-SLPs: eliminate the cuts, then compare as SLPs."""
    from .program_extensions import Tcslp, cslp_to_slp

    g2 = cslp_to_slp(g, ctx) if isinstance(g, Tcslp) else g
    h2 = cslp_to_slp(h, ctx) if isinstance(h, Tcslp) else h
    return slp_equal(g2, h2)
