"""Brute-force ground truth for tests: naive normal forms, random instances, calibration.

The normal form here is computed without the group module's machinery:
syllables are reduced by repeated passes until nothing changes, and each
syllable is spelled by a letter-by-letter search that always picks the
smallest letter still leading to a geodesic.  Geodesic lengths come from an
exhaustive search over the multiplicities of the non-basis letters.
"""

from __future__ import annotations

import itertools
import math
import random
from functools import lru_cache
from typing import Optional, Sequence

from .program_extensions import Cut, Tcslp, Tether
from .group_model import ConstantsBundle, GroupContext
from .slp_core import Slp, TooLong

ORACLE_LIMIT = 10 ** 5
PROFILES = ("balanced", "unary-heavy", "component-splitting", "near-trivial")


# -- syllable algebra -----------------------------------------------------------------
def syllable_nf(syllables: Sequence[tuple]) -> list:
    """Reduce (factor, vector) syllables: merge equal-factor neighbours and drop zeros, to a fixpoint."""
    cur = [(f, tuple(v)) for f, v in syllables]
    while True:
        nxt: list = []
        changed = False
        for f, v in cur:
            if not any(v):
                changed = True
                continue
            if nxt and nxt[-1][0] == f:
                nxt[-1] = (f, tuple(a + b for a, b in zip(nxt[-1][1], v)))
                changed = True
            else:
                nxt.append((f, v))
        cur = nxt
        if not changed:
            return cur


def word_syllables(ctx: GroupContext, w: Sequence[str]) -> list:
    """Letters as one-letter syllables (no merging)."""
    return [(ctx.letters[x].factor, ctx.letters[x].vector) for x in w]


# -- per-factor geodesics -------------------------------------------------------------
class _FactorOracle:
    def __init__(self, ctx: GroupContext, factor: int):
        self.letters = sorted((x for x in ctx.letters.values() if x.factor == factor), key=lambda x: x.rank)
        spec = ctx.spec(factor)
        self.rank = spec.rank
        self.M = spec.M
        self.extras = []
        for x in self.letters:
            basis = sum(1 for c in x.vector if c) == 1 and max(abs(c) for c in x.vector) in (1, spec.M)
            if not basis and x.inverse not in {y.id for y in self.extras}:
                self.extras.append(x)
        self.dist = lru_cache(maxsize=1 << 18)(self._dist)

    def _coord(self, n: int) -> int:
        """Fewest letters among z^{+-1}, z^{+-M} with exponent sum n."""
        n = abs(n)
        q = n // self.M
        # a + |n - aM| is convex in a, so the optimum sits next to n / M
        return min(a + abs(n - a * self.M) for a in (0, max(0, q - 1), q, q + 1))

    def _dist(self, v: tuple) -> int:
        """Word length of v over this factor's letters."""
        best = None
        ranges = [range(-(self.M - 1), self.M) for _ in self.extras]
        for mult in itertools.product(*ranges):
            rest = list(v)
            cost = 0
            for m, x in zip(mult, self.extras):
                cost += abs(m)
                for i, c in enumerate(x.vector):
                    rest[i] -= m * c
            cost += sum(self._coord(c) for c in rest)
            if best is None or cost < best:
                best = cost
        return best

    def spell(self, v: tuple) -> list:
        """Shortlex-least word for v: the smallest letter that keeps the rest geodesic, repeatedly."""
        out = []
        k = self.dist(v)
        while k:
            for x in self.letters:
                r = tuple(a - b for a, b in zip(v, x.vector))
                if self.dist(r) == k - 1:
                    out.append(x.id)
                    v, k = r, k - 1
                    break
            else:
                raise AssertionError("no geodesic continuation")
        return out


_FACTORS: dict = {}


def _factor(ctx: GroupContext, f: int) -> _FactorOracle:
    key = (id(ctx), f)
    hit = _FACTORS.get(key)
    if hit is None or hit[0] is not ctx:
        hit = _FACTORS[key] = (ctx, _FactorOracle(ctx, f))
    return hit[1]


def geodesic_length(ctx: GroupContext, syllable: tuple) -> int:
    return _factor(ctx, syllable[0]).dist(tuple(syllable[1]))


def spell_syllable(ctx: GroupContext, syllable: tuple) -> list:
    return _factor(ctx, syllable[0]).spell(tuple(syllable[1]))


def naive_nf(ctx: GroupContext, w: Sequence[str], limit: int = ORACLE_LIMIT) -> tuple:
    """Normal form of a short word, computed independently of the group module."""
    if len(w) > limit:
        raise TooLong(f"word of length {len(w)} exceeds the oracle limit {limit}")
    out: list = []
    for syl in syllable_nf(word_syllables(ctx, w)):
        out.extend(spell_syllable(ctx, syl))
    return tuple(out)


def element_length(ctx: GroupContext, syllables: Sequence[tuple]) -> int:
    """Word length over Sigma of the element given by syllables."""
    return sum(geodesic_length(ctx, s) for s in syllable_nf(syllables))


def brute_force_slex(ctx: GroupContext, factor: int, v: Sequence[int], max_len: int = 8) -> Optional[tuple]:
    """Shortlex-first word over the factor's letters with vector v, by plain enumeration."""
    letters = sorted((x for x in ctx.letters.values() if x.factor == factor), key=lambda x: x.rank)
    v = tuple(v)
    for n in range(max_len + 1):
        for combo in itertools.product(letters, repeat=n):
            s = [0] * len(v)
            for x in combo:
                for i, c in enumerate(x.vector):
                    s[i] += c
            if tuple(s) == v:
                return tuple(x.id for x in combo)
    return None


# -- evaluation -----------------------------------------------------------------------
def evaluate(p, ctx: GroupContext, limit: int = ORACLE_LIMIT) -> tuple:
    """Explicit value of an SLP or TCSLP: decompress, cut on component boundaries, naive nf for tethers."""
    vals: dict = {}
    for a in p.order():
        rhs = p.rules[a]
        if isinstance(rhs, Tether):
            vals[a] = naive_nf(ctx, tuple(rhs.alpha) + vals[rhs.var] + ctx.inverse_word(rhs.beta), limit)
        elif isinstance(rhs, Cut):
            w = vals[rhs.var]
            if rhs.compressed:
                cuts = [0] + [i for i in range(1, len(w))
                              if ctx.letters[w[i]].factor != ctx.letters[w[i - 1]].factor] + [len(w)]
                if not w:
                    cuts = [0]
                vals[a] = w[cuts[rhs.start]:cuts[rhs.end]]
            else:
                vals[a] = w[rhs.start:rhs.end]
        else:
            out: list = []
            for s in rhs:
                out.extend(vals[s] if isinstance(s, int) else (s,))
            if len(out) > limit:
                raise TooLong(f"value longer than {limit}")
            vals[a] = tuple(out)
    return vals[p.start]


# -- random instances -----------------------------------------------------------------
def _inverse_rules(rules: list, ctx: GroupContext, offset: int) -> list:
    return [tuple(s + offset if isinstance(s, int) else ctx.inverse(s) for s in reversed(r)) for r in rules]


def random_slp(ctx: GroupContext, seed: int, size: int = 20, profile: str = "balanced",
               max_len: int = 10 ** 4) -> Slp:
    """A reproducible random SLP with about ``size`` variables and value length at most ``max_len``."""
    if profile not in PROFILES:
        raise ValueError(f"unknown profile {profile!r}")
    rng = random.Random(f"{profile}:{seed}:{size}")
    sigma = ctx.sigma
    rules: list = []
    lens: list = []

    def add(rhs) -> int:
        rules.append(tuple(rhs))
        lens.append(sum(lens[s] if isinstance(s, int) else 1 for s in rhs))
        return len(rules) - 1

    def pick_pair(limit: int) -> Optional[tuple]:
        for _ in range(20):
            a = _pick(rng, len(rules))
            b = _pick(rng, len(rules))
            if lens[a] + lens[b] <= limit:
                return (a, b) if rng.random() < 0.5 else (b, a)
        return None

    if profile == "unary-heavy":
        for _ in range(max(1, size // 4)):
            x = rng.choice(sigma)
            top = add((x,))
            for _ in range(rng.randint(1, 8)):
                if 2 * lens[top] > max_len // 4:
                    break
                top = add((top, top)) if rng.random() < 0.7 else add((top, top, x))
        while len(rules) < size:
            pr = pick_pair(max_len)
            if pr is None:
                break
            add(pr)
        return Slp(rules, len(rules) - 1)

    if profile == "component-splitting":
        facs = sorted({x.factor for x in ctx.letters.values()})
        by_f = {f: [x for x in sigma if ctx.letters[x].factor == f] for f in facs}
        for _ in range(max(2, size // 3)):
            f, g = rng.sample(facs, 2) if len(facs) > 1 else (facs[0], facs[0])
            word = [rng.choice(by_f[g]) for _ in range(rng.randint(0, 2))] + \
                   [rng.choice(by_f[f]) for _ in range(rng.randint(1, 3))]
            if rng.random() < 0.5:
                word = word[::-1]
            add(word)
        while len(rules) < size:
            # prefer junctions inside a common factor
            best = None
            for _ in range(10):
                pr = pick_pair(max_len)
                if pr is None:
                    break
                a, b = pr
                if _last_factor(rules, ctx, a) == _first_factor(rules, ctx, b):
                    best = pr
                    break
                best = best or pr
            if best is None:
                break
            add(best)
        return Slp(rules, len(rules) - 1)

    if profile == "near-trivial":
        half = max(2, size // 3)
        base = random_slp(ctx, seed, half, rng.choice(("balanced", "unary-heavy")), max_len // 4)
        core = random_slp(ctx, seed + 1, max(2, half // 2), "balanced", max_len // 4)
        n1 = len(base.rules)
        rules = list(base.rules)
        inv_base = _inverse_rules(list(base.rules), ctx, len(rules))
        rules.extend(inv_base)
        off = len(rules)
        core_rules = [tuple(s + off if isinstance(s, int) else s for s in r) for r in core.rules]
        rules.extend(core_rules)
        off2 = len(rules)
        rules.extend(_inverse_rules(list(core.rules), ctx, off2))
        P, Pi = base.start, base.start + n1
        Q, Qi = core.start + off, core.start + off2
        mode = rng.random()
        if mode < 0.45:
            top = (P, Q, Qi, Pi)
        elif mode < 0.7:
            top = (P, Q, Pi, P, Qi, Pi)
        elif mode < 0.85:
            top = (P, rng.choice(sigma), Pi)
        else:
            top = (P, Q, rng.choice(sigma), Qi, Pi)
        rules.append(top)
        return Slp(rules, len(rules) - 1)

    # balanced
    for _ in range(max(2, size // 3)):
        add([rng.choice(sigma) for _ in range(rng.randint(1, 4))])
    while len(rules) < size:
        pr = pick_pair(max_len)
        if pr is None:
            break
        a, b = pr
        add((a, rng.choice(sigma), b) if rng.random() < 0.15 else (a, b))
    return Slp(rules, len(rules) - 1)


def _first_factor(rules, ctx, a):
    while True:
        s = rules[a][0] if rules[a] else None
        if s is None:
            return 0
        if isinstance(s, str):
            return ctx.letters[s].factor
        a = s


def _last_factor(rules, ctx, a):
    while True:
        s = rules[a][-1] if rules[a] else None
        if s is None:
            return 0
        if isinstance(s, str):
            return ctx.letters[s].factor
        a = s


def random_word(ctx: GroupContext, rng: random.Random, n: int) -> tuple:
    return tuple(rng.choice(ctx.sigma) for _ in range(n))


def _pick(rng: random.Random, n: int) -> int:
    """Index biased toward recent variables, so that values grow along the program."""
    if rng.random() < 0.7:
        return rng.randrange(max(0, n - 6), n)
    return rng.randrange(n)


def random_tcslp(ctx: GroupContext, seed: int, size: int = 20, max_len: int = 10 ** 4,
                 J: Optional[int] = None) -> Tcslp:
    """A reproducible nf-reduced, non-splitting TCSLP with cuts and tethers (|alpha|, |beta| <= J)."""
    if J is None:
        J = ctx.require_constants().L
    rng = random.Random(f"tcslp:{seed}:{size}")
    rules: list = []
    vals: list = []

    def bounds(w):
        return [0] + [i for i in range(1, len(w)) if ctx.letters[w[i]].factor != ctx.letters[w[i - 1]].factor] + \
            ([len(w)] if w else [])

    for _ in range(max(2, size // 4)):
        w = naive_nf(ctx, random_word(ctx, rng, rng.randint(1, 8)))
        if not w:
            w = (rng.choice(ctx.sigma),)
        rules.append(w)
        vals.append(w)
    while len(rules) < size:
        r = rng.random()
        if r < 0.45:
            for _ in range(20):
                a, b = _pick(rng, len(rules)), _pick(rng, len(rules))
                u, v = vals[a], vals[b]
                if not u or not v or len(u) + len(v) > max_len:
                    continue
                if ctx.letters[u[-1]].factor != ctx.letters[v[0]].factor:
                    rules.append((a, b))
                    vals.append(u + v)
                    break
        elif r < 0.75:
            a = _pick(rng, len(rules))
            if len(vals[a]) + 2 * J > max_len:
                continue
            alpha = random_word(ctx, rng, rng.randint(0, J))
            beta = random_word(ctx, rng, rng.randint(0, J))
            w = naive_nf(ctx, alpha + vals[a] + ctx.inverse_word(beta))
            rules.append(Tether(a, alpha, beta))
            vals.append(w)
        else:
            a = _pick(rng, len(rules))
            bs = bounds(vals[a])
            h = len(bs) - 1
            if h < 1:
                continue
            k = rng.randint(0, h - 1)
            l = rng.randint(k + 1, h)
            rules.append(Cut(a, k, l))
            vals.append(vals[a][bs[k]:bs[l]])
    # make the last variable depend on as much as possible
    return Tcslp(rules, len(rules) - 1, J)


def random_tslp(ctx: GroupContext, seed: int, size: int = 20, max_len: int = 10 ** 4,
                J: Optional[int] = None) -> Tcslp:
    """Like random_tcslp, without cut operators."""
    if J is None:
        J = ctx.require_constants().L
    rng = random.Random(f"tslp:{seed}:{size}")
    rules: list = []
    vals: list = []
    for _ in range(max(2, size // 4)):
        w = naive_nf(ctx, random_word(ctx, rng, rng.randint(1, 8))) or (rng.choice(ctx.sigma),)
        rules.append(w)
        vals.append(w)
    while len(rules) < size:
        if rng.random() < 0.55:
            for _ in range(20):
                a, b = _pick(rng, len(rules)), _pick(rng, len(rules))
                u, v = vals[a], vals[b]
                if u and v and len(u) + len(v) <= max_len and \
                        ctx.letters[u[-1]].factor != ctx.letters[v[0]].factor:
                    rules.append((a, b))
                    vals.append(u + v)
                    break
        else:
            a = _pick(rng, len(rules))
            alpha = random_word(ctx, rng, rng.randint(0, J))
            beta = random_word(ctx, rng, rng.randint(0, J))
            rules.append(Tether(a, alpha, beta))
            vals.append(naive_nf(ctx, alpha + vals[a] + ctx.inverse_word(beta)))
    return Tcslp(rules, len(rules) - 1, J)


# -- calibration ----------------------------------------------------------------------
def calibrate(ctx: GroupContext, max_word_len: int = 8, bound: int = 1, samples: int = 400,
              seed: int = 0, safety: int = 2) -> ConstantsBundle:
    """Empirical constants from sampled quadrilaterals w1 u = v w2.

    u is a random nf word with |u| <= max_word_len, |w1|, |w2| <= bound and
    v = nf(w1 u w2^-1).  For each vertex of the derived word of u the
    distance (word length over Sigma) to the nearest vertex of v's derived
    word is measured.  L comes from the largest such distance, K from the
    number of end syllables not lying on v, and the results are scaled by
    ``safety``.
    """
    rng = random.Random(seed)
    max_dist = 0
    margin = 0
    cancel = 0
    for _ in range(samples):
        u = naive_nf(ctx, random_word(ctx, rng, rng.randint(1, max_word_len)))
        w1 = random_word(ctx, rng, rng.randint(0, bound))
        w2 = random_word(ctx, rng, rng.randint(0, bound))
        v = naive_nf(ctx, w1 + u + ctx.inverse_word(w2))
        su = syllable_nf(word_syllables(ctx, u))
        sv = syllable_nf(word_syllables(ctx, v))
        start = syllable_nf(word_syllables(ctx, w1))
        pu = [start]
        for s in su:
            pu.append(syllable_nf(pu[-1] + [s]))
        pv = [[]]
        for s in sv:
            pv.append(syllable_nf(pv[-1] + [s]))
        off = []
        for i, p in enumerate(pu):
            inv = [(f, tuple(-c for c in vec)) for f, vec in reversed(p)]
            d = min(element_length(ctx, inv + q) for q in pv)
            max_dist = max(max_dist, d)
            off.append(d > 0)
        n = len(off)
        head = next((i for i in range(n) if not off[i]), n)
        tail = next((i for i in range(n) if not off[n - 1 - i]), n)
        if head < n:
            margin = max(margin, head, tail)
        # cancellation when one letter is appended to a nf word
        x = rng.choice(ctx.sigma)
        k = len(su) + 1 - len(syllable_nf(su + word_syllables(ctx, (x,))))
        cancel = max(cancel, k)
    L = max(1, safety * max_dist)
    K = max(1, safety * margin)
    delta = max(0, max_dist)
    e_prime = max(1, safety * cancel)
    return ConstantsBundle(delta=delta, K=K, L=L, e_prime=e_prime, e1=max(1, cancel), e2=e_prime,
                           ff=(1, K))


def constants_for(ctx: GroupContext) -> GroupContext:
    """ctx with calibrated constants attached (if it has none)."""
    if ctx.constants is not None:
        return ctx
    return ctx.with_constants(calibrate(ctx))


def fingerprint(p: Slp) -> str:
    """Stable hash of a program's rules (for golden tests)."""
    import hashlib

    h = hashlib.sha256()
    h.update(repr((p.rules, p.start)).encode())
    return h.hexdigest()[:16]


def log2(n: int) -> float:
    return math.log2(max(n, 2))
