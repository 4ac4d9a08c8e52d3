"""Free products of free abelian groups with the generating set Sigma = Y_1 u ... u Y_k.

Elements are handled through syllables (tokens): a token is a pair
``(factor, vector)`` with a 1-based factor index.  The normal form of a word
reduces its syllable sequence in the free product and writes every surviving
syllable as the shortlex-least word over its factor's alphabet Y_i.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from . import abelian_normalform as abelian
from .abelian_normalform import FactorSpec, build_factor_spec

Token = tuple  # (factor, vector)


class NfLimitExceeded(ValueError):
    """The explicit normal form was requested for a word above the length limit."""


@dataclass(frozen=True)
class Letter:
    id: str
    factor: int
    vector: tuple
    inverse: str
    rank: int  # position in the order on Sigma
    local: int  # position in the order on Y_factor


@dataclass(frozen=True)
class ConstantsBundle:
    """Group constants: delta, K, L, e', e1, e2 and the linear function ff(n) = slope*n + intercept."""

    delta: int
    K: int
    L: int
    e_prime: int
    e1: int
    e2: int
    ff: tuple = (1, 2)
    lam: int = 1
    c: int = 2

    def __post_init__(self):
        slope, intercept = self.ff
        if slope < 1 or intercept < 0:
            raise ValueError("ff must satisfy slope >= 1 and intercept >= 0")
        if self.delta < 0:
            raise ValueError("delta must be nonnegative")
        for name in ("K", "L", "e_prime", "e1", "e2"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")

    def f(self, n: int) -> int:
        slope, intercept = self.ff
        return slope * n + intercept

    @property
    def J(self) -> int:
        return self.L


class GroupContext:
    """A free product of free abelian factors with its ordered alphabet."""

    def __init__(self, factors: Sequence[FactorSpec], constants: Optional[ConstantsBundle] = None,
                 names: Optional[Sequence[str]] = None):
        if not factors:
            raise ValueError("at least one factor is required")
        self.factors = tuple(factors)
        self.constants = constants
        self.names = tuple(names) if names else tuple(f"H{i + 1}" for i in range(len(factors)))
        letters: dict[str, Letter] = {}
        sigma: list[str] = []
        for fi, spec in enumerate(self.factors, start=1):
            for fl in spec.letters:
                if fl.name in letters:
                    raise ValueError(f"letter {fl.name!r} appears in two factors")
                letters[fl.name] = Letter(fl.name, fi, fl.vector, fl.inverse, len(sigma), fl.rank)
                sigma.append(fl.name)
        self.letters = letters
        self.sigma = tuple(sigma)
        self._slex = lru_cache(maxsize=1 << 16)(self._slex_uncached)
        self._counts = lru_cache(maxsize=1 << 16)(self._counts_uncached)

    @classmethod
    def free_product(cls, ranks: Sequence[int], extras: Optional[dict] = None,
                     constants: Optional[ConstantsBundle] = None) -> "GroupContext":
        extras = extras or {}
        specs = []
        offset = 0
        for i, r in enumerate(ranks, start=1):
            specs.append(build_factor_spec(r, extras.get(i, ()), offset))
            offset += r
        return cls(specs, constants)

    def with_constants(self, constants: ConstantsBundle) -> "GroupContext":
        return GroupContext(self.factors, constants, self.names)

    def require_constants(self) -> ConstantsBundle:
        if self.constants is None:
            raise ValueError("this operation needs an explicit constants bundle")
        return self.constants

    def __repr__(self) -> str:
        ranks = ",".join(str(f.rank) for f in self.factors)
        return f"GroupContext(ranks=[{ranks}], letters={len(self.sigma)})"

    # -- letters and tokens ----------------------------------------------------
    def letter(self, name: str) -> Letter:
        try:
            return self.letters[name]
        except KeyError:
            raise ValueError(f"unknown letter {name!r}") from None

    def inverse(self, name: str) -> str:
        return self.letter(name).inverse

    def inverse_word(self, word: Sequence[str]) -> tuple:
        return tuple(self.letters[x].inverse for x in reversed(word))

    def spec(self, factor: int) -> FactorSpec:
        return self.factors[factor - 1]

    def _counts_uncached(self, token: Token) -> tuple:
        return abelian.slex_counts(self.spec(token[0]), token[1])

    def slex_counts(self, token: Token) -> tuple:
        return self._counts(token)

    def _slex_uncached(self, token: Token) -> tuple:
        return abelian.counts_word(self.spec(token[0]), self._counts(token))

    def token_word(self, token: Token) -> tuple:
        """Shortlex-least word over Y_i for a syllable."""
        return self._slex(token)

    def token_length(self, token: Token) -> int:
        return sum(self._counts(token))

    def tokens_word(self, tokens: Iterable[Token]) -> tuple:
        out: list[str] = []
        for t in tokens:
            out.extend(self.token_word(t))
        return tuple(out)

    def tokens_length(self, tokens: Iterable[Token]) -> int:
        return sum(self.token_length(t) for t in tokens)

    def word_tokens(self, word: Sequence[str]) -> list:
        return derived_word(self, word)


def zero(v) -> bool:
    return not any(v)


def inverse_token(t: Token) -> Token:
    return (t[0], tuple(-c for c in t[1]))


def inverse_tokens(tokens: Sequence[Token]) -> list:
    return [inverse_token(t) for t in reversed(tokens)]


def derived_word(ctx: GroupContext, word: Sequence[str]) -> list:
    """Maximal same-factor runs of a word as (factor, summed vector) syllables."""
    out: list = []
    cur_f = 0
    acc: list = []
    for name in word:
        x = ctx.letters[name]
        if x.factor != cur_f:
            if cur_f:
                out.append((cur_f, tuple(acc)))
            cur_f = x.factor
            acc = list(x.vector)
        else:
            for i, c in enumerate(x.vector):
                acc[i] += c
    if cur_f:
        out.append((cur_f, tuple(acc)))
    return out


def components(ctx: GroupContext, word: Sequence[str]) -> list:
    """Component boundaries as (start, end, factor) letter intervals."""
    out = []
    start = 0
    for i in range(1, len(word) + 1):
        if i == len(word) or ctx.letters[word[i]].factor != ctx.letters[word[start]].factor:
            out.append((start, i, ctx.letters[word[start]].factor))
            start = i
    return out


def reduce_tokens(tokens: Iterable[Token]) -> list:
    """Free-product reduction of a syllable sequence: merge neighbours, drop zeros."""
    stack: list = []
    for f, v in tokens:
        if stack and stack[-1][0] == f:
            pf, pv = stack.pop()
            v = tuple(a + b for a, b in zip(pv, v))
        if any(v):
            stack.append((f, v))
    return stack


def nf_tokens(ctx: GroupContext, word: Sequence[str]) -> list:
    return reduce_tokens(derived_word(ctx, word))


def nf_word(ctx: GroupContext, word: Sequence[str], limit: int = 10 ** 4) -> tuple:
    if len(word) > limit:
        raise NfLimitExceeded(f"word of length {len(word)} exceeds the limit {limit}")
    return ctx.tokens_word(nf_tokens(ctx, word))


def is_nf_word(ctx: GroupContext, word: Sequence[str]) -> bool:
    toks = derived_word(ctx, word)
    for t in toks:
        if zero(t[1]):
            return False
    for t, (s, e, f) in zip(toks, components(ctx, word)):
        if tuple(word[s:e]) != ctx.token_word(t):
            return False
    return True


def junction_ok(ctx: GroupContext, left: Optional[Token], right: Optional[Token],
                left_counts=None, right_counts=None, strict: bool = False) -> bool:
    """Whether nf words ending in ``left`` and starting with ``right`` concatenate to an nf word.

    With ``strict`` the two syllables must lie in different factors (the
    concatenation is then also non-splitting).  Otherwise a shared factor is
    allowed when the merged syllable is still written in shortlex form, which
    is decided from the letter multiplicities.
    """
    if left is None or right is None:
        return True
    if left[0] != right[0]:
        return True
    if strict:
        return False
    merged = tuple(a + b for a, b in zip(left[1], right[1]))
    if zero(merged):
        return False
    lc = left_counts if left_counts is not None else ctx.slex_counts(left)
    rc = right_counts if right_counts is not None else ctx.slex_counts(right)
    total = tuple(a + b for a, b in zip(lc, rc))
    if total != ctx.slex_counts((left[0], merged)):
        return False
    last = max(i for i, c in enumerate(lc) if c)
    first = min(i for i, c in enumerate(rc) if c)
    return last <= first


def shortlex_words(ctx: GroupContext, max_len: int):
    """All words over Sigma of length <= max_len in shortlex order."""
    layer = [()]
    out = [()]
    for _ in range(max_len):
        layer = [w + (x,) for w in layer for x in ctx.sigma]
        out.extend(layer)
    return out


def is_nf_reduced_slp(ctx: GroupContext, p) -> bool:
    """Membership of val(p) in the normal-form language, decided on the compressed program."""
    from .forest import Forest

    forest = Forest(ctx)
    return forest.is_nf(forest.import_slp(p))


def bounded_difference_search(ctx: GroupContext, g1: Sequence[str], g2: Sequence[str], u, v,
                              mode: str = "algebraic"):
    """Shortlex-first eta with |eta| <= L and g1*u[[:k)) * eta = g2*v[[:l)) in G, or None.

    ``u`` and ``v`` are cursors ``(program, k)`` addressing compressed-index
    prefixes of nf-reduced programs.
    """
    from .relhyp_pipeline.witness import difference_search

    return difference_search(ctx, g1, g2, u, v, mode)
