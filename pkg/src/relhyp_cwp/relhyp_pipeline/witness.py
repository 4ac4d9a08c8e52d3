"""Bounded witness searches over short words, in shortlex order."""

from __future__ import annotations

from typing import Optional, Sequence

from ..group_model import derived_word, inverse_tokens, reduce_tokens, shortlex_words
from .evaluate import Evaluator

_WORDS: dict = {}


class NoWitnessFound(RuntimeError):
    """A bounded search for a connecting word came up empty.

    ``variable`` names the offending program variable (or forest node),
    ``radius`` the search bound, and ``data`` the triangle that was searched.
    """

    def __init__(self, message: str, variable=None, radius: Optional[int] = None, data=None):
        super().__init__(message)
        self.variable = variable
        self.radius = radius
        self.data = data or {}


def short_words(ctx, n: int) -> list:
    """Words of length <= n over Sigma in shortlex order (cached per context)."""
    key = (id(ctx), n)
    hit = _WORDS.get(key)
    if hit is None or hit[0] is not ctx:
        hit = _WORDS[key] = (ctx, shortlex_words(ctx, n))
    return hit[1]


def word_key(ctx, w: Sequence[str]) -> tuple:
    """Shortlex sort key of a word."""
    letters = ctx.letters
    return (len(w), tuple(letters[x].rank for x in w))


def difference_word(ctx, forest, x: int, y: int, L: int) -> Optional[tuple]:
    """The nf word eta with x*eta = y if it has length <= L, else None (x, y nf nodes)."""
    k = forest.lcp(x, False, y, False)
    hx, hy = forest.hat[x], forest.hat[y]
    if (hx - k) + (hy - k) > L:
        return None
    e = reduce_tokens(inverse_tokens(forest.tokens(x, k, hx)) + forest.tokens(y, k, hy))
    if ctx.tokens_length(e) > L:
        return None
    return ctx.tokens_word(e)


def difference_search(ctx, g1, g2, u, v, mode: str = "algebraic", L: Optional[int] = None):
    """Shortlex-first eta, |eta| <= L, with g1*u[[:k)) * eta = g2*v[[:l)) in the group.

    ``u`` and ``v`` are cursors (program, k).  Mode ``algebraic`` computes the
    difference directly; ``enumerate`` tries every short word in turn.  Both
    give the same answer because the shortlex-first word of an element is its
    normal form.
    """
    if L is None:
        L = ctx.require_constants().L
    ev = Evaluator(ctx)
    F = ev.forest
    (pu, k), (pv, l) = u, v
    nu, nv = ev.node(pu), ev.node(pv)
    if not (F.is_nf(nu) and F.is_nf(nv)):
        raise ValueError("difference_search expects nf-reduced programs")
    if k > F.hat[nu] or l > F.hat[nv]:
        raise ValueError("cursor beyond the end of the derived word")
    x = F.tether(F.extract(nu, 0, k), tuple(g1), ())
    y = F.tether(F.extract(nv, 0, l), tuple(g2), ())
    if mode == "algebraic":
        return difference_word(ctx, F, x, y, L)
    if mode != "enumerate":
        raise ValueError(f"unknown mode {mode!r}")
    for eta in short_words(ctx, L):
        if F.equal_nf(F.tether(x, (), ctx.inverse_word(eta)), y):
            return eta
    return None


def tok(ctx, w: Sequence[str]) -> list:
    return derived_word(ctx, w)


def inv_tok(ctx, w: Sequence[str]) -> list:
    return derived_word(ctx, ctx.inverse_word(w))
