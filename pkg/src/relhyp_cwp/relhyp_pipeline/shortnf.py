"""Normal forms for programs with a short derived word, and for quasi-geodesic inputs."""

from __future__ import annotations

from typing import Optional

from ..forest import Forest
from ..group_model import reduce_tokens
from ..slp_core import Slp

# Observed constant in |nf_short_hat(p)| <= C * hat * log2(max(|val(p)|, 2)).
SHORT_HAT_C = 16
HAT_LIMIT = 10 ** 6


class GluingError(ValueError):
    """Cancellation at a junction went deeper than the allowed bound."""


def nf_short_hat(p: Slp, ctx, limit: int = HAT_LIMIT, forest: Optional[Forest] = None) -> Slp:
    """An SLP for nf(val(p)), built from the explicit derived word (at most ``limit`` syllables)."""
    F = forest if forest is not None else Forest(ctx)
    x = F.import_slp(p)
    if x and F.hat[x] > limit:
        raise ValueError(f"derived word has {F.hat[x]} syllables, above the limit {limit}")
    toks = reduce_tokens(F.tokens(x)) if x else []
    return F.export(F.tokens_node(toks))


def nf_from_quasigeodesic(p: Slp, ctx, lam: int = 1, c: int = 2, e_prime: Optional[int] = None,
                          forest: Optional[Forest] = None) -> Slp:
    """nf(val(p)) for a program whose value is a (lam, c)-quasi-geodesic.

    Values are glued bottom-up; every junction may cancel at most
    ``e_prime`` syllables, otherwise :class:`GluingError` is raised.
    """
    if e_prime is None:
        e_prime = ctx.constants.e_prime if ctx.constants is not None else 2
    F = forest if forest is not None else Forest(ctx)
    x = F.import_slp(p)
    memo: dict = {}
    for y in F.reachable(x):
        if F.fac[y]:
            memo[y] = F.token_node((F.fac[y], F.vec[y])) if any(F.vec[y]) else 0
            continue
        a, b = memo[F.left[y]], memo[F.right[y]]
        if a and b:
            k = F.lcp(a, True, b, False)
            if k > e_prime:
                raise GluingError(f"{k} syllables cancel at a junction (bound {e_prime})")
        memo[y] = F.nf_concat(a, b)
    return F.export(memo[x] if x else 0)
