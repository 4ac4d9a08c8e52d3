"""Component roots, derived-index conversion and splitting checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from ..forest import Forest
from ..slp_core import ProgramError, Slp

NON_SPLITTING = "non-splitting"
SPLITTING = "splitting"


class NotAligned(ProgramError):
    """A letter offset falls strictly inside a component."""


@dataclass
class RootIndex:
    """For each variable of a program, the factor of its value when that value is one component (else 0)."""

    program: Slp
    factor: list
    hats: list
    _roots: dict = field(default_factory=dict, repr=False)

    def is_component(self, a: int) -> bool:
        return self.factor[a] != 0

    def component_roots(self, a: Optional[int] = None) -> list:
        """Variables rooting the components of val(a), left to right."""
        if a is None:
            a = self.program.start
        hit = self._roots.get(a)
        if hit is not None:
            return hit
        out = []
        stack = [a]
        rules = self.program.rules
        while stack:
            b = stack.pop()
            if self.factor[b]:
                out.append(b)
            else:
                stack.extend(reversed([s for s in rules[b] if isinstance(s, int)]))
        self._roots[a] = out
        return out


def ensure_component_roots(p: Slp, ctx, forest: Optional[Forest] = None) -> tuple:
    """An equivalent program in which every component of every value has a root variable.

    Returns the new program and its :class:`RootIndex`.
    """
    F = forest if forest is not None else Forest(ctx)
    q = F.export(F.import_slp(p))
    nodes = _nodes_of(F, q)
    factor = [F.fac[x] if x else 0 for x in nodes]
    hats = [F.hat[x] if x else 0 for x in nodes]
    return q, RootIndex(q, factor, hats)


def _nodes_of(F: Forest, q: Slp) -> list:
    nodes = [0] * len(q.rules)
    for a in q.order():
        x = 0
        for s in q.rules[a]:
            x = F.pair(x, nodes[s] if isinstance(s, int) else F.leaf(s))
        nodes[a] = x
    return nodes


def split_check(p: Slp, i: int, j: int, ctx, forest: Optional[Forest] = None) -> str:
    """Whether the letter interval [i, j) of val(p) is a union of whole components."""
    F = forest if forest is not None else Forest(ctx)
    x = F.import_slp(p)
    n = F.length[x] if x else 0
    if not 0 <= i <= j <= n:
        raise IndexError(f"interval [{i}:{j}) outside [0:{n})")
    if i == j:
        return NON_SPLITTING
    if F.derived_index(x, i) is None or F.derived_index(x, j) is None:
        return SPLITTING
    return NON_SPLITTING


def compressed_index_convert(p: Slp, k: int, l: int, ctx, forest: Optional[Forest] = None) -> tuple:
    """Letter offsets (i, j) of the derived-index interval [[k:l)) of val(p)."""
    F = forest if forest is not None else Forest(ctx)
    x = F.import_slp(p)
    h = F.hat[x] if x else 0
    if not 0 <= k <= l <= h:
        raise IndexError(f"interval [[{k}:{l})) outside [[0:{h}))")
    if x == 0:
        return 0, 0
    return F.offset(x, k), F.offset(x, l)


def letter_index_convert(p: Slp, i: int, j: int, ctx, forest: Optional[Forest] = None) -> tuple:
    """Derived indices (k, l) of a non-splitting letter interval [i, j)."""
    F = forest if forest is not None else Forest(ctx)
    x = F.import_slp(p)
    if x == 0:
        if i == j == 0:
            return 0, 0
        raise IndexError("interval outside the empty word")
    k, l = F.derived_index(x, i), F.derived_index(x, j)
    if k is None or l is None:
        raise NotAligned(f"[{i}:{j}) splits a component")
    return k, l
