"""Cut and tether extensions of straight-line programs.

A right-hand side of a :class:`Tcslp` is one of

* a tuple of symbols (``int`` variables and ``str`` letters), as in an SLP;
* a :class:`Cut` ``B[i:j)`` on letter positions, or ``B[[k:l))`` on positions
  of the derived word when ``compressed`` is set;
* a :class:`Tether` ``B<alpha, beta>`` whose value is nf(alpha val(B) beta^-1).

Programs without tethers are cut-SLPs, programs without cuts are tethered
SLPs; the same class serves all four kinds.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Union

from .slp_core import ProgramError, Slp, TooLong, extract_into, trim


@dataclass(frozen=True)
class Cut:
    var: int
    start: int
    end: int
    compressed: bool = True


@dataclass(frozen=True)
class Tether:
    var: int
    alpha: tuple = ()
    beta: tuple = ()


Rhs = Union[tuple, Cut, Tether]


def _refs(rhs: Rhs) -> list:
    if isinstance(rhs, (Cut, Tether)):
        return [rhs.var]
    return [s for s in rhs if isinstance(s, int)]


class Tcslp:
    """A tethered cut-SLP.  ``J`` bounds the tether words (None: no bound)."""

    def __init__(self, rules: Sequence[Rhs], start: int, J: Optional[int] = None):
        self.rules = tuple(r if isinstance(r, (Cut, Tether)) else tuple(r) for r in rules)
        self.start = start
        self.J = J
        n = len(self.rules)
        if not 0 <= start < n:
            raise ProgramError(f"start variable {start} is not declared")
        for a, rhs in enumerate(self.rules):
            for s in _refs(rhs):
                if not 0 <= s < n:
                    raise ProgramError(f"variable {a} refers to undeclared variable {s}")
            if isinstance(rhs, Cut) and not 0 <= rhs.start <= rhs.end:
                raise ProgramError(f"variable {a} has an invalid cut range")
            if isinstance(rhs, Tether) and J is not None and max(len(rhs.alpha), len(rhs.beta)) > J:
                raise ProgramError(f"variable {a} has a tether word longer than J = {J}")
        self._order = self._topological_order()

    def _topological_order(self) -> tuple:
        n = len(self.rules)
        state = [0] * n
        out = []
        for root in range(n):
            if state[root]:
                continue
            stack = [(root, iter(_refs(self.rules[root])))]
            state[root] = 1
            while stack:
                a, it = stack[-1]
                for s in it:
                    if state[s] == 1:
                        raise ProgramError(f"cycle through variable {s}")
                    if state[s] == 0:
                        state[s] = 1
                        stack.append((s, iter(_refs(self.rules[s]))))
                        break
                else:
                    stack.pop()
                    state[a] = 2
                    out.append(a)
        return tuple(out)

    def order(self) -> tuple:
        return self._order

    def heights(self) -> list:
        hts = [0] * len(self.rules)
        for a in self._order:
            hts[a] = 1 + max([hts[s] for s in _refs(self.rules[a])], default=0)
        return hts

    def size(self) -> int:
        """Total number of symbol occurrences from the alphabet and the variable set."""
        total = 0
        for rhs in self.rules:
            if isinstance(rhs, Cut):
                total += 1
            elif isinstance(rhs, Tether):
                total += 1 + len(rhs.alpha) + len(rhs.beta)
            else:
                total += len(rhs)
        return total

    def has_cuts(self) -> bool:
        return any(isinstance(r, Cut) for r in self.rules)

    def has_tethers(self) -> bool:
        return any(isinstance(r, Tether) for r in self.rules)

    def tether_bound(self) -> int:
        return max([max(len(r.alpha), len(r.beta)) for r in self.rules if isinstance(r, Tether)], default=0)

    def __len__(self) -> int:
        return len(self.rules)

    def __repr__(self) -> str:
        return f"Tcslp(vars={len(self.rules)}, size={self.size()}, start={self.start})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Tcslp) and self.rules == other.rules and self.start == other.start

    def __hash__(self) -> int:
        return hash((self.rules, self.start))

    @classmethod
    def from_slp(cls, p: Slp, J: Optional[int] = None) -> "Tcslp":
        return cls(p.rules, p.start, J)

    def to_slp(self) -> Slp:
        if self.has_cuts() or self.has_tethers():
            raise ProgramError("program still contains cut or tether operators")
        return Slp(self.rules, self.start)


Cslp = Tcslp
Tslp = Tcslp


def cslp_to_slp(p: Tcslp, ctx=None) -> Slp:
    """Eliminate every cut operator.

    Letter-position cuts are removed by descending the derivation (each cut
    adds at most a height's worth of helper variables).  Derived-word cuts
    are first rewritten as letter-position cuts, which needs ``ctx``.
    """
    if p.has_tethers():
        raise ProgramError("cslp_to_slp does not accept tether operators")
    if any(isinstance(r, Cut) and r.compressed for r in p.rules):
        if ctx is None:
            raise ProgramError("compressed cuts need a group context")
        p = raw_cuts(p, ctx)
    rules: list = []
    lens: list = []
    image: dict = {}
    memo: dict = {}
    for a in p.order():
        rhs = p.rules[a]
        if isinstance(rhs, Cut):
            b = image[rhs.var]
            if rhs.end > lens[b]:
                raise ProgramError(f"cut [{rhs.start}:{rhs.end}) out of range for variable {rhs.var}")
            syms = extract_into(rules, lens, b, rhs.start, rhs.end, memo)
            rules.append(tuple(syms))
            lens.append(rhs.end - rhs.start)
        else:
            syms = tuple(image[s] if isinstance(s, int) else s for s in rhs)
            rules.append(syms)
            lens.append(sum(lens[s] if isinstance(s, int) else 1 for s in syms))
        image[a] = len(rules) - 1
    return trim(Slp(rules, image[p.start]))


def raw_cuts(p: Tcslp, ctx) -> Tcslp:
    """Rewrite derived-word cuts as letter-position cuts (program without tethers)."""
    from .forest import Forest

    forest = Forest(ctx)
    nodes: dict = {}
    rules = list(p.rules)
    for a in p.order():
        rhs = p.rules[a]
        if isinstance(rhs, Cut):
            x = nodes[rhs.var]
            if rhs.compressed:
                if rhs.end > forest.hat[x]:
                    raise ProgramError(f"cut [[{rhs.start}:{rhs.end})) out of range for variable {rhs.var}")
                i, j = forest.offset(x, rhs.start), forest.offset(x, rhs.end)
                rules[a] = Cut(rhs.var, i, j, False)
                nodes[a] = forest.extract(x, rhs.start, rhs.end)
            else:
                nodes[a] = forest.extract_raw(x, rhs.start, rhs.end)
        elif isinstance(rhs, Tether):
            raise ProgramError("raw_cuts does not accept tether operators")
        else:
            x = 0
            for s in rhs:
                x = forest.pair(x, nodes[s] if isinstance(s, int) else forest.leaf(s))
            nodes[a] = x
    return Tcslp(rules, p.start, p.J)


def eval_tether_semantics(p: Tcslp, ctx, limit: int = 10 ** 5) -> dict:
    """Explicit value of every variable: decompress, cut, and take normal forms for tethers.

    This is the reference semantics for small programs; values longer than
    ``limit`` are refused.
    """
    from .group_model import nf_word

    vals: dict = {}
    for a in p.order():
        rhs = p.rules[a]
        if isinstance(rhs, Tether):
            w = rhs.alpha + vals[rhs.var] + ctx.inverse_word(rhs.beta)
            if len(w) > limit:
                raise TooLong(f"value of variable {a} exceeds {limit} letters")
            vals[a] = nf_word(ctx, w, limit)
        elif isinstance(rhs, Cut):
            w = vals[rhs.var]
            if rhs.compressed:
                bounds = _component_bounds(ctx, w)
                if rhs.end >= len(bounds):
                    raise ProgramError(f"cut [[{rhs.start}:{rhs.end})) out of range for variable {rhs.var}")
                vals[a] = w[bounds[rhs.start]:bounds[rhs.end]]
            else:
                if rhs.end > len(w):
                    raise ProgramError(f"cut [{rhs.start}:{rhs.end}) out of range for variable {rhs.var}")
                vals[a] = w[rhs.start:rhs.end]
        else:
            out: list = []
            for s in rhs:
                if isinstance(s, int):
                    out.extend(vals[s])
                else:
                    out.append(s)
            if len(out) > limit:
                raise TooLong(f"value of variable {a} exceeds {limit} letters")
            vals[a] = tuple(out)
    return vals


def _component_bounds(ctx, w) -> list:
    """Letter offsets of the component boundaries of w (including 0 and |w|)."""
    bounds = [0]
    for i in range(1, len(w)):
        if ctx.letters[w[i]].factor != ctx.letters[w[i - 1]].factor:
            bounds.append(i)
    if w:
        bounds.append(len(w))
    return bounds


class SplittingCut(ProgramError):
    """A cut starts or ends strictly inside a component of the value it cuts."""


def compressed_cut_normalize(p: Tcslp, ctx) -> Tcslp:
    """Rewrite every letter-position cut as a derived-word cut.

    Each cut must be non-splitting: both ends must fall on component
    boundaries.  A cut that is a proper subword of one component is rejected
    as well.
    """
    from .relhyp_pipeline.evaluate import Evaluator

    ev = Evaluator(ctx)
    rules = list(p.rules)
    for a in p.order():
        rhs = p.rules[a]
        if isinstance(rhs, Cut) and not rhs.compressed:
            x = ev.node(p, rhs.var)
            k = ev.forest.derived_index(x, rhs.start)
            l = ev.forest.derived_index(x, rhs.end)
            if k is None or l is None:
                raise SplittingCut(f"cut [{rhs.start}:{rhs.end}) of variable {rhs.var} splits a component")
            rules[a] = Cut(rhs.var, k, l, True)
    return Tcslp(rules, p.start, p.J)


def word_program(word: Sequence[str]) -> Tcslp:
    return Tcslp([tuple(word)], 0)


__all__ = [
    "Cut", "Tether", "Tcslp", "Cslp", "Tslp", "SplittingCut", "cslp_to_slp", "raw_cuts",
    "eval_tether_semantics", "compressed_cut_normalize",
]
