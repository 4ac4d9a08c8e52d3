"""Shared machinery: a per-run engine (forest + evaluator) and deep-recursion support."""

from __future__ import annotations

import sys
import threading
from typing import Optional

from ..program_extensions import Cut, Tcslp, Tether
from ..forest import Forest
from ..slp_core import BOUND_AUDIT, ProgramError, audit_size_bound

STACK_BYTES = 512 * 1024 * 1024
RECURSION = 1_000_000


def run_deep(fn, *args, **kwargs):
    """Run fn in a thread with a large stack, so deep recursions over programs are safe."""
    if getattr(_local, "deep", False):
        return fn(*args, **kwargs)
    box: dict = {}

    def target():
        _local.deep = True
        try:
            box["value"] = fn(*args, **kwargs)
        except BaseException as exc:  # re-raised in the caller's thread
            box["error"] = exc

    old_limit = sys.getrecursionlimit()
    old_stack = threading.stack_size()
    sys.setrecursionlimit(max(old_limit, RECURSION))
    threading.stack_size(STACK_BYTES)
    try:
        t = threading.Thread(target=target)
        t.start()
        t.join()
    finally:
        threading.stack_size(old_stack)
    if "error" in box:
        raise box["error"]
    return box["value"]


_local = threading.local()


class SplittingProgram(ProgramError):
    """A concatenation or cut in the program splits a component."""


class Evaluator:
    """Forest-node values of the variables of SLPs and TCSLPs (cached per program object)."""

    def __init__(self, ctx, forest: Optional[Forest] = None):
        self.ctx = ctx
        self.forest = forest if forest is not None else Forest(ctx)
        self._cache: dict = {}

    def remember(self, p, nodes: list) -> None:
        self._cache[id(p)] = (p, nodes)

    def values(self, p) -> list:
        hit = self._cache.get(id(p))
        if hit is not None and hit[0] is p:
            return hit[1]
        F = self.forest
        nodes = [0] * len(p.rules)
        for a in p.order():
            rhs = p.rules[a]
            if isinstance(rhs, Cut):
                x = nodes[rhs.var]
                if rhs.compressed:
                    if rhs.end > F.hat[x]:
                        raise ProgramError(f"cut [[{rhs.start}:{rhs.end})) out of range for variable {rhs.var}")
                    nodes[a] = F.extract(x, rhs.start, rhs.end)
                else:
                    if rhs.end > F.length[x]:
                        raise ProgramError(f"cut [{rhs.start}:{rhs.end}) out of range for variable {rhs.var}")
                    nodes[a] = F.extract_raw(x, rhs.start, rhs.end)
            elif isinstance(rhs, Tether):
                x = nodes[rhs.var]
                if not F.is_nf(x):
                    x = F.nf_node(x)
                nodes[a] = F.tether(x, rhs.alpha, rhs.beta)
            else:
                x = 0
                for s in rhs:
                    x = F.pair(x, nodes[s] if isinstance(s, int) else F.leaf(s))
                nodes[a] = x
        if BOUND_AUDIT["enabled"]:
            audit_size_bound(F.length[nodes[p.start]] if nodes[p.start] else 0, p.size())
        self.remember(p, nodes)
        return nodes

    def node(self, p, a: Optional[int] = None) -> int:
        return self.values(p)[p.start if a is None else a]


class Engine(Evaluator):
    """One evaluator per solver run; carries the group constants."""

    def __init__(self, ctx, forest: Optional[Forest] = None):
        super().__init__(ctx, forest)
        self.constants = ctx.require_constants()


class Binary:
    """A program rewritten so that every rhs is a letter, a pair, a tether, or empty.

    Values are forest nodes.  A pair whose halves share a component is only
    allowed when the whole value is a single component; otherwise the
    program is splitting and rejected.
    """

    def __init__(self, forest: Forest):
        self.F = forest
        self.rules: list = []
        self.nodes: list = []
        self._letters: dict = {}
        self._explicit: dict = {}
        self._pairs: dict = {}
        self.eps = self.new((), 0)

    def new(self, rhs, node: int) -> int:
        self.rules.append(rhs)
        self.nodes.append(node)
        return len(self.rules) - 1

    def letter(self, name: str) -> int:
        v = self._letters.get(name)
        if v is None:
            v = self._letters[name] = self.new((name,), self.F.leaf(name))
        return v

    def pair(self, a: int, b: int) -> int:
        F = self.F
        na, nb = self.nodes[a], self.nodes[b]
        if na == 0:
            return b
        if nb == 0:
            return a
        key = (a, b)
        v = self._pairs.get(key)
        if v is not None:
            return v
        node = F.pair(na, nb)
        if not F.fac[node] and F.hat[node] != F.hat[na] + F.hat[nb]:
            raise SplittingProgram("a concatenation splits a component")
        v = self._pairs[key] = self.new((a, b), node)
        return v

    def seq(self, parts) -> int:
        acc = self.eps
        for q in parts:
            acc = self.pair(acc, q)
        return acc

    def symbols(self, rhs, image: dict) -> int:
        """Variable for a right-hand side; each maximal run of same-factor letters is one component."""
        F = self.F
        parts: list = []
        run = 0
        for sym in rhs:
            if isinstance(sym, int):
                if run:
                    parts.append(self.explicit(run))
                    run = 0
                parts.append(image[sym])
            else:
                x = F.leaf(sym)
                if run and F.fac[run] != F.fac[x]:
                    parts.append(self.explicit(run))
                    run = 0
                run = F.pair(run, x)
        if run:
            parts.append(self.explicit(run))
        return self.seq(parts)

    def explicit(self, node: int) -> int:
        """Variables (letters and pairs) for a forest node; returns the top variable."""
        if node == 0:
            return self.eps
        memo = self._explicit
        if node in memo:
            return memo[node]
        F = self.F
        for y in F.reachable(node):
            if y in memo:
                continue
            if F.name[y] is not None:
                memo[y] = self.letter(F.name[y])
            else:
                memo[y] = self.new((memo[F.left[y]], memo[F.right[y]]), y)
        return memo[node]

    def tether(self, a: int, alpha, beta, node: int) -> int:
        return self.new(Tether(a, tuple(alpha), tuple(beta)), node)

    def to_program(self, start: int, J: Optional[int] = None) -> tuple:
        """Trimmed Tcslp reachable from start, with the matching node list."""
        keep: dict = {}
        order: list = []
        stack = [(start, False)]
        while stack:
            a, done = stack.pop()
            if done:
                if a not in keep:
                    keep[a] = len(order)
                    order.append(a)
                continue
            if a in keep:
                continue
            stack.append((a, True))
            rhs = self.rules[a]
            refs = [rhs.var] if isinstance(rhs, (Tether, Cut)) else [s for s in rhs if isinstance(s, int)]
            for s in reversed(refs):
                if s not in keep:
                    stack.append((s, False))
        rules = []
        for a in order:
            rhs = self.rules[a]
            if isinstance(rhs, Tether):
                rules.append(Tether(keep[rhs.var], rhs.alpha, rhs.beta))
            elif isinstance(rhs, Cut):
                rules.append(Cut(keep[rhs.var], rhs.start, rhs.end, rhs.compressed))
            else:
                rules.append(tuple(keep[s] if isinstance(s, int) else s for s in rhs))
        prog = Tcslp(rules, keep[start], J)
        return prog, [self.nodes[a] for a in order]
