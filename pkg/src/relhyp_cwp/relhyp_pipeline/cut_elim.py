"""Elimination of derived-word cuts from a TCSLP, producing a tethered SLP.

Cuts are pushed down the derivation.  A prefix of a concatenation is a
prefix of one side (plus the other side); a prefix of a tethered variable
B<alpha, beta> is again a tethered prefix of B's child, with a new short
tether word eta found by a bounded search.  Prefixes or suffixes shorter
than ff(L) syllables are written out explicitly.
"""

from __future__ import annotations

from typing import Optional

from ..program_extensions import Cut, SplittingCut, Tcslp, Tether
from ..slp_core import ProgramError
from .evaluate import Binary, Engine, run_deep
from .witness import NoWitnessFound, short_words


class CutEliminator:
    def __init__(self, ctx, engine: Optional[Engine] = None):
        self.ctx = ctx
        self.engine = engine if engine is not None else Engine(ctx)
        self.F = self.engine.forest
        self.L = self.engine.constants.L
        self.F1 = self.engine.constants.f(self.L)
        self.U = Binary(self.F)
        self._pre: dict = {}
        self._suf: dict = {}

    def run(self, t: Tcslp) -> Tcslp:
        F, U = self.F, self.U
        image: dict = {}
        for a in t.order():
            rhs = t.rules[a]
            if isinstance(rhs, Tether):
                b = image[rhs.var]
                if not F.is_nf(U.nodes[b]):
                    raise ProgramError(f"variable {a} tethers a value that is not in normal form")
                node = F.tether(U.nodes[b], rhs.alpha, rhs.beta)
                image[a] = U.tether(b, rhs.alpha, rhs.beta, node) if node else U.eps
            elif isinstance(rhs, Cut):
                b = image[rhs.var]
                x = U.nodes[b]
                k, l = rhs.start, rhs.end
                if not rhs.compressed:
                    if l > F.length[x]:
                        raise ProgramError(f"cut [{k}:{l}) out of range for variable {rhs.var}")
                    k, l = F.derived_index(x, k), F.derived_index(x, l)
                    if k is None or l is None:
                        raise SplittingCut(f"cut in variable {a} splits a component")
                elif l > F.hat[x]:
                    raise ProgramError(f"cut [[{k}:{l})) out of range for variable {rhs.var}")
                image[a] = self.prefix(self.suffix(b, k), l - k)
            else:
                image[a] = U.symbols(rhs, image)
        prog, nodes = U.to_program(image[t.start], self.L)
        self.engine.remember(prog, nodes)
        return prog

    def _search(self, b: int, i: int, need_left: bool, need_right: bool) -> tuple:
        """(eta, j) splitting the tethered variable b at derived index i through its child."""
        F, U = self.F, self.U
        rhs = U.rules[b]
        x, u = U.nodes[b], U.nodes[rhs.var]
        n, hu = F.hat[x], F.hat[u]
        left, right = F.extract(x, 0, i), F.extract(x, i, n)
        R = 2 * self.L
        for eta in short_words(self.ctx, self.L):
            for j in range(max(0, i - R), min(hu, i + R) + 1):
                if need_left and not F.equal_nf(F.tether(F.extract(u, 0, j), rhs.alpha, eta), left):
                    continue
                if need_right and not F.equal_nf(F.tether(F.extract(u, j, hu), eta, rhs.beta), right):
                    continue
                return eta, j
        raise NoWitnessFound("no splitting word for a tethered cut", b, self.L, {"index": i, "hat": n})

    def prefix(self, b: int, i: int) -> int:
        """Variable for the first i syllables of val(b)."""
        F, U = self.F, self.U
        x = U.nodes[b]
        n = F.hat[x]
        if i == n:
            return b
        if i == 0:
            return U.eps
        key = (b, i)
        r = self._pre.get(key)
        if r is not None:
            return r
        rhs = U.rules[b]
        if isinstance(rhs, Tether):
            F1 = self.F1
            if i < F1:
                r = U.explicit(F.extract(x, 0, i))
            elif n - i >= F1:
                eta, j = self._search(b, i, True, True)
                r = U.tether(self.prefix(rhs.var, j), rhs.alpha, eta, F.extract(x, 0, i))
            else:
                k = n - F1
                if k < F1:
                    r = U.explicit(F.extract(x, 0, i))
                else:
                    eta, j = self._search(b, k, True, False)
                    head = U.tether(self.prefix(rhs.var, j), rhs.alpha, eta, F.extract(x, 0, k))
                    r = U.pair(head, U.explicit(F.extract(x, k, i)))
        else:
            c, d = rhs
            hc = F.hat[U.nodes[c]]
            r = self.prefix(c, i) if i <= hc else U.pair(c, self.prefix(d, i - hc))
        self._pre[key] = r
        return r

    def suffix(self, b: int, i: int) -> int:
        """Variable for val(b) without its first i syllables."""
        F, U = self.F, self.U
        x = U.nodes[b]
        n = F.hat[x]
        if i == 0:
            return b
        if i == n:
            return U.eps
        key = (b, i)
        r = self._suf.get(key)
        if r is not None:
            return r
        rhs = U.rules[b]
        if isinstance(rhs, Tether):
            F1 = self.F1
            if n - i < F1:
                r = U.explicit(F.extract(x, i, n))
            elif i >= F1:
                eta, j = self._search(b, i, True, True)
                r = U.tether(self.suffix(rhs.var, j), eta, rhs.beta, F.extract(x, i, n))
            else:
                k = F1
                if n - k < F1:
                    r = U.explicit(F.extract(x, i, n))
                else:
                    eta, j = self._search(b, k, False, True)
                    tail = U.tether(self.suffix(rhs.var, j), eta, rhs.beta, F.extract(x, k, n))
                    r = U.pair(U.explicit(F.extract(x, i, k)), tail)
        else:
            c, d = rhs
            hc = F.hat[U.nodes[c]]
            r = self.suffix(d, i - hc) if i >= hc else U.pair(self.suffix(c, i), d)
        self._suf[key] = r
        return r


def tcslp_to_tslp(t: Tcslp, ctx, engine: Optional[Engine] = None) -> Tcslp:
    """An equivalent tethered SLP without cut operators."""
    return run_deep(CutEliminator(ctx, engine).run, t)
