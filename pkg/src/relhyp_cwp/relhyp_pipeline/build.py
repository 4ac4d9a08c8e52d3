"""Bottom-up construction of a TCSLP for the normal form of an SLP's value, and the CWP solver.

For every concatenation A = B C the normal forms v1 = nf(val B) and
v2 = nf(val C) are already represented.  The normal form of val(A) is then
assembled from at most three pieces: a tethered cut of v1, a short explicit
middle, and a tethered cut of v2.  The cut points come from the thin
triangle formed by v1, v2 and the normal form of their product: the search
for vertices of v1 and v2 at distance <= L from each other locates the
region where the two sides separate.
"""

from __future__ import annotations

import time
from typing import Optional

from ..program_extensions import Cut, Tcslp
from ..group_model import derived_word, inverse_tokens, reduce_tokens
from ..slp_core import Slp, trim
from .evaluate import Binary, Engine, run_deep
from .witness import NoWitnessFound, inv_tok, short_words, tok, word_key


class _Triangle:
    """Distance-<=L correspondences between vertices of v1 (read backwards from b) and v2 (forwards from b)."""

    def __init__(self, engine: Engine, sa: int, sb: int):
        self.ctx = engine.ctx
        self.F = F = engine.forest
        self.L = engine.constants.L
        self.sa, self.sb = sa, sb
        self.n1, self.n2 = F.hat[sa], F.hat[sb]
        self.k = F.lcp(sa, True, sb, False)
        self._c1: dict = {}
        self._c2: dict = {}

    def label(self, l: int, lp: int) -> Optional[tuple]:
        """The word eta with P_l eta = Q_lp when it has length <= L."""
        m = min(self.k, l, lp)
        if (l - m) + (lp - m) > self.L + 1:
            return None
        e = reduce_tokens(inverse_tokens(self.F.view_range(self.sa, True, m, l)) +
                          self.F.tokens(self.sb, m, lp))
        if self.ctx.tokens_length(e) > self.L:
            return None
        return self.ctx.tokens_word(e)

    def corr(self, l: int) -> Optional[tuple]:
        """(eta, l') for the vertex of v1 at distance l from b, shortlex-least eta first."""
        if l in self._c1:
            return self._c1[l]
        best = None
        R = self.L + 1
        for lp in range(max(0, l - R), min(self.n2, l + R) + 1):
            eta = self.label(l, lp)
            if eta is not None:
                key = (word_key(self.ctx, eta), lp)
                if best is None or key < best[0]:
                    best = (key, eta, lp)
        r = self._c1[l] = None if best is None else (best[1], best[2])
        return r

    def corr2(self, lp: int) -> Optional[tuple]:
        """(eta, l) for the vertex of v2 at distance lp from b."""
        if lp in self._c2:
            return self._c2[lp]
        best = None
        R = self.L + 1
        for l in range(max(0, lp - R), min(self.n1, lp + R) + 1):
            eta = self.label(l, lp)
            if eta is not None:
                key = (word_key(self.ctx, eta), l)
                if best is None or key < best[0]:
                    best = (key, eta, l)
        r = self._c2[lp] = None if best is None else (best[1], best[2])
        return r

    def data(self) -> dict:
        return {"n1": self.n1, "n2": self.n2, "lcp": self.k}


class NfBuilder:
    """Builds the TCSLP T with val(T) = nf(val(g)).  ``geodesic`` assumes no cancellation at all."""

    def __init__(self, ctx, engine: Optional[Engine] = None, geodesic: bool = False):
        self.ctx = ctx
        self.engine = engine if engine is not None else Engine(ctx)
        self.F = self.engine.forest
        self.K = self.engine.constants.K
        self.L = self.engine.constants.L
        self.geodesic = geodesic
        self.out = Binary(self.F)
        self.steps = 0

    def run(self, g: Slp) -> Tcslp:
        F, out = self.F, self.out
        x = F.import_slp(trim(g))
        if x == 0:
            prog, nodes = out.to_program(out.eps, self.L)
            self.engine.remember(prog, nodes)
            return prog
        if self.geodesic and F.zero[x]:
            raise ValueError("geodesic construction needs a value without trivial syllables")
        tvar: dict = {}
        for y in F.reachable(x):
            if F.name[y] is not None:
                tvar[y] = out.letter(F.name[y])
                continue
            a, b = tvar[F.left[y]], tvar[F.right[y]]
            if out.nodes[a] == 0:
                tvar[y] = b
            elif out.nodes[b] == 0:
                tvar[y] = a
            else:
                tvar[y] = self.step(y, a, b)
        prog, nodes = out.to_program(tvar[x], self.L)
        self.engine.remember(prog, nodes)
        return prog

    # -- pieces ------------------------------------------------------------------------
    def _left_piece(self, a: int, k: int, zeta: tuple, node: int) -> int:
        """Variable for nf(v1[[0:k)) zeta^-1), whose node is already known."""
        out = self.out
        if k == 0:
            return out.explicit(node)
        x = out.new(Cut(a, 0, k), self.F.extract(out.nodes[a], 0, k))
        return x if not zeta else out.tether(x, (), zeta, node)

    def _right_piece(self, b: int, l: int, theta: tuple, node: int) -> int:
        """Variable for nf(theta v2[[l:n2)))."""
        out = self.out
        n2 = self.F.hat[out.nodes[b]]
        if l == n2:
            return out.explicit(node)
        x = out.new(Cut(b, l, n2), self.F.extract(out.nodes[b], l, n2))
        return x if not theta else out.tether(x, theta, (), node)

    def _strict(self, parts) -> bool:
        F = self.F
        prev = None
        for x in parts:
            if x == 0:
                continue
            if prev is not None and F.fac[F.lnode[prev]] == F.fac[F.fnode[x]]:
                return False
            prev = x
        return True

    def _seq(self, vars_) -> int:
        return self.out.seq([v for v in vars_ if self.out.nodes[v] != 0])

    # -- one concatenation -------------------------------------------------------------
    def step(self, y: int, a: int, b: int) -> int:
        self.steps += 1
        F, out, ctx, K = self.F, self.out, self.ctx, self.K
        sa, sb = out.nodes[a], out.nodes[b]
        n1, n2 = F.hat[sa], F.hat[sb]
        if self.geodesic:
            return self._three(y, a, b, max(0, n1 - K), n1, (), 0, min(n2, K), None)
        tri = _Triangle(self.engine, sa, sb)

        r = tri.corr2(n2)
        if r is not None:
            eta, l = r
            k1 = n1 - l
            k2 = max(0, k1 - K)
            mid = F.tokens(sa, k2, k1) + derived_word(ctx, eta)
            for zeta in short_words(ctx, self.L):
                s1 = F.tether(F.extract(sa, 0, k2), (), zeta)
                s2 = F.tokens_node(reduce_tokens(tok(ctx, zeta) + mid))
                if self._strict((s1, s2)):
                    return self._seq([self._left_piece(a, k2, zeta, s1), out.explicit(s2)])
            raise NoWitnessFound("no connecting word for the left piece", y, self.L, tri.data())

        r = tri.corr(n1)
        if r is not None:
            eta, lp = r
            l2 = min(n2, lp + K)
            mid = derived_word(ctx, eta) + F.tokens(sb, lp, l2)
            for theta in short_words(ctx, self.L):
                s3 = F.tether(F.extract(sb, l2, n2), theta, ())
                s2 = F.tokens_node(reduce_tokens(mid + inv_tok(ctx, theta)))
                if self._strict((s2, s3)):
                    return self._seq([out.explicit(s2), self._right_piece(b, l2, theta, s3)])
            raise NoWitnessFound("no connecting word for the right piece", y, self.L, tri.data())

        lo, hi = 0, n1
        while hi - lo > 1:
            m = (lo + hi) // 2
            if tri.corr(m) is not None:
                lo = m
            else:
                hi = m
        b1 = lo
        eta, b2 = tri.corr(b1)
        if b2 + 1 <= n2 and tri.corr2(b2 + 1) is not None:
            lo, hi = b2 + 1, n2
            while hi - lo > 1:
                m = (lo + hi) // 2
                if tri.corr2(m) is not None:
                    lo = m
                else:
                    hi = m
            b2 = lo
            eta, b1 = tri.corr2(b2)
        k1 = n1 - min(n1, b1 + 2 * K + 2 * self.L)
        l1 = n1 - b1
        l2 = min(n2, b2 + 2 * K)
        return self._three(y, a, b, k1, l1, eta, b2, l2, tri)

    def _three(self, y, a, b, k1, l1, eta, k2, l2, tri) -> int:
        F, out, ctx = self.F, self.out, self.ctx
        sa, sb = out.nodes[a], out.nodes[b]
        n2 = F.hat[sb]
        core = F.tokens(sa, k1, l1) + derived_word(ctx, eta) + F.tokens(sb, k2, l2)
        left = F.extract(sa, 0, k1)
        right = F.extract(sb, l2, n2)
        words = short_words(ctx, self.L)
        for zeta in words:
            s1 = F.tether(left, (), zeta)
            head = tok(ctx, zeta) + core
            for theta in words:
                s2 = F.tokens_node(reduce_tokens(head + inv_tok(ctx, theta)))
                s3 = F.tether(right, theta, ())
                if self._strict((s1, s2, s3)):
                    return self._seq([self._left_piece(a, k1, zeta, s1), out.explicit(s2),
                                      self._right_piece(b, l2, theta, s3)])
        data = tri.data() if tri is not None else {}
        data.update(k1=k1, l1=l1, k2=k2, l2=l2)
        raise NoWitnessFound("no connecting words for the three-piece split", y, self.L, data)


def build_nf_tcslp(g: Slp, ctx, engine: Optional[Engine] = None) -> Tcslp:
    """A TCSLP whose value is nf(val(g)); the size stays linear in |g|."""
    return run_deep(NfBuilder(ctx, engine).run, g)


def build_nf_tcslp_geodesic(g: Slp, ctx, engine: Optional[Engine] = None) -> Tcslp:
    """Variant for programs whose value is already geodesic (no cancellation anywhere)."""
    return run_deep(NfBuilder(ctx, engine, geodesic=True).run, g)


def factor_exponents(g: Slp, ctx) -> dict:
    """Per-factor sums of the letter vectors of val(g), as {factor: vector}."""
    totals: list = [None] * len(g.rules)
    letters = ctx.letters
    for a in g.order():
        acc: dict = {}
        for s in g.rules[a]:
            if isinstance(s, int):
                items = totals[s].items()
            else:
                x = letters[s]
                items = ((x.factor, x.vector),)
            for f, v in items:
                cur = acc.get(f)
                acc[f] = v if cur is None else tuple(p + q for p, q in zip(cur, v))
        totals[a] = acc
    return totals[g.start]


def run_stages(g: Slp, ctx, engine: Optional[Engine] = None, trace=None) -> tuple:
    """Build the TCSLP, eliminate cuts, eliminate tethers.

    Returns the nf SLP and a report with sizes and per-stage wall times.
    ``trace(stage, program)`` is called with each intermediate program.
    """
    from .cut_elim import CutEliminator
    from .ladder import LadderBuilder, binarized

    engine = engine if engine is not None else Engine(ctx)
    times: dict = {}

    def work():
        t0 = time.perf_counter()
        t = NfBuilder(ctx, engine).run(g)
        t1 = time.perf_counter()
        u = CutEliminator(ctx, engine).run(t)
        t2 = time.perf_counter()
        prog, nodes = binarized(u, engine)
        s = engine.forest.export(LadderBuilder(ctx, engine, prog, nodes).result())
        t3 = time.perf_counter()
        times.update(build=t1 - t0, cut_elimination=t2 - t1, tether_elimination=t3 - t2)
        return t, u, s

    t, u, s = run_deep(work)
    if trace is not None:
        trace("tcslp", t)
        trace("tslp", u)
        trace("nf", s)
    report = {"input_size": g.size(), "tcslp_size": t.size(), "tslp_size": u.size(), "nf_size": s.size(),
              "times": times}
    return s, report


def nf_program(g: Slp, ctx, engine: Optional[Engine] = None) -> Slp:
    """An SLP for nf(val(g))."""
    return run_stages(g, ctx, engine)[0]


def prefilter(g: Slp, ctx) -> bool:
    """False when some factor's exponent sum is nonzero (then val(g) is certainly nontrivial)."""
    return not any(any(vec) for vec in factor_exponents(g, ctx).values())


def solve_cwp(g: Slp, ctx, engine: Optional[Engine] = None, use_prefilter: bool = True) -> bool:
    """Whether val(g) is the identity of the group."""
    ctx.require_constants()
    if use_prefilter and not prefilter(g, ctx):
        return False
    if use_prefilter and len(ctx.factors) == 1:
        return True
    nf = nf_program(g, ctx, engine)
    return nf.lengths()[nf.start] == 0
