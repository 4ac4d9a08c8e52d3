"""Elimination of tethers: from a tethered SLP to an SLP for the same normal form.

Every variable A is handled at a depth d (how many tethers may still be
wrapped around it).  Values with at most (8d+1)F syllables are kept
explicitly.  A longer value is stored as an explicit head l_A, an explicit
tail r_A (each at most (4d + Ht(A))F syllables) and a family of forest nodes
A_{alpha,beta} = nf(alpha M beta^-1) for the middle part M, built lazily for
the short words alpha, beta that are actually needed.  Here F = ff(2L).
"""

from __future__ import annotations

from typing import Optional

from ..program_extensions import Tcslp, Tether
from ..group_model import inverse_tokens, reduce_tokens
from ..slp_core import Slp
from .evaluate import Binary, Engine, run_deep
from .witness import NoWitnessFound, inv_tok, short_words, tok, word_key


class LadderInvariantError(AssertionError):
    """A head or tail exceeded its length bound."""


class Info:
    """Head/tail data of a variable at one depth.

    ``kind`` says how the middle part is obtained: "mid" (cut from an explicit
    value), "same" (shared with a child, a short neighbour is absorbed into
    the tail or head), "both" (two long children), "left" / "right" (one long
    child, the short rest moves into the middle) and "tether" (a tether
    around a long value).
    """

    __slots__ = ("short", "toks", "l", "r", "kind", "data", "ladders")

    def __init__(self, short: bool, toks=None, l=None, r=None, kind=None, data=None):
        self.short = short
        self.toks = toks
        self.l = l
        self.r = r
        self.kind = kind
        self.data = data
        self.ladders: dict = {}


class LadderBuilder:
    def __init__(self, ctx, engine: Engine, prog: Tcslp, nodes: list):
        self.ctx = ctx
        self.engine = engine
        self.F = engine.forest
        self.L = engine.constants.L
        self.FF = engine.constants.f(2 * self.L)
        self.prog = prog
        self.nodes = nodes
        self.rules = prog.rules
        self.ht = prog.heights()
        tht = [0] * len(prog.rules)
        for a in prog.order():
            rhs = prog.rules[a]
            if isinstance(rhs, Tether):
                tht[a] = 1 + tht[rhs.var]
            else:
                tht[a] = max([tht[s] for s in rhs if isinstance(s, int)], default=0)
        top = tht[prog.start]
        self.depth = [top - t + 1 for t in tht]
        self.words = short_words(ctx, self.L)
        self._info: dict = {}

    def thr(self, d: int) -> int:
        return (8 * d + 1) * self.FF

    # -- head/tail data ----------------------------------------------------------------
    def info(self, a: int, d: int) -> Info:
        key = (a, d)
        hit = self._info.get(key)
        if hit is not None:
            return hit
        F = self.F
        x = self.nodes[a]
        h = F.hat[x]
        da = self.depth[a]
        rhs = self.rules[a]
        if h <= self.thr(d):
            res = Info(True, toks=F.tokens(x))
        elif d < da:
            res = self._tether(a, d, self.info(a, d + 1), (), ())
        elif isinstance(rhs, Tether):
            res = self._tether(a, d, self.info(rhs.var, d + 1), rhs.alpha, rhs.beta)
        else:
            b, c = rhs
            res = self._pair(a, d, self.info(b, d), self.info(c, d))
        if not res.short:
            bound = (4 * d + self.ht[a] + max(0, da - d)) * self.FF
            if len(res.l) > bound or len(res.r) > bound:
                raise LadderInvariantError(f"head/tail of variable {a} exceed {bound} syllables")
        self._info[key] = res
        return res

    def _split(self, a: int, d: int) -> Info:
        """Long value with explicit head and tail of 4dF syllables and an explicit middle."""
        F = self.F
        x = self.nodes[a]
        h = F.hat[x]
        q = 4 * d * self.FF
        return Info(False, l=F.tokens(x, 0, q), r=F.tokens(x, h - q, h), kind="mid",
                    data=F.extract(x, q, h - q))

    def _pair(self, a: int, d: int, ib: Info, ic: Info) -> Info:
        q = 4 * d * self.FF
        if ib.short and ic.short:
            return self._split(a, d)
        if not ib.short and not ic.short:
            return Info(False, l=ib.l, r=ic.r, kind="both", data=(ib, ic))
        if not ib.short:
            v = ic.toks
            rv = reduce_tokens(ib.r + v)
            if len(v) <= self.FF:
                return Info(False, l=ib.l, r=rv, kind="same", data=ib)
            return Info(False, l=ib.l, r=rv[len(rv) - q:], kind="left", data=(ib, rv[:len(rv) - q]))
        u = ib.toks
        lu = reduce_tokens(u + ic.l)
        if len(u) <= self.FF:
            return Info(False, l=lu, r=ic.r, kind="same", data=ic)
        return Info(False, l=lu[:q], r=ic.r, kind="right", data=(ic, lu[q:]))

    def _tether(self, a: int, d: int, ib: Info, sigma: tuple, tau: tuple) -> Info:
        if ib.short:
            return self._split(a, d)
        ctx, F = self.ctx, self.F
        q = 4 * d * self.FF
        ts, tt = tok(ctx, sigma), inv_tok(ctx, tau)
        found = None
        for eta in self.words:
            s = reduce_tokens(ts + ib.l + inv_tok(ctx, eta))
            ns = F.tokens_node(s)
            for theta in self.words:
                t = reduce_tokens(tok(ctx, theta) + ib.r + tt)
                mid = self.ladder(ib, eta, theta)
                if F.concat_is_nf([ns, mid, F.tokens_node(t)]):
                    found = (s, t, theta)
                    break
            if found:
                break
        if found is None:
            raise NoWitnessFound("no tether words for a tethered long value", a, self.L, {"depth": d})
        s, t, theta = found
        v, y = s[:q], t[:len(t) - q]
        mu, p = self._offset(inverse_tokens(v) + ts, ib.l, q, a)
        nu, p2 = self._offset(inverse_tokens(y) + tok(ctx, theta), ib.r, len(y), a)
        return Info(False, l=v, r=t[len(t) - q:], kind="tether",
                    data=(ib, mu, ib.l[p:], ib.r[:p2], nu))

    def _offset(self, head: list, side: list, guess: int, a: int) -> tuple:
        """Shortlex-least (mu, p), p near guess, with head * side[:p] = mu and |mu| <= L."""
        ctx = self.ctx
        R = 2 * self.L + 2
        best = None
        for p in range(max(0, guess - R), min(len(side), guess + R) + 1):
            e = reduce_tokens(head + side[:p])
            if ctx.tokens_length(e) <= self.L:
                mu = ctx.tokens_word(e)
                key = (word_key(ctx, mu), p)
                if best is None or key < best[0]:
                    best = (key, mu, p)
        if best is None:
            raise NoWitnessFound("no short offset word", a, self.L)
        return best[1], best[2]

    # -- ladders ---------------------------------------------------------------------
    def ladder(self, info: Info, alpha: tuple, beta: tuple) -> int:
        """Forest node for nf(alpha M beta^-1), M the middle part of a long value."""
        key = (alpha, beta)
        hit = info.ladders.get(key)
        if hit is not None:
            return hit
        ctx, F = self.ctx, self.F
        kind = info.kind
        res = None
        if kind == "mid":
            res = F.tether(info.data, alpha, beta)
        elif kind == "same":
            res = self.ladder(info.data, alpha, beta)
        elif kind == "both":
            ib, ic = info.data
            core = ib.r + ic.l
            for eta in self.words:
                xn = self.ladder(ib, alpha, eta)
                head = tok(ctx, eta) + core
                for theta in self.words:
                    z = F.tokens_node(reduce_tokens(head + inv_tok(ctx, theta)))
                    yn = self.ladder(ic, theta, beta)
                    if F.concat_is_nf([xn, z, yn]):
                        res = F.pair(F.pair(xn, z), yn)
                        break
                if res is not None:
                    break
        elif kind == "left":
            ib, y = info.data
            tail = y + inv_tok(ctx, beta)
            for eta in self.words:
                xn = self.ladder(ib, alpha, eta)
                z = F.tokens_node(reduce_tokens(tok(ctx, eta) + tail))
                if F.concat_is_nf([xn, z]):
                    res = F.pair(xn, z)
                    break
        elif kind == "right":
            ic, y = info.data
            head = tok(ctx, alpha) + y
            for theta in self.words:
                z = F.tokens_node(reduce_tokens(head + inv_tok(ctx, theta)))
                yn = self.ladder(ic, theta, beta)
                if F.concat_is_nf([z, yn]):
                    res = F.pair(z, yn)
                    break
        else:
            ib, mu, xp, yp, nu = info.data
            head = tok(ctx, alpha) + tok(ctx, mu) + xp
            tail = yp + inv_tok(ctx, nu) + inv_tok(ctx, beta)
            for chi in self.words:
                yt = F.tokens_node(reduce_tokens(head + inv_tok(ctx, chi)))
                for psi in self.words:
                    mid = self.ladder(ib, chi, psi)
                    zt = F.tokens_node(reduce_tokens(tok(ctx, psi) + tail))
                    if F.concat_is_nf([yt, mid, zt]):
                        res = F.pair(F.pair(yt, mid), zt)
                        break
                if res is not None:
                    break
        if res is None:
            raise NoWitnessFound(f"no connecting words for a ladder ({kind})", None, self.L)
        info.ladders[key] = res
        return res

    def result(self) -> int:
        s = self.prog.start
        if self.nodes[s] == 0:
            return 0
        info = self.info(s, 1)
        F = self.F
        if info.short:
            return F.tokens_node(info.toks)
        return F.pair(F.pair(F.tokens_node(info.l), self.ladder(info, (), ())), F.tokens_node(info.r))


def tslp_to_slp(u: Tcslp, ctx, engine: Optional[Engine] = None) -> Slp:
    """An SLP for val(u), where u is a tethered SLP whose tethered values are in normal form."""
    engine = engine if engine is not None else Engine(ctx)
    if u.has_cuts():
        raise ValueError("tslp_to_slp does not accept cut operators")

    def work():
        prog, nodes = binarized(u, engine)
        return engine.forest.export(LadderBuilder(ctx, engine, prog, nodes).result())

    return run_deep(work)


def binarized(u: Tcslp, engine: Engine) -> tuple:
    """u rewritten with letter, pair and tether rules only (with forest values)."""
    F = engine.forest
    B = Binary(F)
    image: dict = {}
    for a in u.order():
        rhs = u.rules[a]
        if isinstance(rhs, Tether):
            b = image[rhs.var]
            if not F.is_nf(B.nodes[b]):
                raise ValueError(f"variable {a} tethers a value that is not in normal form")
            node = F.tether(B.nodes[b], rhs.alpha, rhs.beta)
            image[a] = B.tether(b, rhs.alpha, rhs.beta, node) if node else B.eps
        else:
            image[a] = B.symbols(rhs, image)
    return B.to_program(image[u.start], u.J)
