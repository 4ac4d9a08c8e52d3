"""A hash-consed forest of binary SLP nodes over the alphabet of a group context.

Every node stores metadata about its value: letter length, derived (hat)
length, height, and, when the value lies in a single factor, that factor and
the exponent vector.  Two invariants hold for every node ``pair(a, b)``:

* either both children lie in the same factor (the node is then a single
  component), or the last factor of ``a`` differs from the first factor of
  ``b``.  Joining two nodes whose boundary components share a factor
  triggers the root-restoring rearrangement (the left operand loses its last
  component, the right one its first, and the two meet in a new node), so
  every component of every value has a root;
* node values are hashed at the derived-word level (tokens), forwards and as
  inverse-reversed words, to support fast prefix comparisons.
"""

from __future__ import annotations

from typing import Iterator, Optional, Sequence

from .abelian_normalform import power_rules
from .compressed_equality import BASE, MOD, recompression_equal, token_value
from .group_model import GroupContext, inverse_token, reduce_tokens, derived_word
from .slp_core import Slp, to_cnf

SMALL = 256
EXACT_TOKENS = 4096


class Forest:
    def __init__(self, ctx: GroupContext):
        self.ctx = ctx
        # node 0 is the empty word
        self.left = [0]
        self.right = [0]
        self.name: list = [None]
        self.length = [0]
        self.hat = [0]
        self.height = [0]
        self.fac = [0]
        self.vec: list = [None]
        self.fnode = [0]
        self.lnode = [0]
        self.fh = [0]
        self.rh = [0]
        self.pw = [1]
        self.cnt: list = [None]
        self.srt = [True]
        self.fr = [0]
        self.lr = [0]
        self.zero = [False]
        self._pairs: dict = {}
        self._cross: dict = {}
        self._leaves: dict = {}
        self._tv: dict = {}
        self._extract: dict = {}
        self._tether: dict = {}
        self._token_node: dict = {}
        self._words: dict = {}
        self._slex_ok: dict = {}
        self._nf_ok: dict = {}
        self._nf_of: dict = {}

    # -- node construction ------------------------------------------------------
    def tv(self, token) -> int:
        v = self._tv.get(token)
        if v is None:
            v = self._tv[token] = token_value(token)
        return v

    def _append(self, left, right, name, length, hat, height, fac, vec, fnode, lnode, fh, rh, pw,
                cnt, srt, fr, lr, zero) -> int:
        self.left.append(left)
        self.right.append(right)
        self.name.append(name)
        self.length.append(length)
        self.hat.append(hat)
        self.height.append(height)
        self.fac.append(fac)
        self.vec.append(vec)
        self.fnode.append(fnode)
        self.lnode.append(lnode)
        self.fh.append(fh)
        self.rh.append(rh)
        self.pw.append(pw)
        self.cnt.append(cnt)
        self.srt.append(srt)
        self.fr.append(fr)
        self.lr.append(lr)
        self.zero.append(zero)
        return len(self.left) - 1

    def leaf(self, name: str) -> int:
        x = self._leaves.get(name)
        if x is not None:
            return x
        letter = self.ctx.letter(name)
        size = self.ctx.spec(letter.factor).size
        cnt = tuple(1 if i == letter.local else 0 for i in range(size))
        tok = (letter.factor, letter.vector)
        n = len(self.left)
        x = self._append(0, 0, name, 1, 1, 1, letter.factor, letter.vector, n, n,
                         self.tv(tok), self.tv(inverse_token(tok)), BASE, cnt, True,
                         letter.local, letter.local, False)
        self._leaves[name] = x
        return x

    def pair(self, a: int, b: int) -> int:
        if a == 0:
            return b
        if b == 0:
            return a
        key = (a, b)
        r = self._pairs.get(key)
        if r is not None:
            return r
        r = self._cross.get(key)
        if r is not None:
            return r
        fa, fb = self.fac[a], self.fac[b]
        if fa and fa == fb:
            return self._single_pair(a, b)
        if self.fac[self.lnode[a]] == self.fac[self.fnode[b]]:
            r = self._restructure(a, b)
            self._cross[key] = r
            return r
        return self._plain_pair(a, b)

    def _single_pair(self, a: int, b: int) -> int:
        f = self.fac[a]
        vec = tuple(x + y for x, y in zip(self.vec[a], self.vec[b]))
        tok = (f, vec)
        cnt = tuple(x + y for x, y in zip(self.cnt[a], self.cnt[b]))
        n = len(self.left)
        r = self._append(a, b, None, self.length[a] + self.length[b], 1,
                         1 + max(self.height[a], self.height[b]), f, vec, n, n,
                         self.tv(tok), self.tv(inverse_token(tok)), BASE, cnt,
                         self.srt[a] and self.srt[b] and self.lr[a] <= self.fr[b],
                         self.fr[a], self.lr[b], not any(vec))
        self._pairs[(a, b)] = r
        return r

    def _plain_pair(self, a: int, b: int) -> int:
        r = self._append(a, b, None, self.length[a] + self.length[b], self.hat[a] + self.hat[b],
                         1 + max(self.height[a], self.height[b]), 0, None,
                         self.fnode[a], self.lnode[b],
                         (self.fh[a] * self.pw[b] + self.fh[b]) % MOD,
                         (self.rh[b] * self.pw[a] + self.rh[a]) % MOD,
                         self.pw[a] * self.pw[b] % MOD, None, True, 0, 0,
                         self.zero[a] or self.zero[b])
        self._pairs[(a, b)] = r
        return r

    def _restructure(self, a: int, b: int) -> int:
        """Join two nodes whose boundary components lie in the same factor."""
        betas = []
        x = a
        while not self.fac[x]:
            betas.append(self.left[x])
            x = self.right[x]
        gammas = []
        y = b
        while not self.fac[y]:
            gammas.append(self.right[y])
            y = self.left[y]
        d = self._single_pair(x, y) if (x, y) not in self._pairs else self._pairs[(x, y)]
        lp = 0
        for beta in reversed(betas):
            lp = self.pair(beta, lp)
        rp = 0
        for gamma in reversed(gammas):
            rp = self.pair(rp, gamma)
        h = self.height
        hd = h[d]
        h1 = 1 + max(1 + max(h[lp], hd) if lp else hd, h[rp]) if rp else (1 + max(h[lp], hd) if lp else hd)
        h2 = 1 + max(h[lp], 1 + max(hd, h[rp]) if rp else hd) if lp else (1 + max(hd, h[rp]) if rp else hd)
        if h1 <= h2:
            return self.pair(self.pair(lp, d), rp)
        return self.pair(lp, self.pair(d, rp))

    def tokens_node(self, tokens: Sequence) -> int:
        """nf node for an already reduced syllable sequence (balanced concatenation)."""
        nodes = [self.token_node(t) for t in tokens]
        return self.balanced(nodes)

    def balanced(self, nodes: Sequence[int]) -> int:
        if not nodes:
            return 0
        while len(nodes) > 1:
            nxt = [self.pair(nodes[i], nodes[i + 1]) for i in range(0, len(nodes) - 1, 2)]
            if len(nodes) % 2:
                nxt.append(nodes[-1])
            nodes = nxt
        return nodes[0]

    def token_node(self, token) -> int:
        """Compact node for the shortlex word of one syllable."""
        x = self._token_node.get(token)
        if x is not None:
            return x
        spec = self.ctx.spec(token[0])
        counts = self.ctx.slex_counts(token)
        parts = []
        for letter, c in zip(spec.letters, counts):
            if c:
                parts.append(self.power_node(letter.name, c))
        x = 0
        for part in parts:
            x = self.pair(x, part)
        self._token_node[token] = x
        return x

    def power_node(self, name: str, n: int) -> int:
        rules: list = []
        top = power_rules(name, n, rules)
        made: list = []
        for rhs in rules:
            made.append(self.pair(*[self.leaf(s) if isinstance(s, str) else made[s] for s in rhs]))
        x = 0
        for s in top:
            x = self.pair(x, self.leaf(s) if isinstance(s, str) else made[s])
        return x

    def word_node(self, word: Sequence[str]) -> int:
        return self.balanced([self.leaf(x) for x in word])

    # -- import / export --------------------------------------------------------------
    def import_slp(self, p: Slp) -> int:
        q = to_cnf(p)
        if q.lengths()[q.start] == 0:
            return 0
        image: dict = {}
        for a in q.order():
            rhs = q.rules[a]
            if len(rhs) == 1:
                image[a] = self.leaf(rhs[0])
            else:
                image[a] = self.pair(image[rhs[0]], image[rhs[1]])
        return image[q.start]

    def reachable(self, x: int) -> list:
        """Nodes below x (inclusive) in an order where children precede parents."""
        if x == 0:
            return []
        done = set()
        order = []
        stack = [(x, False)]
        while stack:
            y, expanded = stack.pop()
            if y in done:
                continue
            if expanded or self.name[y] is not None:
                done.add(y)
                order.append(y)
                continue
            stack.append((y, True))
            for z in (self.right[y], self.left[y]):
                if z not in done:
                    stack.append((z, False))
        return order

    def export(self, x: int) -> Slp:
        if x == 0:
            return Slp([()], 0)
        order = self.reachable(x)
        index = {y: i for i, y in enumerate(order)}
        rules = []
        for y in order:
            if self.name[y] is not None:
                rules.append((self.name[y],))
            else:
                rules.append((index[self.left[y]], index[self.right[y]]))
        return Slp(rules, index[x])

    def emit(self, x: int, rules: list, memo: dict) -> Optional[int]:
        """Append rules for x to a rule table (pairs and letters), returning its variable."""
        if x == 0:
            return None
        if x in memo:
            return memo[x]
        for y in self.reachable(x):
            if y in memo:
                continue
            if self.name[y] is not None:
                rules.append((self.name[y],))
            else:
                rules.append((memo[self.left[y]], memo[self.right[y]]))
            memo[y] = len(rules) - 1
        return memo[x]

    def size(self, x: int) -> int:
        return sum(1 if self.name[y] is not None else 2 for y in self.reachable(x))

    def hat_slp(self, x: int, inverted: bool = False) -> Slp:
        """Program over token names for the derived word (or its inverse-reversed form)."""
        if x == 0:
            return Slp([()], 0)
        memo: dict = {}
        rules: list = []
        stack = [(x, False)]
        while stack:
            y, done = stack.pop()
            if y in memo:
                continue
            if self.fac[y]:
                tok = (self.fac[y], self.vec[y])
                if inverted:
                    tok = inverse_token(tok)
                rules.append((repr(tok),))
                memo[y] = len(rules) - 1
                continue
            a, b = self.left[y], self.right[y]
            if done:
                rules.append((memo[b], memo[a]) if inverted else (memo[a], memo[b]))
                memo[y] = len(rules) - 1
                continue
            stack.append((y, True))
            for z in (b, a):
                if z not in memo:
                    stack.append((z, False))
        return Slp(rules, memo[x])

    # -- access ---------------------------------------------------------------------
    def token(self, x: int) -> tuple:
        return (self.fac[x], self.vec[x])

    def first_token(self, x: int):
        if x == 0:
            return None
        return self.token(self.fnode[x])

    def last_token(self, x: int):
        if x == 0:
            return None
        return self.token(self.lnode[x])

    def token_at(self, x: int, k: int) -> tuple:
        if not 0 <= k < self.hat[x]:
            raise IndexError(f"derived index {k} out of range")
        while not self.fac[x]:
            a = self.left[x]
            if k < self.hat[a]:
                x = a
            else:
                k -= self.hat[a]
                x = self.right[x]
        return (self.fac[x], self.vec[x])

    def offset(self, x: int, k: int) -> int:
        """Letter offset at which derived index k starts."""
        if k == self.hat[x]:
            return self.length[x]
        off = 0
        while not self.fac[x]:
            a = self.left[x]
            if k < self.hat[a]:
                x = a
            else:
                k -= self.hat[a]
                off += self.length[a]
                x = self.right[x]
        return off

    def derived_index(self, x: int, i: int) -> Optional[int]:
        """Derived index of the component boundary at letter offset i (None inside a component)."""
        if not 0 <= i <= self.length[x]:
            raise IndexError(f"offset {i} out of range")
        if i == self.length[x]:
            return self.hat[x]
        k = 0
        while not self.fac[x]:
            a = self.left[x]
            if i < self.length[a]:
                x = a
            else:
                i -= self.length[a]
                k += self.hat[a]
                x = self.right[x]
        return k if i == 0 else None

    def component_nodes(self, x: int, k: int = 0, l: Optional[int] = None) -> Iterator[int]:
        """Component root nodes of x with derived indices in [k, l)."""
        if l is None:
            l = self.hat[x]
        if k >= l or x == 0:
            return
        stack = [(x, 0)]
        while stack:
            y, off = stack.pop()
            h = self.hat[y]
            if off >= l or off + h <= k:
                continue
            if self.fac[y]:
                yield y
                continue
            a = self.left[y]
            stack.append((self.right[y], off + self.hat[a]))
            stack.append((a, off))

    def tokens(self, x: int, k: int = 0, l: Optional[int] = None) -> list:
        return [(self.fac[y], self.vec[y]) for y in self.component_nodes(x, k, l)]

    def word(self, x: int) -> tuple:
        """Explicit letter word of a node (callers bound the length)."""
        if x == 0:
            return ()
        if self.length[x] <= SMALL:
            return self._small_word(x)
        parts = []
        stack = [x]
        while stack:
            y = stack.pop()
            if self.length[y] <= SMALL:
                parts.append(self._small_word(y))
            else:
                stack.append(self.right[y])
                stack.append(self.left[y])
        return tuple(c for part in parts for c in part)

    def _small_word(self, x: int) -> tuple:
        w = self._words.get(x)
        if w is None:
            if self.name[x] is not None:
                w = (self.name[x],)
            else:
                w = self._small_word(self.left[x]) + self._small_word(self.right[x])
            self._words[x] = w
        return w

    # -- structural operations ------------------------------------------------------
    def extract(self, x: int, k: int, l: int) -> int:
        """Node whose value is x[[k:l)) (derived indices, union of complete components)."""
        if k >= l:
            return 0
        if k == 0 and l == self.hat[x]:
            return x
        if not 0 <= k <= l <= self.hat[x]:
            raise IndexError(f"derived range [{k}:{l}) out of range for {self.hat[x]}")
        key = (x, k, l)
        r = self._extract.get(key)
        if r is not None:
            return r
        y, kk, ll = x, k, l
        while True:
            if kk == 0 and ll == self.hat[y]:
                r = y
                break
            a, b = self.left[y], self.right[y]
            ha = self.hat[a]
            if ll <= ha:
                y = a
            elif kk >= ha:
                y, kk, ll = b, kk - ha, ll - ha
            else:
                r = self.pair(self._suffix(a, kk), self._prefix(b, ll - ha))
                break
        self._extract[key] = r
        return r

    def _suffix(self, x: int, k: int) -> int:
        pieces = []
        while k:
            a = self.left[x]
            ha = self.hat[a]
            if k >= ha:
                x, k = self.right[x], k - ha
            else:
                pieces.append(self.right[x])
                x = a
        r = x
        for p in reversed(pieces):
            r = self.pair(r, p)
        return r

    def _prefix(self, x: int, l: int) -> int:
        pieces = []
        while l != self.hat[x]:
            a = self.left[x]
            ha = self.hat[a]
            if l <= ha:
                x = a
            else:
                pieces.append(a)
                x, l = self.right[x], l - ha
        r = x
        for p in reversed(pieces):
            r = self.pair(p, r)
        return r

    def extract_raw(self, x: int, i: int, j: int) -> int:
        """Node whose value is x[i:j) at the letter level."""
        if i >= j:
            return 0
        if i == 0 and j == self.length[x]:
            return x
        if not 0 <= i <= j <= self.length[x]:
            raise IndexError(f"range [{i}:{j}) out of range for {self.length[x]}")
        a, b = self.left[x], self.right[x]
        la = self.length[a]
        if j <= la:
            return self.extract_raw(a, i, j)
        if i >= la:
            return self.extract_raw(b, i - la, j - la)
        return self.pair(self.extract_raw(a, i, la), self.extract_raw(b, 0, j - la))

    def tether(self, x: int, alpha: Sequence[str], beta: Sequence[str]) -> int:
        """Node for nf(alpha * val(x) * beta^-1), x nf-reduced.

        Only boundary windows of x are touched; the windows grow until the
        reduction provably leaves the middle part of x unchanged.
        """
        alpha, beta = tuple(alpha), tuple(beta)
        if not alpha and not beta:
            return x
        key = (x, alpha, beta)
        r = self._tether.get(key)
        if r is not None:
            return r
        at = derived_word(self.ctx, alpha)
        bt = derived_word(self.ctx, self.ctx.inverse_word(beta))
        h = self.hat[x]
        wa, wb = len(at) + 2, len(bt) + 2
        while True:
            if h <= wa + wb + 2:
                r = self.tokens_node(reduce_tokens(at + self.tokens(x) + bt))
                break
            head = self.tokens(x, 0, wa)
            tail = self.tokens(x, h - wb, h)
            r1 = reduce_tokens(at + head[:-1])
            r2 = reduce_tokens(tail[1:] + bt)
            ok1 = not r1 or r1[-1][0] != head[-1][0]
            ok2 = not r2 or r2[0][0] != tail[0][0]
            if ok1 and ok2:
                mid = self.extract(x, wa - 1, h - wb + 1)
                r = self.pair(self.pair(self.tokens_node(r1), mid), self.tokens_node(r2))
                break
            wa, wb = 2 * wa, 2 * wb
        self._tether[key] = r
        return r

    # -- hashing and comparison -------------------------------------------------------
    def prefix_hash(self, x: int, m: int) -> int:
        h = 0
        while m:
            if m == self.hat[x]:
                return (h * self.pw[x] + self.fh[x]) % MOD
            a = self.left[x]
            if m <= self.hat[a]:
                x = a
            else:
                h = (h * self.pw[a] + self.fh[a]) % MOD
                m -= self.hat[a]
                x = self.right[x]
        return h

    def inv_prefix_hash(self, x: int, m: int) -> int:
        """Hash of the first m tokens of the inverse-reversed derived word of x."""
        h = 0
        while m:
            if m == self.hat[x]:
                return (h * self.pw[x] + self.rh[x]) % MOD
            b = self.right[x]
            if m <= self.hat[b]:
                x = b
            else:
                h = (h * self.pw[b] + self.rh[b]) % MOD
                m -= self.hat[b]
                x = self.left[x]
        return h

    def view_token(self, x: int, inverted: bool, i: int) -> tuple:
        if inverted:
            return inverse_token(self.token_at(x, self.hat[x] - 1 - i))
        return self.token_at(x, i)

    def view_tokens(self, x: int, inverted: bool, m: int) -> list:
        if inverted:
            h = self.hat[x]
            return [inverse_token(t) for t in reversed(self.tokens(x, h - m, h))]
        return self.tokens(x, 0, m)

    def view_hash(self, x: int, inverted: bool, m: int) -> int:
        return self.inv_prefix_hash(x, m) if inverted else self.prefix_hash(x, m)

    def _view_prefix_equal_exact(self, x, xi, y, yi, m) -> bool:
        if m <= EXACT_TOKENS:
            return self.view_tokens(x, xi, m) == self.view_tokens(y, yi, m)
        px = self.extract(x, self.hat[x] - m, self.hat[x]) if xi else self.extract(x, 0, m)
        py = self.extract(y, self.hat[y] - m, self.hat[y]) if yi else self.extract(y, 0, m)
        if px == py and xi == yi:
            return True
        return recompression_equal(self.hat_slp(px, xi), self.hat_slp(py, yi))

    def lcp(self, x: int, xi: bool, y: int, yi: bool) -> int:
        """Longest common prefix of two derived-word views (optionally inverse-reversed)."""
        m = min(self.hat[x], self.hat[y])
        probe = min(m, 16)
        a = self.view_tokens(x, xi, probe)
        b = self.view_tokens(y, yi, probe)
        for k in range(probe):
            if a[k] != b[k]:
                return k
        if probe == m:
            return m
        lo, step = probe, probe
        hi = None
        while True:
            nxt = min(m, lo + step)
            if self.view_hash(x, xi, nxt) == self.view_hash(y, yi, nxt):
                lo = nxt
                if lo == m:
                    break
                step *= 2
            else:
                hi = nxt
                break
        if hi is not None:
            while hi - lo > 1:
                mid = (lo + hi) // 2
                if self.view_hash(x, xi, mid) == self.view_hash(y, yi, mid):
                    lo = mid
                else:
                    hi = mid
        if (lo == m or self.view_token(x, xi, lo) != self.view_token(y, yi, lo)) and \
                self._view_prefix_equal_exact(x, xi, y, yi, lo):
            return lo
        lo, hi = 0, m + 1
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if self._view_prefix_equal_exact(x, xi, y, yi, mid):
                lo = mid
            else:
                hi = mid
        return lo

    def equal_nf(self, x: int, y: int) -> bool:
        """Exact equality of two nf-reduced values (compared on derived words)."""
        if x == y:
            return True
        if self.hat[x] != self.hat[y] or self.length[x] != self.length[y]:
            return False
        if self.fh[x] != self.fh[y]:
            return False
        return self._view_prefix_equal_exact(x, False, y, False, self.hat[x])

    # -- normal-form predicates ---------------------------------------------------------
    def component_slex(self, y: int) -> bool:
        r = self._slex_ok.get(y)
        if r is None:
            r = bool(self.srt[y]) and any(self.vec[y]) and \
                self.cnt[y] == self.ctx.slex_counts((self.fac[y], self.vec[y]))
            self._slex_ok[y] = r
        return r

    def is_nf(self, x: int) -> bool:
        if x == 0:
            return True
        if self.zero[x]:
            return False
        memo = self._nf_ok
        if x in memo:
            return memo[x]
        for y in self.reachable(x):
            if y in memo:
                continue
            if self.fac[y]:
                memo[y] = self.component_slex(y)
            else:
                memo[y] = memo[self.left[y]] and memo[self.right[y]]
        return memo[x]

    def concat_is_nf(self, parts: Sequence[int]) -> bool:
        """Whether the concatenation of nf-reduced values is nf-reduced.

        Only components that merge across a junction need checking; a merged
        component must be nonzero, written in ascending letter order, and have
        the multiplicities of the shortlex word of its vector.
        """
        run = None  # [factor, vector, counts, last rank, merged, sorted]
        for x in parts:
            if x == 0:
                continue
            f = self.fnode[x]
            if run is not None and run[0] == self.fac[f]:
                run[1] = tuple(a + b for a, b in zip(run[1], self.vec[f]))
                run[2] = tuple(a + b for a, b in zip(run[2], self.cnt[f]))
                run[5] = run[5] and self.srt[f] and run[3] <= self.fr[f]
                run[3] = self.lr[f]
                run[4] = True
                if self.hat[x] == 1:
                    continue
                if not self._run_ok(run):
                    return False
            elif run is not None and run[4] and not self._run_ok(run):
                return False
            l = self.lnode[x]
            run = [self.fac[l], self.vec[l], self.cnt[l], self.lr[l], False, self.srt[l]]
        return run is None or not run[4] or self._run_ok(run)

    def _run_ok(self, run) -> bool:
        return run[5] and any(run[1]) and run[2] == self.ctx.slex_counts((run[0], run[1]))

    def nf_node(self, x: int) -> int:
        """Node for nf(val(x)), computed bottom-up with compressed free-product cancellation."""
        memo = self._nf_of
        if x == 0:
            return 0
        if x in memo:
            return memo[x]
        for y in self.reachable(x):
            if y in memo:
                continue
            if self.fac[y]:
                memo[y] = self.token_node((self.fac[y], self.vec[y])) if any(self.vec[y]) else 0
            else:
                memo[y] = self.nf_concat(memo[self.left[y]], memo[self.right[y]])
        return memo[x]

    def nf_concat(self, x: int, y: int) -> int:
        """nf(val(x) val(y)) for nf-reduced x and y."""
        if x == 0 or y == 0:
            return x or y
        k = self.lcp(x, True, y, False)
        n1, n2 = self.hat[x], self.hat[y]
        a = self.extract(x, 0, n1 - k)
        b = self.extract(y, k, n2)
        if a and b and self.fac[self.lnode[a]] == self.fac[self.fnode[b]]:
            s, t = self.token(self.lnode[a]), self.token(self.fnode[b])
            merged = (s[0], tuple(p + q for p, q in zip(s[1], t[1])))
            ha, hb = self.hat[a], self.hat[b]
            return self.pair(self.pair(self.extract(a, 0, ha - 1), self.token_node(merged)),
                             self.extract(b, 1, hb))
        return self.pair(a, b)

    def view_range(self, x: int, inverted: bool, i: int, j: int) -> list:
        """Tokens [i, j) of the forward or inverse-reversed derived word of x."""
        if not inverted:
            return self.tokens(x, i, j)
        h = self.hat[x]
        return [inverse_token(t) for t in reversed(self.tokens(x, h - j, h - i))]
