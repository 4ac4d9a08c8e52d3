"""From a TCSLP for a normal form to a plain SLP."""

from __future__ import annotations

from typing import Optional

from ..program_extensions import Tcslp
from ..slp_core import Slp
from .cut_elim import CutEliminator
from .evaluate import Engine, run_deep
from .ladder import LadderBuilder, binarized


def convert(t: Tcslp, ctx, engine: Optional[Engine] = None) -> Slp:
    """Eliminate cuts, then tethers.  Values under tethers must be in normal form."""
    engine = engine if engine is not None else Engine(ctx)

    def work():
        u = CutEliminator(ctx, engine).run(t)
        prog, nodes = binarized(u, engine)
        return engine.forest.export(LadderBuilder(ctx, engine, prog, nodes).result())

    return run_deep(work)


def append_bounded_suffix(p: Slp, v, ctx, engine: Optional[Engine] = None) -> Slp:
    """An SLP for nf(val(p) v), where val(p) is in normal form and |v| <= L."""
    from ..program_extensions import Tether

    engine = engine if engine is not None else Engine(ctx)
    L = engine.constants.L
    v = tuple(v)
    if len(v) > L:
        raise ValueError(f"suffix of length {len(v)} exceeds L = {L}")
    rules = list(p.rules) + [Tether(p.start, (), ctx.inverse_word(v))]
    return convert(Tcslp(rules, len(rules) - 1, L), ctx, engine)
