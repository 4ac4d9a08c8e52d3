"""Text formats for groups and programs.

Group file::

    factor H1 rank 2
    factor H2 rank 1
    extragen H1 w = 1 1
    constants delta=1 K=2 L=2 e1=1 e2=2 eprime=2 ff=1,2

Program file (first non-comment line names the start variable)::

    start S
    S = A 'z3' B
    A = 'z1' 'z1^-1'
    B = cut S 1 3          # derived-word indices
    C = rawcut S 1 3       # letter offsets
    D = tether A | 'z1' | 'z3^-1'

Letters are quoted with single quotes (inside tether words the quotes are
optional); ``#`` starts a comment.
"""

from __future__ import annotations

import re
from pathlib import Path
from typing import Optional, Union

from .program_extensions import Cut, Tcslp, Tether
from .group_model import ConstantsBundle, GroupContext
from .slp_core import ProgramError, Slp
from .abelian_normalform import build_factor_spec

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_.]*$")


class ParseError(ProgramError):
    def __init__(self, message: str, line: Optional[int] = None, source: str = "<input>"):
        where = f"{source}:{line}: " if line is not None else f"{source}: "
        super().__init__(where + message)
        self.line = line


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line


def _read(source) -> tuple:
    """A Path is read from disk; a str is the text itself."""
    if isinstance(source, Path):
        try:
            return source.read_text(encoding="utf-8"), str(source)
        except (OSError, UnicodeDecodeError) as exc:
            raise ParseError(f"cannot read file: {exc}", None, str(source)) from None
    return source, "<input>"


# -- constants ------------------------------------------------------------------------
_CONST_KEYS = {"delta": "delta", "K": "K", "L": "L", "e1": "e1", "e2": "e2", "eprime": "e_prime",
               "lambda": "lam", "c": "c"}


def parse_constants(fields, line: Optional[int] = None, source: str = "<input>") -> ConstantsBundle:
    values: dict = {}
    for item in fields:
        if "=" not in item:
            raise ParseError(f"expected key=value, got {item!r}", line, source)
        key, val = item.split("=", 1)
        try:
            if key == "ff":
                slope, intercept = val.split(",")
                values["ff"] = (int(slope), int(intercept))
            elif key in _CONST_KEYS:
                values[_CONST_KEYS[key]] = int(val)
            else:
                raise ParseError(f"unknown constant {key!r}", line, source)
        except ValueError as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"bad value for {key}: {val!r}", line, source) from None
    missing = [k for k in ("delta", "K", "L", "e_prime", "e1", "e2") if k not in values]
    if missing:
        raise ParseError(f"constants line lacks {', '.join(missing)}", line, source)
    try:
        return ConstantsBundle(**values)
    except ValueError as exc:
        raise ParseError(str(exc), line, source) from None


def format_constants(c: ConstantsBundle) -> str:
    return (f"constants delta={c.delta} K={c.K} L={c.L} e1={c.e1} e2={c.e2} eprime={c.e_prime} "
            f"ff={c.ff[0]},{c.ff[1]}")


# -- groups ---------------------------------------------------------------------------
def parse_group(source) -> GroupContext:
    text, name = _read(source)
    factors: list = []  # [name, rank, extras]
    index: dict = {}
    constants = None
    for no, line in _lines(text):
        parts = line.split()
        head = parts[0]
        if head == "factor":
            if len(parts) != 4 or parts[2] != "rank":
                raise ParseError("expected 'factor <name> rank <r>'", no, name)
            if parts[1] in index:
                raise ParseError(f"factor {parts[1]!r} declared twice", no, name)
            try:
                rank = int(parts[3])
            except ValueError:
                raise ParseError(f"bad rank {parts[3]!r}", no, name) from None
            if rank < 1:
                raise ParseError("rank must be positive", no, name)
            index[parts[1]] = len(factors)
            factors.append([parts[1], rank, []])
        elif head == "extragen":
            if len(parts) < 5 or parts[3] != "=":
                raise ParseError("expected 'extragen <factor> <name> = <ints>'", no, name)
            if parts[1] not in index:
                raise ParseError(f"unknown factor {parts[1]!r}", no, name)
            try:
                vec = tuple(int(x) for x in parts[4:])
            except ValueError:
                raise ParseError("extra generator coordinates must be integers", no, name) from None
            factors[index[parts[1]]][2].append((parts[2], vec))
        elif head == "constants":
            constants = parse_constants(parts[1:], no, name)
        else:
            raise ParseError(f"unknown directive {head!r}", no, name)
    if not factors:
        raise ParseError("no factors declared", None, name)
    specs = []
    offset = 0
    try:
        for fname, rank, extras in factors:
            specs.append(build_factor_spec(rank, extras, offset))
            offset += rank
        return GroupContext(specs, constants, [f[0] for f in factors])
    except ValueError as exc:
        raise ParseError(str(exc), None, name) from None


def format_group(ctx: GroupContext) -> str:
    lines = []
    for fname, spec in zip(ctx.names, ctx.factors):
        lines.append(f"factor {fname} rank {spec.rank}")
    for fname, spec in zip(ctx.names, ctx.factors):
        for xname, vec in spec.extra:
            lines.append(f"extragen {fname} {xname} = {' '.join(str(c) for c in vec)}")
    if ctx.constants is not None:
        lines.append(format_constants(ctx.constants))
    return "\n".join(lines) + "\n"


def parse_constants_file(source) -> ConstantsBundle:
    """A constants line on its own, or the constants block of a group file."""
    text, name = _read(source)
    for no, line in _lines(text):
        parts = line.split()
        if parts[0] == "constants":
            return parse_constants(parts[1:], no, name)
    raise ParseError("no constants line found", None, name)


# -- programs -------------------------------------------------------------------------
def _symbols(line: str, no: int, name: str) -> list:
    """Split a rhs into ('L', letter) and ('V', variable) items."""
    out = []
    i, n = 0, len(line)
    while i < n:
        ch = line[i]
        if ch.isspace():
            i += 1
        elif ch == "'":
            j = line.find("'", i + 1)
            if j < 0:
                raise ParseError("unterminated letter quote", no, name)
            if j == i + 1:
                raise ParseError("empty letter", no, name)
            out.append(("L", line[i + 1:j]))
            i = j + 1
        else:
            j = i
            while j < n and not line[j].isspace() and line[j] != "'":
                j += 1
            out.append(("V", line[i:j]))
            i = j
    return out


def parse_program(source, ctx: Optional[GroupContext] = None) -> Union[Slp, Tcslp]:
    """Parse a program file; returns an Slp when no cut or tether appears."""
    text, name = _read(source)
    start = None
    defs: list = []
    for no, line in _lines(text):
        if start is None:
            parts = line.split()
            if len(parts) != 2 or parts[0] != "start":
                raise ParseError("first line must be 'start <variable>'", no, name)
            start = parts[1]
            continue
        if "=" not in line:
            raise ParseError("expected '<variable> = <rhs>'", no, name)
        lhs, rhs = line.split("=", 1)
        lhs = lhs.strip()
        if not _IDENT.match(lhs):
            raise ParseError(f"bad variable name {lhs!r}", no, name)
        defs.append((no, lhs, rhs.strip()))
    if start is None:
        raise ParseError("empty program file", None, name)
    index: dict = {}
    for no, lhs, _ in defs:
        if lhs in index:
            raise ParseError(f"variable {lhs!r} defined twice", no, name)
        index[lhs] = len(index)
    if start not in index:
        raise ParseError(f"start variable {start!r} is not defined", None, name)

    def var(v: str, no: int) -> int:
        if v not in index:
            raise ParseError(f"undefined variable {v!r}", no, name)
        return index[v]

    def letter(x: str, no: int) -> str:
        if ctx is not None and x not in ctx.letters:
            raise ParseError(f"unknown letter {x!r}", no, name)
        return x

    rules: list = []
    special = False
    for no, lhs, rhs in defs:
        words = rhs.split()
        if words and words[0] in ("cut", "rawcut") and (len(words) < 2 or not words[1].startswith("'")):
            if len(words) != 4:
                raise ParseError(f"expected '{words[0]} <variable> <start> <end>'", no, name)
            try:
                i, j = int(words[2]), int(words[3])
            except ValueError:
                raise ParseError("cut bounds must be integers", no, name) from None
            if not 0 <= i <= j:
                raise ParseError("cut bounds must satisfy 0 <= start <= end", no, name)
            rules.append(Cut(var(words[1], no), i, j, words[0] == "cut"))
            special = True
        elif words and words[0] == "tether" and "|" in rhs:
            pieces = rhs[len("tether"):].split("|")
            if len(pieces) != 3:
                raise ParseError("expected 'tether <variable> | <alpha> | <beta>'", no, name)
            target = pieces[0].split()
            if len(target) != 1:
                raise ParseError("tether needs exactly one variable", no, name)
            alpha = tuple(letter(w.strip("'"), no) for w in pieces[1].split())
            beta = tuple(letter(w.strip("'"), no) for w in pieces[2].split())
            rules.append(Tether(var(target[0], no), alpha, beta))
            special = True
        else:
            syms = []
            for kind, item in _symbols(rhs, no, name):
                syms.append(letter(item, no) if kind == "L" else var(item, no))
            rules.append(tuple(syms))
    try:
        if special:
            return Tcslp(rules, index[start], ctx.constants.L if ctx is not None and ctx.constants else None)
        return Slp(rules, index[start])
    except ProgramError as exc:
        raise ParseError(str(exc), None, name) from None


def format_program(p: Union[Slp, Tcslp], names: Optional[list] = None) -> str:
    """Program text; variables are written X0, X1, ... unless names are given."""
    n = len(p.rules)
    names = names or [f"X{i}" for i in range(n)]
    lines = [f"start {names[p.start]}"]
    for a, rhs in enumerate(p.rules):
        if isinstance(rhs, Cut):
            kw = "cut" if rhs.compressed else "rawcut"
            body = f"{kw} {names[rhs.var]} {rhs.start} {rhs.end}"
        elif isinstance(rhs, Tether):
            alpha = " ".join(f"'{x}'" for x in rhs.alpha)
            beta = " ".join(f"'{x}'" for x in rhs.beta)
            body = f"tether {names[rhs.var]} | {alpha} | {beta}"
        else:
            body = " ".join(names[s] if isinstance(s, int) else f"'{s}'" for s in rhs)
        lines.append(f"{names[a]} = {body}".rstrip())
    return "\n".join(lines) + "\n"


def write_program(p, path) -> None:
    Path(path).write_text(format_program(p), encoding="utf-8")
