import json

import pytest

from relhyp_cwp.cli import main
from relhyp_cwp.formats import format_program, parse_group, parse_program
from relhyp_cwp.group_model import is_nf_reduced_slp
from relhyp_cwp.oracle_harness import evaluate, naive_nf, random_slp
from relhyp_cwp.slp_core import Slp, decompress, doubling_program

GROUP = "factor H1 rank 2\nfactor H2 rank 1\n"


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)

    return write


@pytest.fixture
def group(files):
    raw = files("raw.txt", GROUP)
    assert main(["calibrate", raw, "-o", raw + ".cal"]) == 0
    return raw + ".cal"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_calibrate_writes_constants(group):
    ctx = parse_group(open(group).read())
    assert ctx.constants is not None
    assert ctx.constants.L == 2


def test_cwp(capsys, files, group):
    ident = files("id.txt", "start X0\nX0 = 'z1' 'z3' 'z3^-1' 'z1^-1'\n")
    code, out, _ = run(capsys, "cwp", group, ident)
    assert code == 0 and out.splitlines()[0] == "trivial"
    other = files("nt.txt", "start X0\nX0 = 'z1' 'z3' 'z1' 'z3^-1'\n")
    code, out, _ = run(capsys, "cwp", group, other, "--json")
    assert code == 0 and json.loads(out)["result"] == "nontrivial"


def test_cwp_errors(capsys, files, group):
    bad = files("bad.txt", "start X0\nX0 = 'z1' oops\n")
    code, _, err = run(capsys, "cwp", group, bad)
    assert code == 2 and ":2:" in err
    ok = files("ok.txt", "start X0\nX0 = 'z1'\n")
    raw = files("noconst.txt", GROUP)
    code, _, err = run(capsys, "cwp", raw, ok)
    assert code == 2


def test_nf_round_trip(capsys, files, group, tmp_path):
    ctx = parse_group(open(group).read())
    for seed in range(3):
        g = random_slp(ctx, seed, 30, "near-trivial" if seed == 2 else "balanced")
        src = files(f"g{seed}.txt", format_program(g))
        out = str(tmp_path / f"nf{seed}.txt")
        code, _, _ = run(capsys, "nf", group, src, "-o", out)
        assert code == 0
        s = parse_program(open(out).read(), ctx)
        assert evaluate(s, ctx) == naive_nf(ctx, evaluate(g, ctx))
        assert is_nf_reduced_slp(ctx, s)


def test_trace_dir(capsys, files, group, tmp_path):
    src = files("t.txt", "start X0\nX0 = 'z1' 'z3' 'z1'\n")
    code, _, _ = run(capsys, "cwp", group, src, "--trace-dir", str(tmp_path / "tr"))
    assert code == 0
    assert sorted(p.name for p in (tmp_path / "tr").iterdir()) == ["nf.txt", "tcslp.txt", "tslp.txt"]


def test_len_eq_decompress(capsys, files):
    p = files("p.txt", format_program(doubling_program(("z1", "z3"), 10)))
    q = files("q.txt", format_program(doubling_program(("z1", "z3", "z1", "z3"), 9)))
    assert run(capsys, "len", p)[1].strip() == "2048"
    assert run(capsys, "eq", p, q)[1].strip() == "equal"
    huge = files("h.txt", format_program(doubling_program(("z1", "z3"), 79)))
    code, _, _ = run(capsys, "decompress", "--max-len", "100", huge)
    assert code == 4
    small = files("s.txt", format_program(doubling_program(("z1", "z3"), 1)))
    assert run(capsys, "decompress", small)[1].split() == ["z1", "z3", "z1", "z3"]


def test_cut(capsys, files, group, tmp_path):
    p = files("p.txt", "start X0\nX0 = 'z3' 'z1' 'z1' 'z3'\n")
    out = str(tmp_path / "c.txt")
    assert run(capsys, "cut", p, "1", "3", "-o", out)[0] == 0
    assert decompress(parse_program(open(out).read())) == ("z1", "z1")
    assert run(capsys, "cut", "--group", group, "--compressed", p, "1", "2", "-o", out)[0] == 0
    assert decompress(parse_program(open(out).read())) == ("z1", "z1")
    assert run(capsys, "cut", p, "2", "9")[0] == 2


def test_bench_csv(capsys, group):
    code, out, _ = run(capsys, "bench", group, "--sizes", "16,32", "--count", "1")
    lines = out.strip().splitlines()
    assert code == 0
    assert lines[0].startswith("id,size,value_length")
    assert len(lines) == 3


def test_program_format_round_trip(gstar):
    for seed in range(20):
        g = random_slp(gstar, seed, 30)
        again = parse_program(format_program(g), gstar)
        assert isinstance(again, Slp)
        assert decompress(again, 10 ** 5) == decompress(g, 10 ** 5)


def test_tethered_format_round_trip(gstar):
    from relhyp_cwp.oracle_harness import random_tcslp

    for seed in range(20):
        t = random_tcslp(gstar, seed, 30)
        again = parse_program(format_program(t), gstar)
        assert again.rules == t.rules and again.start == t.start
