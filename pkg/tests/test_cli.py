import json

import pytest

from copsrobbers.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_solve_k4(capsys):
    code, out, _ = run(capsys, "solve", "--graph6", "C~")
    assert code == 0
    d = json.loads(out)
    assert d["cop_number"] == 1 and d["copwin"] and "elapsed_ms" not in d


def test_solve_timing_flag(capsys):
    _, out, _ = run(capsys, "solve", "--gen", "petersen", "-k", "2", "--timing")
    d = json.loads(out)
    assert not d["copwin"] and "elapsed_ms" in d


def test_play_digraph(capsys, tmp_path):
    path = tmp_path / "t.json"
    code, _, err = run(capsys, "play", "--strategy", "digraph", "--gen", "random-diam2:n=8", "--seed", "7",
                       "--robber", "optimal", "-o", str(path))
    assert code == 0
    summary = json.loads(err)
    assert summary["outcome"] == "captured" and summary["cops"] <= 4
    t = json.loads(path.read_text())
    assert t["outcome"]["kind"] == "captured"


@pytest.mark.parametrize("strategy", ["cover", "girth-guard", "trivial"])
def test_play_undirected(capsys, strategy):
    code, out, err = run(capsys, "play", "--strategy", strategy, "--gen", "petersen", "--robber", "greedy-distance")
    assert code == 0 and json.loads(out)["k"] >= 1


def test_bounds(capsys):
    code, out, _ = run(capsys, "bounds", "--thm", "7", "--d", "4", "--n", "1000000")
    d = json.loads(out)
    assert code == 0 and d["exponent"] == "3/5" and d["exponent_float"] == 0.6
    code, out, _ = run(capsys, "bounds", "--table", "--n", "100", "--d", "3")
    assert code == 0 and "thm6" in out


def test_gen_formats(capsys, tmp_path):
    code, out, _ = run(capsys, "gen", "petersen")
    assert code == 0 and out.strip() == "IheA@GUAo"
    p = tmp_path / "g.dimacs"
    assert main(["gen", "mcgee", "--format", "dimacs", "-o", str(p)]) == 0
    code, out, _ = run(capsys, "solve", "--input", str(p), "-k", "1")
    assert code == 0 and json.loads(out)["n"] == 24


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "bounds", "matching")
    assert code == 0 and "PASS  bounds:" in out and "FAIL" not in out


def test_bench(capsys):
    code, out, _ = run(capsys, "bench", "--gen", "random-diam:n=12,d=3", "--seeds", "2")
    lines = out.strip().splitlines()
    assert code == 0 and lines[0] == "n,d,g,cops_used,captured,rounds" and len(lines) == 3


def test_exit_codes(capsys):
    assert run(capsys, "nosuch")[0] == 2
    assert run(capsys, "solve")[0] == 2
    assert run(capsys, "solve", "--graph6", "!!")[0] == 2
    assert run(capsys, "solve", "--gen", "petersen", "-k", "3", "--budget", "10")[0] == 3
    assert run(capsys, "verify", "nosuch")[0] == 2
    assert run(capsys, "play", "--strategy", "digraph", "--gen", "dicycle:n=5")[0] == 2


def test_bench_workers_keep_order(capsys):
    args = ["bench", "--gen", "random-diam:n=10,d=3", "--gen", "petersen", "--seeds", "3"]
    _, serial, _ = run(capsys, *args)
    _, parallel, _ = run(capsys, *args, "--workers", "2")
    assert serial == parallel
