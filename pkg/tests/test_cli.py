import json
import subprocess
import sys

import pytest

from gdperm.cli import main
from gdperm.formats import format_family, format_graph, read_family_text
from gdperm.core import Family, NaturalGraph, matching, path, star


def run(argv, capsys):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def words_in(text):
    return [ln for ln in text.splitlines() if ln and not ln.startswith("#")]


def graph_file(tmp_path, g, name="g.txt"):
    p = tmp_path / name
    p.write_text(format_graph(g))
    return p


def test_construct_p4ten(capsys):
    code, out, _ = run(["construct", "p4ten"], capsys)
    assert code == 0 and len(words_in(out)) == 10


def test_construct_matching3(capsys, tmp_path):
    out = tmp_path / "m3.txt"
    code, _, _ = run(["construct", "matching", 3, "--out", out], capsys)
    assert code == 0 and len(words_in(out.read_text())) == 27
    _, header = read_family_text(out.read_text())
    assert header["schema_version"] == 1


@pytest.mark.parametrize("argv", [["construct", "star", 0], ["construct", "matching"], ["construct", "star", "x"],
                                  ["construct", "catalan", 3, "--anchor", 1], ["construct", "product"]])
def test_construct_usage_errors(argv, capsys):
    code, _, err = run(argv, capsys)
    assert code == 2 and err.startswith("error:")


CASES = [
    ["star", 2], ["matching", 2], ["complete", 3], ["p4ten"], ["catalan", 4], ["rho-recursion", 9],
    ["rho-recursion", 6],
]


@pytest.mark.parametrize("params", CASES, ids=lambda p: "-".join(map(str, p)))
def test_construct_then_verify(params, capsys, tmp_path):
    f = tmp_path / "f.txt"
    assert run(["construct", *params, "--out", f], capsys)[0] == 0
    code, out, _ = run(["verify", "--family", f], capsys)
    assert code == 0 and out.startswith("valid")


def test_derived_constructions_verify(capsys, tmp_path):
    a, b, c = tmp_path / "a.txt", tmp_path / "b.txt", tmp_path / "c.txt"
    run(["construct", "star", 1, "--out", a], capsys)
    # cyclic shifts of 123, pairwise different for the single edge {1,2}
    b.write_text(format_family(Family(((1, 2, 3), (2, 3, 1), (3, 1, 2)), path(3))))
    assert run(["construct", "product", "--family", a, "--family", a, "--out", c], capsys)[0] == 2
    assert run(["construct", "parity-double", 4, "--family", b, "--out", c], capsys)[0] == 0
    assert run(["verify", "--family", c], capsys)[0] == 0
    assert run(["construct", "edge-split", 1, 2, 3, 4, "--family", a, "--out", c], capsys)[0] == 0
    assert run(["verify", "--family", c], capsys)[0] == 0


def test_verify_rho9_colliding(capsys, tmp_path):
    f = tmp_path / "r9.txt"
    run(["construct", "rho-recursion", 9, "--out", f], capsys)
    code, out, _ = run(["verify", "--family", f, "--mode", "colliding"], capsys)
    assert code == 0 and "100 words" in out


def test_verify_duplicate_word(capsys, tmp_path):
    f = tmp_path / "f.txt"
    f.write_text("1 2 *\n1 2 *\n")
    g = graph_file(tmp_path, NaturalGraph([1, 2], [(1, 2)]))
    code, out, _ = run(["verify", "--family", f, "--graph", g], capsys)
    assert code == 1 and "0 1 no-witness" in out


def test_verify_p4ten_against_p4(capsys, tmp_path):
    f = tmp_path / "f.txt"
    run(["construct", "p4ten", "--out", f], capsys)
    g = graph_file(tmp_path, NaturalGraph(range(1, 6), path(4).edges))
    assert run(["verify", "--family", f, "--graph", g], capsys)[0] == 0


def test_verify_parse_errors(capsys, tmp_path):
    f = tmp_path / "f.txt"
    f.write_text("1 2 q\n")
    assert run(["verify", "--family", f], capsys)[0] == 2
    assert run(["verify", "--family", tmp_path / "missing.txt"], capsys)[0] == 2
    assert run(["verify"], capsys)[0] == 2


def test_verify_fixed_order(capsys, tmp_path):
    f = tmp_path / "f.txt"
    run(["construct", "catalan", 3, "--out", f], capsys)
    assert run(["verify", "--family", f, "--fixed-order", "1,2,3"], capsys)[0] == 0
    assert run(["verify", "--family", f, "--fixed-order", "3,2,1"], capsys)[0] == 1


def test_solve_json(capsys, tmp_path):
    g = graph_file(tmp_path, NaturalGraph(range(1, 6), path(4).edges))
    out = tmp_path / "s.json"
    code, _, err = run(["solve", "--graph", g, "--n", 5, "--out", out], capsys)
    d = json.loads(out.read_text())
    assert code == 0 and d["value"] == 10 and len(d["witness"]) == 10
    assert d["schema_version"] == 1 and d["certified_optimal"] and "elapsed_ms" in d
    assert "value=10" in err


def test_solve_sweep_and_errors(capsys, tmp_path):
    g = graph_file(tmp_path, star(1))
    code, out, _ = run(["solve", "--graph", g, "--n-sweep", 4, "--no-timing"], capsys)
    d = json.loads(out)
    assert code == 0 and [r["value"] for r in d["sweep"]] == [2, 3, 3]
    assert run(["solve", "--graph", g], capsys)[0] == 2
    assert run(["solve", "--graph", g, "--n", 1], capsys)[0] == 2


def test_solve_byte_deterministic(capsys, tmp_path):
    g = graph_file(tmp_path, matching(2))
    outs = []
    for threads in (1, 1, 2):
        o = tmp_path / f"s{len(outs)}.json"
        run(["solve", "--graph", g, "--n", 6, "--no-timing", "--threads", threads, "--out", o], capsys)
        d = json.loads(o.read_text())
        d.pop("threads", None)
        d.pop("nodes", None)
        outs.append(o.read_bytes() if threads == 1 else json.dumps(d, sort_keys=True).encode())
    assert outs[0] == outs[1]
    first = json.loads(outs[0])
    first.pop("threads", None)
    first.pop("nodes", None)
    assert json.dumps(first, sort_keys=True).encode() == outs[2]


def test_construct_byte_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    run(["construct", "rho-recursion", 9, "--out", a], capsys)
    run(["construct", "rho-recursion", 9, "--out", b], capsys)
    assert a.read_bytes() == b.read_bytes()


def test_bounds(capsys, tmp_path):
    g = graph_file(tmp_path, matching(2))
    code, out, _ = run(["bounds", "--graph", g, "--rho-n", 5, "--alpha-t", 4], capsys)
    d = json.loads(out)
    assert code == 0
    assert d["lemma1_upper"] == 16 and d["decomposition_lower"] == 9 and d["binomial_upper"] == 10
    assert d["line_graph_alpha"]["alpha"] == 4 and d["line_graph_alpha"]["ratio"] == "3"
    assert run(["bounds"], capsys)[0] == 2
    assert run(["bounds", "--alpha-t", 9], capsys)[0] == 2


def test_cover_round_trip(capsys, tmp_path):
    f, cert, back = tmp_path / "f.txt", tmp_path / "c.json", tmp_path / "b.txt"
    run(["construct", "matching", 2, "--out", f], capsys)
    assert run(["cover", "to-cover", "--family", f, "--out", cert], capsys)[0] == 0
    d = json.loads(cert.read_text())
    assert d["M"] == 9 and len(d["parts"]) == 2
    assert run(["cover", "from-cover", "--cert", cert, "--out", back], capsys)[0] == 0
    assert len(words_in(back.read_text())) == 9
    assert run(["verify", "--family", back], capsys)[0] == 0


def test_cover_bad_certificate(capsys, tmp_path):
    cert = tmp_path / "c.json"
    cert.write_text(json.dumps({"M": 3, "parts": [{"edges": [[1, 2]], "digraph": {"positions": [1, 2, 3], "arcs": [[1, 2, 1], [2, 3, 2]]}}]}))
    code, _, err = run(["cover", "from-cover", "--cert", cert], capsys)
    assert code == 1 and "not covered" in err
    cert.write_text("{")
    assert run(["cover", "from-cover", "--cert", cert], capsys)[0] == 2
    assert run(["cover", "to-cover"], capsys)[0] == 2


def test_scan(capsys):
    code, out, _ = run(["scan", "--v", 4, "--l", 2, "--n", 6], capsys)
    d = json.loads(out)
    assert code == 0 and d["max"] == 9 and d["argmax"] == [[[1, 2], [3, 4]]]


def test_reproduce(capsys):
    code, out, _ = run(["reproduce"], capsys)
    assert code == 0 and "FAIL" not in out
    assert "kappa(P4,5)" in out and "alpha-ratio t=5" in out


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "gdperm", "construct", "star", "1"], capture_output=True, text=True)
    assert r.returncode == 0 and len(words_in(r.stdout)) == 3
    r = subprocess.run([sys.executable, "-m", "gdperm", "bogus"], capture_output=True, text=True)
    assert r.returncode == 2
