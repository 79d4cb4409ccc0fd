import json
import subprocess
import sys

import pytest

from pohpp import emit_instance, generate, parse_instance, solve_width_dp
from pohpp.cli import main
from pohpp.formats import emit_matrix, emit_mcp
from pohpp.reductions import MulticoloredGraph

C4 = "p pohpp 4 4 1\ne 0 1\ne 1 2\ne 2 3\ne 0 3\no 2 0\n"
K22 = "p pohpp 4 4 4\ne 0 2\ne 0 3\ne 1 2\ne 1 3\no 0 2\no 0 3\no 1 2\no 1 3\n"


@pytest.fixture
def files(tmp_path):
    (tmp_path / "c4.txt").write_text(C4)
    (tmp_path / "k22.txt").write_text(K22)
    return tmp_path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_solve_feasible_and_infeasible(files, capsys):
    code, out, err = run(capsys, "solve", files / "c4.txt")
    assert code == 0
    assert "status FEASIBLE" in out and "cost 3" in out and "path 1 2 3 0" in out
    assert "time" in err and "time" not in out
    code, out, _ = run(capsys, "solve", files / "k22.txt", "--algo", "oracle")
    assert code == 2 and "INFEASIBLE" in out


@pytest.mark.parametrize("algo", ["oracle", "width", "dlo", "outerplanar"])
def test_every_algorithm(files, capsys, algo):
    code, out, _ = run(capsys, "solve", files / "c4.txt", "--algo", algo, "--json")
    doc = json.loads(out)
    assert code == 0
    assert (doc["cost_num"], doc["cost_den"], doc["path"], doc["algorithm"]) == (3, 1, [1, 2, 3, 0], algo)


def test_fractional_cost_text(tmp_path, capsys):
    f = tmp_path / "w.txt"
    f.write_text("p pohpp 3 2 0 w\ne 0 1 1/3\ne 1 2 0.5\n")
    code, out, _ = run(capsys, "solve", f)
    assert code == 0 and "cost 5/6 ~ 0.8333333333" in out


def test_path_out(files, capsys):
    target = files / "path.txt"
    run(capsys, "solve", files / "c4.txt", "--path-out", target)
    assert target.read_text().split() == ["1", "2", "3", "0"]


def test_determinism(files, capsys):
    first = run(capsys, "solve", files / "c4.txt")[1]
    assert first == run(capsys, "solve", files / "c4.txt")[1]
    a = json.loads(run(capsys, "solve", files / "c4.txt", "--json")[1])
    b = json.loads(run(capsys, "solve", files / "c4.txt", "--json")[1])
    a.pop("millis"), b.pop("millis")
    assert a == b
    g1 = run(capsys, "gen", "random", "n=7", "--seed", "3")[1]
    assert g1 == run(capsys, "gen", "random", "n=7", "--seed", "3")[1]


def test_info(files, capsys):
    code, out, _ = run(capsys, "info", files / "c4.txt", "--json")
    doc = json.loads(out)
    assert code == 0
    assert doc["n"] == 4 and doc["outerplanar"] is True and doc["strategy"] == "outerplanar"
    assert doc["width"] + doc["height"] >= 4
    code, out, _ = run(capsys, "info", files / "c4.txt", "--dot")
    assert out.startswith("graph pohpp")


def test_verify(files, capsys):
    code, out, _ = run(capsys, "verify", files / "c4.txt", "--path", "1 2 3 0")
    assert code == 0 and out.strip() == "valid cost 3"
    code, out, _ = run(capsys, "verify", files / "c4.txt", "--path", "0 1 2 3")
    assert code == 2 and "OrderViolation" in out
    code, _, err = run(capsys, "verify", files / "c4.txt", "--path", "0 x")
    assert code == 1 and "error" in err


def test_gen_and_round_trip(tmp_path, capsys):
    out = tmp_path / "g.txt"
    code, _, _ = run(capsys, "gen", "outerplanar", "n=9", "blocks=2", "--seed", "5", "-o", out)
    assert code == 0
    assert parse_instance(out.read_text()) == generate("outerplanar", {"n": 9, "blocks": 2}, 5)
    code, _, err = run(capsys, "gen", "random", "bogus=1")
    assert code == 1 and "BadParams" in err
    code, _, err = run(capsys, "gen", "random", "novalue")
    assert code == 1


def test_gadgets(tmp_path, capsys):
    mcp = tmp_path / "g.mcp"
    mcp.write_text(emit_mcp(MulticoloredGraph(2, 1, frozenset({(0, 1)}))))
    code, out, _ = run(capsys, "gadget", "mcp", mcp)
    assert code == 0 and parse_instance(out).n == 4 + 2 + 3 * 2 * 1 * 3
    assert solve_width_dp(parse_instance(out)) is not None

    tour = tmp_path / "t.txt"
    tour.write_text("p pohpp 3 3 0 w\ne 0 1 1\ne 1 2 2\ne 0 2 4\n")
    red = tmp_path / "red.txt"
    code, _, _ = run(capsys, "gadget", "tsppc", tour, "--start", "0", "-o", red)
    assert code == 0
    code, out, _ = run(capsys, "solve", red)
    assert "cost 7" in out

    mat = tmp_path / "m.txt"
    mat.write_text(emit_matrix([[1, 1], [1, 1]]))
    code, out, _ = run(capsys, "gadget", "bipartite", mat)
    assert code == 0
    bip = tmp_path / "bip.txt"
    bip.write_text(out)
    assert run(capsys, "solve", bip)[0] == 2


def test_errors_exit_1(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("p pohpp 2 1 0\ne 0 5\n")
    code, _, err = run(capsys, "solve", bad)
    assert code == 1 and "ParseError" in err and "line 2" in err
    code, _, err = run(capsys, "solve", tmp_path / "missing.txt")
    assert code == 1
    with pytest.raises(SystemExit) as info:
        main(["solve", str(bad), "--algo", "magic"])
    assert info.value.code == 1
    k4 = tmp_path / "k4.txt"
    k4.write_text("p pohpp 4 6 0\ne 0 1\ne 0 2\ne 0 3\ne 1 2\ne 1 3\ne 2 3\n")
    code, _, err = run(capsys, "solve", k4, "--algo", "outerplanar")
    assert code == 1 and "NotOuterplanar" in err


def test_size_guard_via_cli(tmp_path, capsys):
    f = tmp_path / "big.txt"
    f.write_text(emit_instance(generate("random", {"n": 10}, 1)))
    code, _, err = run(capsys, "solve", f, "--algo", "oracle", "--oracle-cap", "5")
    assert code == 1 and "SizeGuard" in err


def test_module_entry_point(files):
    proc = subprocess.run(
        [sys.executable, "-m", "pohpp", "solve", str(files / "c4.txt"), "--json"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["status"] == "FEASIBLE"
