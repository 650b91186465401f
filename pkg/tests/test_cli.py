import json
import subprocess
import sys

import pytest

from solochess.cli import main
from solochess.formats import parse_instance

WORKED_ROW = "solo-chess v1 d=2\n" + "".join(f"R {x} 1 {b}\n" for x, b in enumerate("0212112100", start=1))


@pytest.fixture
def run(capsys):
    def _run(*argv):
        code = main([str(a) for a in argv])
        out, err = capsys.readouterr()
        return code, out, err

    return _run


@pytest.fixture
def board(tmp_path):
    p = tmp_path / "board.txt"
    p.write_text(WORKED_ROW)
    return p


def test_solve_and_verify(run, board, tmp_path):
    w = tmp_path / "w.txt"
    code, out, _ = run("solve", board, "--witness", w)
    assert code == 0 and out.startswith("SOLVABLE")
    assert len(w.read_text().splitlines()) == 9
    code, out, _ = run("verify", board, w)
    assert (code, out.strip()) == (0, "OK (9 moves)")


def test_solve_json_with_target(run, board):
    code, out, _ = run("solve", board, "--target", "10,1", "--json")
    payload = json.loads(out)
    assert code == 0 and payload["solvable"] and payload["final"] == "10,1"
    code, out, _ = run("solve", board, "--target", "2,1", "--json")
    assert code == 1 and not json.loads(out)["solvable"]


def test_verify_reports_first_failure(run, board, tmp_path):
    w = tmp_path / "bad.txt"
    w.write_text("1,1 -> 10,1\n")
    code, out, _ = run("verify", board, w)
    assert code == 1 and out.startswith("FAIL at move 1:")


def test_parse_error_exit_code(run, tmp_path):
    p = tmp_path / "broken.txt"
    p.write_text("solo-chess v1 d=2\nR 1 1 7\n")
    code, _, err = run("solve", p)
    assert code == 3 and "line 2, column 7" in err


def test_usage_errors(run, tmp_path):
    assert run("solve", tmp_path / "missing.txt")[0] == 2
    assert run("frobnicate")[0] == 2
    assert run("gen", "graphs", "--size", "0")[0] == 2


def test_state_cap_overflow(run, tmp_path):
    p = tmp_path / "g.txt"
    assert run("gen", "graphs", "--size", "9", "--seed", "3", "-o", p)[0] == 0
    assert run("solve", p, "--method", "search", "--state-cap", "1")[0] == 4


def test_decide_rook_string(run):
    code, out, _ = run("decide", "--rooks1d", "0212112100", "--json")
    payload = json.loads(out)
    assert code == 0 and payload["algo"] == "rooks1d" and len(payload["witness"]) == 9
    assert run("decide", "--rooks1d", "00")[0] == 1


def test_decide_auto_board(run, board):
    assert run("decide", board)[0] == 0


def test_decide_tree(run, tmp_path):
    p = tmp_path / "t.txt"
    p.write_text("capture-graph v1 directed=0 d=2\nv a 2\nv b 2\nv c 2\ne a b\ne b c\n")
    code, out, _ = run("decide", p, "--algo", "tree", "--root", "b", "--json")
    assert code == 0 and json.loads(out)["solvable"]


def test_gen_is_deterministic(run):
    a = run("gen", "dags", "--size", "5", "--seed", "7")[1]
    b = run("gen", "dags", "--size", "5", "--seed", "7")[1]
    assert a == b and parse_instance(a).directed


def test_reduce_sat(run, tmp_path):
    src = tmp_path / "f.cnf"
    src.write_text("p cnf 2 2\n1 2 0\n-1 0\n")
    out_path, w = tmp_path / "dag.txt", tmp_path / "w.txt"
    assert run("reduce", "sat-dag", src, "-o", out_path, "--witness", w)[0] == 0
    assert run("verify", out_path, w)[0] == 0


def test_reduce_rbds(run, tmp_path):
    src = tmp_path / "r.txt"
    src.write_text("rbds v1 n=2 m=1 k=1\nedge 2 1\n")
    out_path, w = tmp_path / "board.txt", tmp_path / "w.txt"
    assert run("reduce", "rbds-rooks", src, "-o", out_path, "--witness", w)[0] == 0
    assert len(parse_instance(out_path.read_text())) == 2 + 1 + 1 + 1 + 1
    assert run("verify", out_path, w)[0] == 0


def test_sweep_command(run):
    code, out, _ = run("sweep", "rooks1d", "--exhaustive", "--max-len", "4")
    assert code == 0 and "0 mismatches" in out


def test_module_entry_point(board):
    proc = subprocess.run(
        [sys.executable, "-m", "solochess", "solve", str(board)], capture_output=True, text=True
    )
    assert proc.returncode == 0 and proc.stdout.startswith("SOLVABLE")
