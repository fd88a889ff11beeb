import io
import json
import subprocess
import sys

import pytest

from ricci_arg import graph as gc
from ricci_arg.cli import EXIT_FAILED, EXIT_OK, EXIT_USAGE, main


def run(argv, stdin: str | None = None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    out, err = io.StringIO(), io.StringIO()
    code = main(argv, out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_gen_then_lly_on_hypercube(monkeypatch):
    code, text, _ = run(["gen", "hypercube", "4"])
    assert code == EXIT_OK
    code, table, _ = run(["curvature", "lly"], stdin=text, monkeypatch=monkeypatch)
    assert code == EXIT_OK
    rows = table.splitlines()
    assert rows[0] == "u\tv\tkappa_lly"
    assert len(rows) == 1 + 32
    assert {r.split("\t")[2] for r in rows[1:]} == {"1/2"}


def test_lly_json_renders_rationals(tmp_path):
    path = tmp_path / "c5.txt"
    path.write_text(gc.write_graph(gc.cycle(5)))
    code, text, _ = run(["curvature", "lly", "--input", str(path), "--format", "json"])
    assert code == EXIT_OK
    rows = json.loads(text)
    assert rows[0] == {"u": 0, "v": 1, "kappa": "1/2"}


def test_shrikhande_be_with_closed_form(monkeypatch):
    _, text, _ = run(["gen", "shrikhande"])
    code, table, _ = run(["curvature", "be", "--signature", "plus"], stdin=text, monkeypatch=monkeypatch)
    assert code == EXIT_OK
    rows = [r.split("\t") for r in table.splitlines()]
    assert rows[0] == ["vertex", "k_be", "closed_form"]
    assert all(r[1:] == ["2.0", "2.0"] for r in rows[1:]) and len(rows) == 17


def test_be_signature_file(tmp_path):
    g = gc.cycle(5)
    signs = {e: -1 for e in g.edges()}
    path = tmp_path / "c5.txt"
    path.write_text(gc.write_graph(g, signs))
    code, text, _ = run(
        ["curvature", "be", "--input", str(path), "--signature", "file", str(path), "--format", "json"]
    )
    assert code == EXIT_OK
    rows = json.loads(text)
    # all -1 on C5 is unbalanced but anti-balanced, so the minus column appears
    assert len(rows) == 5 and all("closed_form" in r for r in rows)
    assert all(r["k_be"] == pytest.approx(r["closed_form"], abs=1e-8) for r in rows)


def test_be_random_signature_has_no_closed_form(tmp_path):
    g = gc.cycle(6)
    signs = {e: (-1 if i == 0 else 1) for i, e in enumerate(g.edges())}
    path = tmp_path / "c6.txt"
    path.write_text(gc.write_graph(g, signs))
    code, text, _ = run(["curvature", "be", "--family", "cycle", "--params", "6", "--signature", "file", str(path)])
    assert code == EXIT_OK
    assert text.splitlines()[0] == "vertex\tk_be"


def test_detect_outputs(tmp_path):
    code, text, _ = run(["detect", "--family", "petersen", "--format", "json"])
    assert code == EXIT_OK
    assert json.loads(text) == {"amply_regular": True, "n": 10, "d": 3, "alpha": 0, "beta": 1}
    path = tmp_path / "p4.txt"
    path.write_text(gc.write_graph(gc.path(4)))
    code, text, _ = run(["detect", "--input", str(path)])
    assert code == EXIT_OK and "amply_regular: False" in text


def test_petersen_verify_is_gated_and_passes():
    code, text, err = run(["verify", "--family", "petersen", "--format", "json"])
    assert code == EXIT_OK and err == ""
    reports = {r["bound_id"]: r for r in json.loads(text)}
    for bid in ("diameter.lly-arg", "eigen.second-largest", "isoperimetry.edge-weak", "volume.arg-growth"):
        assert reports[bid]["hypothesis_status"] == "violated"
        assert reports[bid]["passed"] is None


def test_verify_failure_exits_one():
    # the single-count bipartiteness statement fails on the icosahedron
    code, _, err = run(["verify", "--family", "icosahedron", "--format", "json"])
    assert code == EXIT_FAILED
    assert err.startswith("verification failed: ")
    first = json.loads(err.split(": ", 1)[1])
    assert first["bound_id"] == "isoperimetry.bipartiteness" and first["passed"] is False


def test_output_is_byte_identical_across_runs():
    argv = ["verify", "--family", "hypercube", "--params", "3"]
    assert run(argv)[1] == run(argv)[1]
    argv = ["curvature", "be", "--family", "icosahedron", "--format", "json"]
    assert run(argv)[1] == run(argv)[1]


@pytest.mark.parametrize(
    "argv, fragment",
    [
        (["verify", "--family", "hypercube", "--params", "3", "--tol", "1e-3"], "tighten"),
        (["detect", "--family", "moebius"], "unknown family"),
        (["detect", "--input", "/nonexistent/graph.txt"], "cannot read"),
        (["detect", "--params", "3"], "--params requires --family"),
        (["curvature", "be", "--family", "petersen", "--signature", "sideways"], "--signature"),
        (["verify", "--family", "hypercube", "--params", "3", "--jobs", "0"], "--jobs"),
        (["curvature", "lly", "--family", "complete-bipartite", "--params", "2", "3"], "regular"),
    ],
)
def test_usage_errors_exit_two(argv, fragment):
    code, _, err = run(argv)
    assert code == EXIT_USAGE
    assert fragment in err


def test_malformed_input_reports_line(monkeypatch):
    code, _, err = run(["detect"], stdin="3 1\n0 0\n", monkeypatch=monkeypatch)
    assert code == EXIT_USAGE
    assert "line 2" in err and "self-loop" in err


def test_signature_file_must_match_graph(tmp_path):
    path = tmp_path / "c5.txt"
    path.write_text(gc.write_graph(gc.cycle(5), {e: 1 for e in gc.cycle(5).edges()}))
    code, _, err = run(["curvature", "be", "--family", "cycle", "--params", "6", "--signature", "file", str(path)])
    assert code == EXIT_USAGE and "edge set differs" in err


def test_argparse_errors_exit_two():
    assert run(["frobnicate"])[0] == EXIT_USAGE
    assert run([])[0] == EXIT_USAGE


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "ricci_arg", "gen", "cycle", "5"], capture_output=True, text=True, check=False
    )
    assert res.returncode == 0
    assert res.stdout.splitlines()[0] == "5 5"
