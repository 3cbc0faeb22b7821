from importlib import resources

import pytest

from gemkit import fixtures as fx
from gemkit.cli import main
from gemkit.core import elementary_melon, parse, serialize
from gemkit.pairings import covering


def data(name: str) -> str:
    return str(resources.files("gemkit") / "data" / name)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_stats(capsys):
    code, out, _ = run(capsys, "stats", data("k33.gem"))
    assert code == 0
    assert "n_pairings=6" in out.splitlines()


def test_coefficients(capsys):
    code, out, _ = run(capsys, "coefficients", data("k33.gem"))
    lines = out.splitlines()
    assert code == 0
    assert "tilde_a=3" in lines and "a=1" in lines and "Delta=1/2" in lines


def test_series_and_singular_point(capsys):
    code, out, _ = run(capsys, "series", "1+3zG^4", "--order", "3", "--singular")
    lines = out.splitlines()
    assert lines[0] == "1 3 36 594"
    assert "z_c=9/256" in lines and "G_c=4/3" in lines and "discriminant_ok=true" in lines


def test_regress(capsys):
    code, out, _ = run(capsys, "regress")
    assert code == 0
    assert out.count("=pass") == 13


def test_enumerate_maximal(capsys, tmp_path):
    code, out, _ = run(capsys, "enumerate", data("k33.gem"), "--b", "2", "--maximal", "--dump", str(tmp_path))
    assert code == 0
    assert "phi0_max.2=9" in out.splitlines()
    assert len(list(tmp_path.glob("b2_*.gem"))) == 7


def test_certificate_failure_exit(capsys):
    code, out, err = run(capsys, "enumerate", data("k33.gem"), "--b", "2", "--bound", "2")
    assert code == 3
    assert "bound.passed=false" in out
    assert err.startswith("certificate=fail")
    parse(err.split("\n", 1)[1])


def test_certificate_pass(capsys):
    code, out, _ = run(capsys, "enumerate", data("k33.gem"), "--b", "2", "--bound", "3")
    assert code == 0
    assert "bound.passed=true" in out


def test_cap_exit(capsys):
    code, _, err = run(capsys, "--cap", "2", "pairings", data("k33.gem"))
    assert code == 2
    assert "cap-exceeded" in err


def test_invalid_exit(capsys, tmp_path):
    bad = tmp_path / "bad.gem"
    bad.write_text("gem D=3 V=2\ne 0 1 7\n")
    assert run(capsys, "validate", str(bad))[0] == 1
    assert run(capsys, "validate", str(tmp_path / "missing.gem"))[0] == 1


def test_syk_commands(capsys, tmp_path):
    code, out, _ = run(capsys, "syk", "gf", "G4_LO", "--order", "3")
    assert out.split() == ["0", "6", "42", "270"]
    code, out, _ = run(capsys, "syk", "count", "--order", "0", "--marks", "2", "--vmax", "3")
    assert out.splitlines() == ["count.1=6", "count.2=42", "count.3=270"]
    cov = tmp_path / "cov.gem"
    cov.write_text(serialize(covering(fx.k33(), fx.k33_optimal_pairing())))
    code, out, _ = run(capsys, "syk", "classify", str(cov))
    assert code == 0 and out.strip() == "delta0=1"


def test_move_script(capsys, tmp_path):
    g = elementary_melon(3)
    src = tmp_path / "melon.gem"
    src.write_text(serialize(g))
    e = g.adjacency[g.blacks()[0]][3]
    script = tmp_path / "moves.txt"
    script.write_text(f"# grow a melon\ndipole-insert {e} 0,1,2\ndipole-contract 2 3 0,1,2\n")
    out_file = tmp_path / "after.gem"
    code, out, _ = run(capsys, "move", str(src), str(script), "--out", str(out_file))
    assert code == 0
    assert "after.score=6" in out.splitlines()
    assert parse(out_file.read_text()).n_vertices == 2


def test_export_dot(capsys):
    code, out, _ = run(capsys, "export-dot", data("k33.gem"))
    assert code == 0 and out.startswith("graph")


def test_threads_variable(capsys, monkeypatch):
    monkeypatch.setenv("GEMKIT_THREADS", "zero")
    assert run(capsys, "stats", data("k33.gem"))[0] == 1


def test_psi_dot(capsys):
    code, out, _ = run(capsys, "psi", data("k33.gem"), "--dot")
    assert code == 0 and "graph" in out
