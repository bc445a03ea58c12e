import json
import subprocess
import sys

import pytest

from lagtori.cli import main
from lagtori.laurent import LaurentPoly, var


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestAlexander:
    def test_torus_table(self, capsys):
        code, out, _ = run(capsys, "alexander", "torus", "--a", "2", "--b", "3", "--format", "table")
        assert code == 0
        assert out == "1 - t + t^2\n"

    def test_not_coprime(self, capsys):
        code, _, err = run(capsys, "alexander", "torus", "--a", "2", "--b", "4")
        assert code == 2
        assert "NotCoprime" in err

    def test_closure(self, capsys):
        code, out, _ = run(capsys, "alexander", "closure", "--braid", "strands=2; 1,1,1")
        assert code == 0
        assert out == "t^-1 - 1 + t\n"

    def test_closure_from_file(self, capsys, tmp_path):
        f = tmp_path / "w.txt"
        f.write_text("strands=3; 1,2,1,2,1,2,1,2\n")
        code, out, _ = run(capsys, "alexander", "closure", "--braid", str(f), "--format", "json")
        assert code == 0
        t = var("t")
        assert LaurentPoly.from_json(out) == t**-3 - t**-2 + 1 - t**2 + t**3

    def test_malformed_braid(self, capsys):
        code, _, _ = run(capsys, "alexander", "closure", "--braid", "strands=2; 1,x")
        assert code == 2

    def test_link_closure_is_usage_error(self, capsys):
        code, _, err = run(capsys, "alexander", "closure", "--braid", "strands=2; 1,1")
        assert code == 2
        assert "NotAKnot" in err


class TestPpoly:
    def test_expand(self, capsys):
        assert run(capsys, "ppoly", "--p", "2", "--q", "1")[:2] == (0, "1 - t + t^2\n")

    def test_count(self, capsys):
        code, out, _ = run(capsys, "ppoly", "--p", "5", "--q", "3", "--count")
        assert code == 0
        assert int(out) == 15

    def test_bad_params(self, capsys):
        assert run(capsys, "ppoly", "--p", "3", "--q", "5")[0] == 2
        assert run(capsys, "ppoly", "--p", "3", "--q", "0")[0] == 2

    def test_csv(self, capsys):
        code, out, _ = run(capsys, "ppoly", "--p", "2", "--q", "1", "--format", "csv")
        assert out.splitlines() == ["t,coeff", "0,1", "1,-1", "2,1"]

    def test_out_file(self, capsys, tmp_path):
        path = tmp_path / "p.json"
        code, out, _ = run(capsys, "ppoly", "--p", "4", "--q", "2", "--format", "json", "--out", str(path))
        assert code == 0 and out == ""
        obj = json.loads(path.read_text())
        assert obj["vars"] == ["t"]
        assert all(isinstance(term["coeff"], str) for term in obj["terms"])


class TestCertify:
    def test_single_json(self, capsys):
        code, out, _ = run(capsys, "certify", "--p", "5", "--q", "3", "--format", "json")
        assert code == 0
        obj = json.loads(out)
        assert obj["bound"] == 3 and obj["verified"] is True
        assert obj["survivors"] == [[12, 1], [17, 1], [22, 1]]
        assert obj["first_cancel_n"] == 3

    def test_grid_csv(self, capsys):
        code, out, _ = run(capsys, "certify", "grid", "--pmax", "12", "--format", "csv")
        lines = out.splitlines()
        assert code == 0
        assert lines[0] == "p,q,terms_P,bound,verified"
        assert len(lines) - 1 == 12 * 13 // 2
        assert all(l.endswith(",true") for l in lines[1:])

    def test_grid_qmax(self, capsys):
        code, out, _ = run(capsys, "certify", "grid", "--pmax", "6", "--qmax", "2", "--format", "csv")
        rows = [tuple(map(int, l.split(",")[:2])) for l in out.splitlines()[1:]]
        assert rows == sorted(rows)
        assert max(q for _, q in rows) == 2

    def test_grid_deterministic_across_threads(self, capsys, monkeypatch):
        monkeypatch.setenv("LAGTORI_THREADS", "1")
        _, one, _ = run(capsys, "certify", "grid", "--pmax", "15", "--format", "json")
        monkeypatch.setenv("LAGTORI_THREADS", "8")
        _, many, _ = run(capsys, "certify", "grid", "--pmax", "15", "--format", "json")
        assert one == many

    def test_witness(self, capsys):
        code, out, _ = run(capsys, "certify", "witness", "--q", "1", "--min-classes", "25", "--format", "json")
        assert code == 0
        obj = json.loads(out)
        assert (obj["p"], obj["q"], obj["bound"]) == (25, 1, 25)

    def test_falsification_exit(self, capsys, monkeypatch):
        import lagtori.certify as cert

        t = var("t")
        monkeypatch.setattr(cert, "p_poly", lambda params: 1 + 2 * t**2)
        code, _, err = run(capsys, "certify", "--p", "2", "--q", "1")
        assert code == 1
        assert "FALSIFIED" in err

    def test_missing_q(self, capsys):
        assert run(capsys, "certify", "--p", "5")[0] == 2


class TestBraidVerbs:
    @pytest.mark.parametrize("p", [2, 5])
    def test_verify_gamma(self, capsys, p):
        code, out, _ = run(capsys, "braid", "verify-gamma", "--p", str(p))
        assert code == 0
        assert out == f"OK: closure = T({p},{p + 1})\n"

    def test_verify_gamma_small(self, capsys):
        assert run(capsys, "braid", "verify-gamma", "--p", "1")[0] == 2

    def test_verify_gamma_mismatch(self, capsys, monkeypatch):
        import lagtori.braid as braid

        monkeypatch.setattr(braid, "gamma_braid", lambda p: braid.torus_braid(p + 1, p + 2))
        assert run(capsys, "braid", "verify-gamma", "--p", "3")[0] == 1

    def test_gamma_word(self, capsys):
        code, out, _ = run(capsys, "braid", "gamma", "--p", "2")
        assert out == "strands=3; 1,1,1,2\n"

    def test_burau(self, capsys):
        code, out, _ = run(capsys, "braid", "burau", "--braid", "strands=2; 1")
        assert out == "-t\n"


class TestOtherVerbs:
    def test_linking(self, capsys):
        code, out, _ = run(capsys, "linking", "--p", "5", "--q", "3", "--format", "json")
        assert json.loads(out)["matrix"] == [[None, 1, 0], [1, None, 3], [0, 3, None]]

    def test_homology(self, capsys):
        code, out, _ = run(capsys, "homology", "--p", "5", "--q", "3", "--format", "json")
        assert json.loads(out) == {"mu_K": 0, "mu_M": 3}

    def test_sw_map_poly(self, capsys):
        t = var("t")
        code, out, _ = run(capsys, "sw-map", "--poly", (1 - t + t**2).to_json())
        assert (code, out) == (0, "t^-2 - 1 + t^2\n")

    def test_sw_map_bad_json(self, capsys):
        assert run(capsys, "sw-map", "--poly", "{nope")[0] == 2

    def test_unknown_command(self, capsys):
        assert run(capsys, "frobnicate")[0] == 2


def test_byte_identical_subprocess():
    cmd = [sys.executable, "-m", "lagtori", "certify", "grid", "--pmax", "10", "--format", "csv"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a.startswith(b"p,q,terms_P,bound,verified\n")
