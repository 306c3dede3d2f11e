import json
import subprocess
import sys
from pathlib import Path

import pytest

from pencilbound import cli
from pencilbound.corpus import load_corpus, parse_corpus_line

GOLDEN = sorted((Path(__file__).parent / "golden").glob("*.json"))


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("path", GOLDEN, ids=lambda p: p.stem)
def test_golden_json(capsys, path):
    case = json.loads(path.read_text())
    code, out, _ = run(capsys, *case["argv"], "--json")
    assert code == 0
    assert json.loads(out) == case["output"]


class TestExitCodes:
    def test_ok_text(self, capsys):
        code, out, _ = run(capsys, "verify", "-f", "Y*(X^2 - 1) + X", "-g", "1")
        assert code == 0
        assert "rho = 2" in out and "|sigma| = 3" in out and "B = 2" in out

    def test_parse_error(self, capsys):
        code, _, err = run(capsys, "spectrum", "-f", "XY", "-g", "1")
        assert code == 1 and "byte 0" in err

    def test_usage(self):
        with pytest.raises(SystemExit) as info:
            cli.main(["spectrum", "-f", "X"])
        assert info.value.code == 1

    def test_half_derivation(self, capsys):
        code, _, _ = run(capsys, "verify", "-f", "Y", "-g", "X^2", "-A", "X")
        assert code == 1

    def test_decomposable(self, capsys):
        code, _, err = run(capsys, "spectrum", "-f", "X^2*Y^2", "-g", "1")
        assert code == 2 and "DecomposableError" in err

    def test_not_coprime(self, capsys):
        code, _, err = run(capsys, "jacobian", "-f", "X*Y", "-g", "X")
        assert code == 2 and "NotCoprimeError" in err

    def test_constant(self, capsys):
        code, _, _ = run(capsys, "spectrum", "-f", "3", "-g", "1")
        assert code == 2

    def test_not_first_integral(self, capsys):
        code, _, err = run(capsys, "verify", "-f", "Y", "-g", "X^2", "-A", "X", "-B", "Y")
        assert code == 2 and "NotFirstIntegralError" in err

    def test_corpus_mismatch(self, capsys, monkeypatch):
        bad = parse_corpus_line(load_corpus()[0].to_line().replace("rho=2 ", "rho=5 "))
        monkeypatch.setattr(cli, "load_corpus", lambda: [bad])
        code, out, _ = run(capsys, "corpus")
        assert code == 3 and "FAIL" in out


class TestSubcommands:
    def test_newton(self, capsys):
        code, out, _ = run(capsys, "newton", "-A", "X^3 - 1", "-B", "-(3*X^2*Y + 1)")
        assert code == 0 and "B = 3" in out

    def test_newton_segment(self, capsys):
        # shifted supports {(1,0), (-1,0)} and {(0,0)}: a segment meeting N^2 in two points
        code, out, _ = run(capsys, "newton", "-A", "X^2-1", "-B", "Y", "--json")
        doc = json.loads(out)
        assert code == 0 and doc["bcount"] == 2 and doc["vertices"] == [[-1, 0], [1, 0]]

    def test_spectrum_of_lines_is_empty(self, capsys):
        code, out, _ = run(capsys, "spectrum", "-f", "X", "-g", "Y", "--json")
        assert code == 0 and json.loads(out)["entries"] == []

    def test_darboux_absent(self, capsys):
        code, out, _ = run(capsys, "darboux", "-A", "X", "-B", "Y", "-f", "X^2 + Y")
        assert code == 0 and "not a Darboux" in out

    def test_indecomposable_flag(self, capsys):
        code, out, _ = run(capsys, "indecomposable", "-f", "(X+Y^2)^3", "-g", "1")
        assert code == 0 and "LIKELY_DECOMPOSABLE" in out

    def test_seed_changes_matrix_only(self, capsys):
        docs = []
        for seed in ("0", "3"):
            _, out, _ = run(capsys, "spectrum", "-f", "X^3", "-g", "Y^2", "--json", "--seed", seed)
            docs.append(json.loads(out))
        for key in ("rho", "sigma_count", "gamma_count", "deg_R"):
            assert docs[0][key] == docs[1][key]

    def test_corpus_all_agree(self, capsys):
        code, out, _ = run(capsys, "corpus")
        assert code == 0
        assert out.strip().splitlines()[-1] == f"{len(load_corpus())}/{len(load_corpus())} fixtures agree"

    def test_corpus_filter_json(self, capsys):
        code, out, _ = run(capsys, "corpus", "--filter", "sharp", "--json")
        doc = json.loads(out)
        assert code == 0 and doc["all_ok"]
        assert [it["name"] for it in doc["items"]] == [f"sharp_k{k}" for k in range(2, 6)]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "pencilbound", "jacobian", "-f", "Y", "-g", "X^2"],
                          capture_output=True, text=True, timeout=60)
    assert proc.returncode == 0 and "k = 1" in proc.stdout
