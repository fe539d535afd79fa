"""
Tests for the ncbv command line
"""
import json

from mock import patch
import pytest

from ncbvkit import __version__
from ncbvkit.cli import EXIT_FAIL, EXIT_INPUT, EXIT_PASS, main
from ncbvkit.verifysuites import CheckResult, Report


@pytest.fixture(autouse=True)
def quiet_logging():
    # Leave the pytest log capture in place
    with patch("ncbvkit.cli.setup_logging") as mock_setup:
        yield mock_setup


def write_input(tmp_path, name="input.json", **fields):
    document = {"schema": "ncbvkit/input", "version": 1}
    document.update(fields)
    path = tmp_path / name
    path.write_text(json.dumps(document))
    return str(path)


def airy_input(tmp_path, **extra):
    return write_input(tmp_path, space=[["e", 0]], pairing={"parity": 0, "matrix": [["1"]]},
                       products=[{"left": "e", "right": "e", "value": {"e": "1"}}], **extra)


def odd_input(tmp_path, **extra):
    return write_input(tmp_path, space=[["x", 0], ["y", 1]], pairing={"parity": 1, "matrix": [["0", "1"], ["1", "0"]]},
                       **extra)


class TestTopLevel:
    def test_version(self, capsys):
        assert main(["-V"]) == EXIT_PASS
        assert "ncbv version {}".format(__version__) in capsys.readouterr().out

    def test_no_command(self, capsys):
        assert main([]) == EXIT_INPUT
        assert "usage" in capsys.readouterr().out

    def test_verbosity_is_passed_to_the_logging_setup(self, quiet_logging):
        main(["-v", "debug", "-V"])
        quiet_logging.assert_called_once_with("DEBUG")


class TestVerify:
    def test_small_suite_passes(self, capsys):
        assert main(["verify", "exactness", "--n", "2"]) == EXIT_PASS
        assert capsys.readouterr().out.startswith("exactness: pass")

    def test_unknown_suite(self, capsys):
        assert main(["verify", "nonexistent"]) == EXIT_INPUT
        assert "unknown suite" in capsys.readouterr().err

    def test_size_above_cap(self, capsys):
        assert main(["verify", "correspondence", "--n", "9"]) == EXIT_INPUT
        assert "exceeds the cap" in capsys.readouterr().err

    def test_failing_check(self, capsys):
        report = Report("demo", {}, [CheckResult("broken", False, "nonzero", "(x)")], 0)
        with patch("ncbvkit.cli.run_suite", return_value=report):
            assert main(["verify", "delta-squared"]) == EXIT_FAIL
        assert "demo: FAIL" in capsys.readouterr().out

    def test_json_report(self, tmp_path):
        path = tmp_path / "report.json"
        assert main(["operad-verify", "--n", "2", "--N", "1", "--json", str(path)]) == EXIT_PASS
        document = json.loads(path.read_text())
        assert document["suite"] == "operads"
        assert document["ok"] is True


class TestExpand:
    def test_single_letter(self, tmp_path, capsys):
        path = write_input(tmp_path, space=[["a", 0], ["pa", 1]],
                           pairing={"parity": 1, "matrix": [["0", "1"], ["1", "0"]]})
        assert main(["expand", path, "(a)", "--algebra", "gl", "--N", "1"]) == EXIT_PASS
        assert capsys.readouterr().out.strip() == "A[a,0,0] - A[a,1,1]"

    def test_algebra_defaults_to_the_flavor(self, tmp_path, capsys):
        path = write_input(tmp_path, space=[["a", 0], ["pa", 1]],
                           pairing={"parity": 1, "matrix": [["0", "1"], ["1", "0"]]})
        assert main(["expand", path, "(a)"]) == EXIT_PASS
        assert capsys.readouterr().out.strip() == "A[a,0,0] - A[a,1,1]"

    def test_parse_error(self, tmp_path, capsys):
        assert main(["expand", odd_input(tmp_path), "(x"]) == EXIT_INPUT
        assert "offset 2" in capsys.readouterr().err

    def test_missing_file(self, tmp_path, capsys):
        assert main(["expand", str(tmp_path / "missing.json"), "(x)"]) == EXIT_INPUT
        assert "cannot read" in capsys.readouterr().err


class TestMasterCheck:
    def test_cubic_solution(self, tmp_path, capsys):
        assert main(["master-check", airy_input(tmp_path)]) == EXIT_PASS
        assert "master-check: pass" in capsys.readouterr().out

    def test_failing_solution(self, tmp_path):
        path = odd_input(tmp_path, solution=[{"coefficient": "1", "genus": 0, "words": [["x"], ["x", "x", "y"]]}])
        report_path = tmp_path / "report.json"
        assert main(["master-check", path, "--json", str(report_path)]) == EXIT_FAIL
        document = json.loads(report_path.read_text())
        check = document["checks"][0]
        assert check["ok"] is False
        assert check["counterexample"] == {"h^2": "(x x)"}

    def test_low_order_misses_the_failure(self, tmp_path):
        path = odd_input(tmp_path, solution=[{"coefficient": "1", "genus": 0, "words": [["x"], ["x", "x", "y"]]}])
        assert main(["master-check", path, "--order", "1"]) == EXIT_PASS

    def test_missing_solution(self, tmp_path, capsys):
        assert main(["master-check", odd_input(tmp_path)]) == EXIT_INPUT
        assert "no solution" in capsys.readouterr().err


class TestMorita:
    def test_transport(self, tmp_path, capsys):
        assert main(["morita", airy_input(tmp_path), "--factor", "gl:1", "--expression", "(e)"]) == EXIT_PASS
        out = capsys.readouterr().out
        assert "# 4 letters, even flavor" in out
        assert "(e@E0_0)" in out
        assert "transport/gl(1|1)" in out

    def test_unknown_factor(self, tmp_path, capsys):
        assert main(["morita", airy_input(tmp_path), "--factor", "sp:2"]) == EXIT_INPUT
        assert "unknown algebra" in capsys.readouterr().err


class TestLagrangian:
    def test_queer_lagrangian(self, tmp_path, capsys):
        path = airy_input(tmp_path, matrix={"algebra": "q", "N": 1, "xi": [["0", "1"], ["-1", "0"]]})
        assert main(["lagrangian", path]) == EXIT_PASS
        out = capsys.readouterr().out
        assert out.startswith("quadratic: ")
        assert "lagrangian: pass" in out

    def test_needs_xi(self, tmp_path, capsys):
        assert main(["lagrangian", airy_input(tmp_path)]) == EXIT_INPUT
        assert "xi" in capsys.readouterr().err
