import io
import json

import numpy as np
import pytest

from hgs import __version__, get, parse_matrix, read_matrix, read_vector, write_matrix
from hgs import _corpus
from hgs._cli import (
    EXIT_INPUT,
    EXIT_NO_CONVERGENCE,
    EXIT_OK,
    main,
)


def run(*argv):
    stream = io.StringIO()
    code = main(list(argv), stream)
    return code, stream.getvalue()


def run_json(*argv):
    code, output = run(*argv, "--json")
    return code, json.loads(output)


class TestGen(object):
    def test_round_trip_analyze(self, tmp_path):
        path = tmp_path / "ex11A.mtx"
        code, _ = run("gen", "ex11A", "--out", str(path))
        assert code == EXIT_OK
        assert np.array_equal(read_matrix(path), get("ex11A"))
        code, report = run_json("analyze", str(path))
        assert code == EXIT_OK
        (fragment,) = report["inputs"]
        assert fragment["input"] == str(path)
        assert fragment["agree"]
        forward = fragment["methods"]["FGS"]
        assert forward["status"] == "diverges"
        assert forward["witness"]["block"] == [1, 2, 3]
        assert forward["witness"]["family"] == "psi"
        assert forward["witness"]["angle"] == pytest.approx(np.pi)
        assert [rule["id"] for rule in forward["rules"]] == [
            "frobenius-blocks",
            "psi-ray-block",
        ]
        assert fragment["methods"]["BGS"]["status"] == "converges"
        assert fragment["methods"]["J"]["status"] == "unknown"

    def test_stdout(self):
        code, output = run("gen", "ex12B")
        assert code == EXIT_OK
        assert np.array_equal(parse_matrix(output), get("ex12B"))

    def test_random_class(self):
        code, output = run("gen", "sdd", "--n", "4", "--seed", "3")
        assert code == EXIT_OK
        assert parse_matrix(output).shape == (4, 4)
        assert run("gen", "sdd")[0] == EXIT_INPUT

    def test_generation_failure(self, monkeypatch, capsys):
        monkeypatch.setattr(_corpus, "_ATTEMPTS", 0)
        assert run("gen", "idd", "--n", "3")[0] == EXIT_INPUT
        assert "no idd matrix" in capsys.readouterr().err

    def test_bad_order(self, capsys):
        code, _ = run("gen", "family61", "--n", "1")
        assert code == EXIT_INPUT
        assert "family61" in capsys.readouterr().err
        assert run("gen", "ex99")[0] == EXIT_INPUT

    def test_family_round_trip(self, tmp_path):
        path = tmp_path / "family.mtx"
        assert run("gen", "family61", "--n", "100", "--out", str(path))[0] == EXIT_OK
        _, from_file = run_json("classify", str(path))
        _, from_corpus = run_json("classify", "corpus:family61:100")
        first, second = from_file["inputs"][0], from_corpus["inputs"][0]
        first.pop("input")
        second.pop("input")
        assert first == second
        assert first["order"] == 100
        assert first["h_class"] == "mixed"


class TestClassify(object):
    def test_text(self):
        code, output = run("classify", "corpus:ex12B")
        assert code == EXIT_OK
        assert "H-class: mixed" in output
        assert output.startswith("corpus:ex12B\n")

    def test_json(self):
        code, report = run_json("classify", "corpus:ex62")
        assert code == EXIT_OK
        assert report["tool"] == "hgs"
        assert report["version"] == __version__
        assert report["command"] == "classify"
        assert "timing" not in report
        fragment = report["inputs"][0]
        assert fragment["fnf_blocks"] == [[1, 2, 3], [4, 5, 6]]
        assert fragment["equality_rows"] == [1, 2, 3, 4, 5, 6]
        assert fragment["gd_scaling"]["exists"]

    def test_drop_tol(self):
        _, report = run_json("classify", "corpus:ex11A", "--drop-tol", "1.5")
        fragment = report["inputs"][0]
        assert not fragment["irreducible"]
        assert fragment["block_sizes"] == [1, 1, 1]

    def test_jobs(self):
        inputs = ["corpus:ex11A", "corpus:ex12A", "corpus:ex62", "corpus:family61:8"]
        sequential = run("classify", *inputs, "--json")
        threaded = run("classify", *inputs, "--json", "--jobs", "3")
        assert sequential == threaded

    def test_malformed(self, tmp_path, capsys):
        path = tmp_path / "bad.mtx"
        path.write_text("%%MatrixMarket matrix array real general\n2 2\n1\n2\nx\n")
        assert run("classify", str(path))[0] == EXIT_INPUT
        assert "line 5" in capsys.readouterr().err

    def test_missing(self, tmp_path):
        assert run("classify", str(tmp_path / "missing.mtx"))[0] == EXIT_INPUT

    def test_bad_corpus_order(self):
        assert run("classify", "corpus:family61:abc")[0] == EXIT_INPUT


class TestAnalyze(object):
    def test_methods(self):
        code, report = run_json("analyze", "corpus:ex12A", "--method", "fgs,sgs")
        assert code == EXIT_OK
        methods = report["inputs"][0]["methods"]
        assert sorted(methods) == ["FGS", "SGS"]
        assert methods["FGS"]["rho"] == pytest.approx(0.4215, abs=5e-4)

    def test_text(self):
        code, output = run("analyze", "corpus:ex12B")
        assert code == EXIT_OK
        assert "gde-2x2-block" in output

    def test_bad_method(self):
        assert run("analyze", "corpus:ex12A", "--method", "sor")[0] == EXIT_INPUT

    def test_byte_stable(self):
        first = run("analyze", "corpus:ex11B", "corpus:ex62", "--json")
        second = run("analyze", "corpus:ex11B", "corpus:ex62", "--json")
        assert first == second

    def test_timing(self):
        _, report = run_json("analyze", "corpus:ex12A", "--timing")
        assert report["timing"]["seconds"] >= 0


class TestPrecondition(object):
    def test_schur(self):
        code, report = run_json(
            "precondition", "corpus:ex62", "--strategy", "schur-alpha", "--alpha", "3,4"
        )
        assert code == EXIT_OK
        assert report["alpha"] == [3, 4]
        assert report["pivot"] is None
        assert report["h_class"] == "invertible"
        for method in ("FGS", "BGS", "SGS"):
            assert report["bounds"][method]["rho"] == pytest.approx(0.6, abs=5e-4)
            assert report["bounds"][method]["rho_mu"] == pytest.approx(0.6, abs=5e-4)

    def test_column(self, tmp_path):
        path = tmp_path / "tilde.mtx"
        code, report = run_json(
            "precondition",
            "corpus:family61:10",
            "--strategy",
            "column-k",
            "--k",
            "1",
            "--out",
            str(path),
        )
        assert code == EXIT_OK
        assert report["pivot"] == 1
        tilde = read_matrix(path)
        assert np.allclose(tilde[1:, 0], 0)

    def test_pivot_out_of_range(self):
        argv = ["precondition", "corpus:ex62", "--strategy", "column-k", "--k", "7"]
        assert run(*argv)[0] == EXIT_INPUT

    def test_schur_needs_alpha(self):
        argv = ["precondition", "corpus:ex62", "--strategy", "schur-alpha"]
        assert run(*argv)[0] == EXIT_INPUT

    def test_strategy_required(self):
        assert run("precondition", "corpus:ex62")[0] == EXIT_INPUT

    def test_text(self):
        code, output = run(
            "precondition", "corpus:ex12A", "--strategy", "gauss-chain"
        )
        assert code == EXIT_OK
        assert "strategy: gauss-chain" in output


class TestSolve(object):
    def test_no_convergence(self):
        argv = ["solve", "corpus:ex11A", "--method", "fgs", "--maxit", "200"]
        assert run(*argv)[0] == EXIT_NO_CONVERGENCE

    def test_identity(self, tmp_path):
        path = tmp_path / "eye.mtx"
        write_matrix(path, np.eye(3))
        code, report = run_json("solve", str(path))
        assert code == EXIT_OK
        assert report["status"] == "converged"
        assert report["method"] == "SGS"
        assert report["x"] == [1.0, 1.0, 1.0]

    def test_rhs_and_out(self, tmp_path):
        rhs, out = tmp_path / "b.mtx", tmp_path / "x.mtx"
        rhs.write_text("%%MatrixMarket matrix array complex general\n3 1\n1 0\n0 2\n3 0\n")
        code, report = run_json(
            "solve", "corpus:ex12A", "--rhs", str(rhs), "--method", "bgs", "--out", str(out)
        )
        assert code == EXIT_OK
        b = np.array([1, 2j, 3])
        assert np.allclose(read_vector(out), np.linalg.solve(get("ex12A"), b))
        assert isinstance(report["x"][1], list)

    def test_preconditioned(self):
        code, report = run_json(
            "solve", "corpus:ex62", "--strategy", "schur-alpha", "--alpha", "3,4"
        )
        assert code == EXIT_OK
        assert report["strategy"] == "schur-alpha"
        assert report["residual"] < 1e-8

    def test_overflow_is_null(self, tmp_path):
        path = tmp_path / "huge.mtx"
        write_matrix(path, [[1, 1e300], [1e300, 1]])
        code, output = run("solve", str(path), "--method", "fgs", "--maxit", "50", "--json")
        assert code == EXIT_NO_CONVERGENCE
        assert "Infinity" not in output
        report = json.loads(output)
        assert report["status"] == "diverged"
        assert report["residual"] is None

    def test_one_method(self):
        assert run("solve", "corpus:ex12A", "--method", "fgs,bgs")[0] == EXIT_INPUT

    def test_zero_diagonal(self, tmp_path):
        path = tmp_path / "z.mtx"
        write_matrix(path, [[0, 1], [1, 1]])
        assert run("solve", str(path))[0] == EXIT_INPUT


class TestParser(object):
    def test_version(self, capsys):
        assert run("--version")[0] == EXIT_OK
        assert __version__ in capsys.readouterr().out

    def test_unknown_command(self):
        assert run("factor", "corpus:ex62")[0] == EXIT_INPUT
        assert run()[0] == EXIT_INPUT
