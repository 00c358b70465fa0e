import json
import subprocess
import sys
from fractions import Fraction

import pytest

from youngfield import __version__, cli
from youngfield.characters import ThomaParams, thoma_induced
from youngfield.export import read_csv
from youngfield.series import catalan, square_level_moments
from youngfield.suites import CheckResult


def run(argv, capsys):
    code = cli.main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def fractions(values):
    return [Fraction(v) for v in values]


class TestSample:
    def test_plancherel_rerun_identical(self, tmp_path, capsys):
        out = tmp_path / "run"
        argv = ["sample", "--model", "plancherel", "--n", "400", "--paths", "10", "--seed", "7", "--out", str(out)]
        assert run(argv, capsys)[0] == 0
        files = sorted(p.name for p in out.iterdir())
        assert files == sorted(["summary.json"] + [f"path_{i:05d}.csv" for i in range(10)])
        first = {name: (out / name).read_bytes() for name in files}
        assert run(argv, capsys)[0] == 0
        assert first == {name: (out / name).read_bytes() for name in files}

    def test_path_csv_schema(self, tmp_path, capsys):
        out = tmp_path / "run"
        run(["sample", "--model", "rsk", "--n", "6", "--paths", "2", "--seed", "1", "--out", str(out)], capsys)
        text = (out / "path_00001.csv").read_text()
        assert text.startswith(f"# youngfield {__version__}\n# config ")
        config = json.loads(text.splitlines()[1][len("# config "):])
        assert config["seed"] == 1 and config["model"] == "rsk" and config["n"] == 6
        header, rows = read_csv(text)
        assert header == ["t", "parts"]
        assert [int(r[0]) for r in rows] == list(range(7))
        assert all(sum(map(int, r[1].split(";"))) == int(r[0]) for r in rows[1:])

    def test_fixed_shape(self, capsys):
        code, out, _ = run(["sample", "--model", "fixed-shape", "--shape", "2,2", "--paths", "100", "--seed", "1"], capsys)
        assert code == 0
        assert json.loads(out)["summary"]["final_shapes"] == [[[2, 2], 100]]

    def test_thoma_marginal(self, capsys):
        argv = ["sample", "--model", "thoma", "--alpha", "1/2", "--beta", "1/4", "--n", "5",
                "--paths", "100000", "--seed", "3", "--threads", "4"]
        code, out, _ = run(argv, capsys)
        assert code == 0
        summary = json.loads(out)["summary"]
        law = thoma_induced(5, ThomaParams((Fraction(1, 2),), (Fraction(1, 4),)))
        assert {tuple(k): Fraction(v) for k, v in summary["reference"]} == {tuple(k): v for k, v in law.probs.items()}
        assert summary["chi_square_p"] > 1e-3

    def test_threads_do_not_change_output(self, capsys):
        base = ["sample", "--model", "gelfand", "--n", "20", "--paths", "12", "--seed", "5"]
        assert run(base, capsys)[1] == run(base + ["--threads", "3"], capsys)[1].replace('"threads": 3', '"threads": 1')

    @pytest.mark.parametrize("fmt, name", [("json", "paths.json"), ("svg", "height_00000.svg")])
    def test_formats(self, tmp_path, capsys, fmt, name):
        out = tmp_path / fmt
        argv = ["sample", "--model", "schur-weyl", "--D", "3", "--n", "8", "--paths", "2", "--seed", "2",
                "--format", fmt, "--out", str(out)]
        assert run(argv, capsys)[0] == 0
        assert (out / name).exists()
        if fmt == "json":
            data = json.loads((out / name).read_text())
            assert len(data["paths"]) == 2 and data["meta"]["config"]["D"] == 3

    def test_summary_only(self, tmp_path, capsys):
        out = tmp_path / "s"
        run(["sample", "--model", "plancherel", "--n", "5", "--paths", "3", "--seed", "2", "--summary-only",
             "--out", str(out)], capsys)
        assert [p.name for p in out.iterdir()] == ["summary.json"]

    def test_env_seed(self, capsys, monkeypatch):
        argv = ["sample", "--model", "plancherel", "--n", "6", "--paths", "3"]
        monkeypatch.setenv("YOUNGFIELD_SEED", "9")
        code, env_out, _ = run(argv, capsys)
        assert code == 0
        monkeypatch.delenv("YOUNGFIELD_SEED")
        assert env_out == run(argv + ["--seed", "9"], capsys)[1]

    def test_config_file(self, tmp_path, capsys):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("# defaults\nmodel = plancherel\nn = 6\npaths = 3\nseed = 9\n")
        code, out, _ = run(["sample", "--config", str(cfg)], capsys)
        assert code == 0
        assert out == run(["sample", "--model", "plancherel", "--n", "6", "--paths", "3", "--seed", "9"], capsys)[1]

    @pytest.mark.parametrize(
        "argv",
        [
            ["sample", "--model", "plancherel", "--n", "5", "--paths", "3"],
            ["sample", "--model", "plancherel", "--n", "0", "--paths", "3", "--seed", "1"],
            ["sample", "--model", "schur-weyl", "--n", "5", "--paths", "3", "--seed", "1"],
            ["sample", "--model", "thoma", "--alpha", "3/4", "--beta", "1/2", "--n", "5", "--paths", "3", "--seed", "1"],
            ["sample", "--model", "fixed-shape", "--shape", "1,2", "--paths", "3", "--seed", "1"],
            ["sample", "--model", "nope", "--n", "5", "--paths", "3", "--seed", "1"],
            ["sample", "--model", "plancherel", "--n", "five", "--paths", "3", "--seed", "1"],
            ["frobnicate"],
        ],
    )
    def test_config_errors(self, argv, capsys):
        assert run(argv, capsys)[0] == cli.EXIT_CONFIG

    def test_io_error(self, tmp_path, capsys):
        blocker = tmp_path / "file"
        blocker.write_text("x")
        argv = ["sample", "--model", "plancherel", "--n", "3", "--paths", "1", "--seed", "1", "--out", str(blocker / "sub")]
        assert run(argv, capsys)[0] == cli.EXIT_IO

    def test_missing_config_file(self, tmp_path, capsys):
        assert run(["sample", "--config", str(tmp_path / "absent.cfg")], capsys)[0] == cli.EXIT_IO


class TestPredict:
    def test_plancherel_catalan(self, capsys):
        code, out, _ = run(["predict", "--model", "plancherel", "--kmax", "8"], capsys)
        assert code == 0
        data = json.loads(out)
        assert fractions(data["a"]) == [catalan(k // 2) if k % 2 == 0 else 0 for k in range(9)]
        assert fractions(data["field_covariance_over_pi"]["1|1"][1][1:2]) == [Fraction(1, 2)]

    def test_alpha_one_matches_plain(self, capsys):
        data = json.loads(run(["predict", "--model", "schur-weyl", "--c", "1/2", "--kmax", "5", "--alphas", "1"], capsys)[1])
        assert data["a_alpha"]["1"] == data["a"]
        assert data["b_alpha"]["1|1"] == data["b"]

    def test_square_levels(self, capsys):
        data = json.loads(run(["predict", "--model", "square", "--kmax", "8", "--alphas", "1/2"], capsys)[1])
        expected = square_level_moments(Fraction(1, 2), 8)
        assert fractions(data["a_alpha"]["1/2"]) == expected
        assert fractions(data["square_level_moments"]["1/2"]) == expected

    def test_gelfand_doubles(self, capsys):
        p = json.loads(run(["predict", "--model", "plancherel", "--kmax", "3"], capsys)[1])
        g = json.loads(run(["predict", "--model", "gelfand", "--kmax", "3"], capsys)[1])
        for row_p, row_g in zip(p["field_covariance_over_pi"]["1|1"], g["field_covariance_over_pi"]["1|1"]):
            assert fractions(row_g) == [2 * x for x in fractions(row_p)]

    def test_thoma_atoms(self, capsys):
        code, out, _ = run(["predict", "--model", "thoma", "--alpha", "1/2:4", "--kmax", "4"], capsys)
        assert code == 0
        # a single row atom at 1/2 with weight 4 is the Schur-Weyl limit with c = 1/2
        sw = json.loads(run(["predict", "--model", "schur-weyl", "--c", "1/2", "--kmax", "4"], capsys)[1])
        assert json.loads(out)["a"] == sw["a"]

    def test_custom_coeffs(self, tmp_path, capsys):
        path = tmp_path / "f.json"
        path.write_text(json.dumps({"c": [1], "d": [[2, 2, "1/3"]], "exact": True}))
        data = json.loads(run(["predict", "--model", "custom", "--coeffs", str(path), "--kmax", "3"], capsys)[1])
        plain = json.loads(run(["predict", "--model", "plancherel", "--kmax", "3"], capsys)[1])
        assert Fraction(data["b"][3][3]) - Fraction(plain["b"][3][3]) == Fraction(1, 3)

    def test_truncation_reports_order(self, capsys):
        code, _, err = run(["predict", "--model", "schur-weyl", "--c", "1/2", "--kmax", "6", "--order", "3"], capsys)
        assert code == cli.EXIT_CONFIG
        assert "required order: " in err
        required = int(err.rsplit("required order: ", 1)[1].split()[0])
        assert run(["predict", "--model", "schur-weyl", "--c", "1/2", "--kmax", "6", "--order", str(required)], capsys)[0] == 0
        assert run(["predict", "--model", "schur-weyl", "--c", "1/2", "--kmax", "6", "--order", str(required - 1)], capsys)[0] == 2

    def test_bad_level(self, capsys):
        assert run(["predict", "--model", "plancherel", "--alphas", "3/2"], capsys)[0] == cli.EXIT_CONFIG

    def test_rerun_identical(self, tmp_path, capsys):
        target = tmp_path / "p.json"
        argv = ["predict", "--model", "plancherel", "--kmax", "4", "--alphas", "1/2,1", "--out", str(target)]
        run(argv, capsys)
        first = target.read_bytes()
        run(argv, capsys)
        assert target.read_bytes() == first


class TestFluctuations:
    def test_report_and_field(self, tmp_path, capsys):
        out = tmp_path / "f"
        argv = ["fluctuations", "--n", "30", "--paths", "20", "--seed", "4", "--kmax", "2", "--out", str(out)]
        assert run(argv, capsys)[0] == 0
        report = json.loads((out / "report.json").read_text())["report"]
        assert report["n"] == 30 and len(report["entries"]) == 10
        header, rows = read_csv((out / "field.csv").read_text())
        assert header == ["x", "t", "value"] and len(rows) == 31 * 61

    def test_svg(self, tmp_path, capsys):
        out = tmp_path / "f"
        run(["fluctuations", "--n", "10", "--paths", "3", "--seed", "4", "--format", "svg", "--out", str(out)], capsys)
        assert (out / "field.svg").read_text().startswith("<svg")

    def test_needs_two_paths(self, capsys):
        assert run(["fluctuations", "--n", "10", "--paths", "1", "--seed", "1"], capsys)[0] == cli.EXIT_CONFIG


class TestVerify:
    def test_kerov(self, capsys):
        code, out, err = run(["verify", "kerov"], capsys)
        assert code == 0
        data = json.loads(out)
        assert data["passed"] and [c["code"] for c in data["checks"]] == ["A4", "A5"]
        assert err.splitlines()[0].startswith("PASS A4")

    def test_single_code(self, capsys):
        code, out, _ = run(["verify", "a13"], capsys)
        assert code == 0 and json.loads(out)["checks"][0]["code"] == "A13"

    def test_unknown_suite(self, capsys):
        assert run(["verify", "nope"], capsys)[0] == cli.EXIT_CONFIG

    def test_failure_exit_code(self, capsys, monkeypatch):
        monkeypatch.setattr(cli, "run_check", lambda code, **kw: CheckResult(code, "forced", False, ["failed"]))
        code, out, err = run(["verify", "kerov"], capsys)
        assert code == cli.EXIT_VERIFY
        assert json.loads(out)["passed"] is False
        assert err.startswith("FAIL A4")


class TestEntryPoints:
    def test_module(self):
        result = subprocess.run([sys.executable, "-m", "youngfield", "--version"], capture_output=True, text=True)
        assert result.returncode == 0
        assert result.stdout.strip() == f"youngfield {__version__}"

    def test_predict_subprocess(self):
        result = subprocess.run([sys.executable, "-m", "youngfield", "predict", "--model", "plancherel", "--kmax", "2"],
                                capture_output=True, text=True)
        assert result.returncode == 0
        assert json.loads(result.stdout)["a"] == ["1", "0", "1"]
