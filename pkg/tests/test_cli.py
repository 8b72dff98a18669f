"""CLI contract: exit codes, embedded config headers, byte-identical reruns."""

import json
import math

import pytest

from dynadim import __version__
from dynadim.cli import main

VERSION_STRING = f"dynadim {__version__}"


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestZoo:
    def test_json_listing(self, capsys):
        code, out, _ = run(capsys, ["zoo"])
        assert code == 0
        doc = json.loads(out)
        assert doc["version"] == VERSION_STRING
        names = [s["name"] for s in doc["systems"]]
        assert "toral_automorphism" in names and "doubling_map" in names
        cat = next(s for s in doc["systems"] if s["name"] == "toral_automorphism")
        assert cat["eigenvalues"][0] == pytest.approx(2.618033988749895, abs=1e-12)
        assert cat["eigenvalues"][1] == pytest.approx(1 / 2.618033988749895, abs=1e-12)

    def test_csv_listing(self, capsys):
        code, out, _ = run(capsys, ["zoo", "--format", "csv"])
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == f"# version: {VERSION_STRING}"
        assert lines[1].startswith("# config: ")
        assert lines[2] == "name,space,Lambda,lambda,k,h_top,lambda1,lambda2"
        # absent constants are empty cells, not "None"
        assert "None" not in out


class TestDim:
    def test_default_run_is_uniform_exact(self, capsys):
        code, out, _ = run(capsys, ["dim"])
        assert code == 0
        doc = json.loads(out)
        rep = doc["reports"][0]
        assert rep["q"] == 2.0
        assert rep["d_ls"] == pytest.approx(2.0, abs=1e-12)
        cfgd = doc["config"]
        assert cfgd["measure"] == "bernoulli:0.5,0.5"
        assert "out" not in cfgd and "threads" not in cfgd

    def test_multiple_q_values(self, capsys):
        code, out, _ = run(capsys, ["dim", "--q", "0,1,2"])
        assert code == 0
        doc = json.loads(out)
        assert [r["q"] for r in doc["reports"]] == [0.0, 1.0, 2.0]

    def test_csv_rows(self, capsys):
        code, out, _ = run(capsys, ["dim", "--q", "2", "--eps-count", "4", "--format", "csv"])
        assert code == 0
        lines = out.splitlines()
        assert lines[2] == "q,eps,value,kind"
        rows = [l.split(",") for l in lines[3:]]
        assert len(rows) == 4
        assert all(r[0] == "2.0" and r[3] == "energy" for r in rows)
        assert [float(r[1]) for r in rows] == [0.5, 0.25, 0.125, 0.0625]

    def test_markov_spec_with_semicolon_rows(self, capsys):
        code, out, _ = run(
            capsys, ["dim", "--measure", "markov:0.9,0.1;0.2,0.8", "--q", "1"]
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["reports"][0]["d_ls"] > 0.0

    def test_torus_lebesgue_mc(self, capsys):
        code, out, _ = run(
            capsys,
            [
                "dim", "--system", "doubling_map", "--measure", "lebesgue",
                "--mode", "mc", "--samples", "2000", "--seed", "5",
                "--eps0", "0.25", "--eps-count", "4",
            ],
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["reports"][0]["d_ls"] == pytest.approx(1.0, abs=0.2)
        assert doc["config"]["mode"] == "mc"


class TestEntropy:
    def test_metric_default(self, capsys):
        code, out, _ = run(capsys, ["entropy"])
        assert code == 0
        doc = json.loads(out)
        rep = doc["report"]
        assert rep["h_ls"] == pytest.approx(math.log(2.0), abs=1e-12)
        assert rep["diagnostics"]["center_spread"] == 0.0

    def test_topological_exact(self, capsys):
        code, out, _ = run(
            capsys,
            [
                "entropy", "--kind", "topological", "--system",
                "full_shift_2sided:m=3", "--eps0", "0.5", "--nmax", "8",
            ],
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["report"]["h_ls"] == pytest.approx(math.log(3.0), abs=1e-12)

    def test_metric_csv_has_censored_column(self, capsys):
        code, out, _ = run(
            capsys, ["entropy", "--nmax", "5", "--centers", "2", "--format", "csv"]
        )
        assert code == 0
        lines = out.splitlines()
        assert lines[2] == "eps,n,value,kind,censored"
        assert all(l.endswith(",brin_katok_at_point,0") for l in lines[3:])
        # 3 radii x 2 centers x 5 iterates
        assert len(lines) - 3 == 30

    def test_onesided_system_parameter(self, capsys):
        code, out, _ = run(
            capsys,
            ["entropy", "--system", "full_shift_2sided:metric=onesided", "--nmax", "10"],
        )
        assert code == 0
        assert json.loads(out)["report"]["h_ls"] == pytest.approx(math.log(2.0), abs=1e-12)


class TestVerify:
    def test_filtered_run_header_and_exit(self, capsys):
        code, out, err = run(capsys, ["verify", "--theorems", "max_entropy"])
        assert code == 0
        lines = out.splitlines()
        head = json.loads(lines[0])
        assert head["kind"] == "run_header"
        assert head["version"] == VERSION_STRING
        assert "threads" not in head["config"] and "out" not in head["config"]
        body = [json.loads(l) for l in lines[1:]]
        assert [d["job"] for d in body] == [
            "max_entropy_lower_bound/full-shift-2",
            "max_entropy_lower_bound/full-shift-4",
        ]
        assert all(d["pass"] for d in body)
        assert "[PASS]" in err

    def test_forced_failures_raise_exit_code(self, capsys):
        code, out, err = run(
            capsys, ["verify", "--theorems", "dimension_monotonicity", "--tol=-1"]
        )
        assert code == 13  # 10 + 3 failing instances
        body = [json.loads(l) for l in out.splitlines()[1:]]
        assert len(body) == 3 and not any(d["pass"] for d in body)
        assert "(UNEXPECTED)" in err

    def test_explicitly_empty_selection_runs_nothing(self, capsys):
        code, out, err = run(capsys, ["verify", "--theorems", ""])
        assert code == 0
        assert out == ""

    def test_unmatched_filter_is_a_computation_error(self, capsys):
        code, _, err = run(capsys, ["verify", "--theorems", "no-such-theorem"])
        assert code == 2
        assert "no verification jobs selected" in err

    def test_csv_format_rejected(self, capsys):
        code, _, err = run(capsys, ["verify", "--format", "csv"])
        assert code == 1
        assert "usage error:" in err


class TestErrorPaths:
    def test_unknown_flag(self, capsys):
        code, _, err = run(capsys, ["dim", "--bogus"])
        assert code == 1 and "usage error:" in err

    def test_bad_measure_spec(self, capsys):
        code, _, err = run(capsys, ["dim", "--measure", "bernoulli:0.7"])
        assert code == 1 and "bad measure spec" in err

    def test_unknown_measure_kind(self, capsys):
        code, _, err = run(capsys, ["dim", "--measure", "gibbs:1,2"])
        assert code == 1 and "unknown measure kind" in err

    def test_bad_system_spec(self, capsys):
        code, _, err = run(capsys, ["dim", "--system", "strange_map"])
        assert code == 1 and "bad system spec" in err
        code, _, err = run(capsys, ["dim", "--system", "doubling_map:m"])
        assert code == 1

    def test_bad_grid_is_usage(self, capsys):
        code, _, err = run(capsys, ["dim", "--eps-count", "2"])
        assert code == 1 and "bad radius grid" in err

    def test_measure_error_is_exit_2(self, capsys):
        code, _, err = run(
            capsys,
            ["entropy", "--system", "doubling_map", "--measure", "lebesgue", "--eps0", "0.3"],
        )
        assert code == 2 and err.startswith("error:")

    def test_computation_error_is_exit_2(self, capsys):
        code, _, err = run(
            capsys,
            ["entropy", "--kind", "topological", "--system", "doubling_map", "--eps0", "0.25"],
        )
        assert code == 2 and "full shifts" in err

    def test_version_flag(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["--version"])
        assert exc.value.code == 0
        assert VERSION_STRING in capsys.readouterr().out


class TestConfigFile:
    def test_config_supplies_defaults_and_flags_win(self, tmp_path, capsys):
        cfg = tmp_path / "run.json"
        cfg.write_text(json.dumps({"measure": "bernoulli:0.7,0.3", "q": "0,2"}))
        code, out, _ = run(capsys, ["dim", "--config", str(cfg)])
        assert code == 0
        doc = json.loads(out)
        assert doc["config"]["measure"] == "bernoulli:0.7,0.3"
        assert [r["q"] for r in doc["reports"]] == [0.0, 2.0]

        code, out, _ = run(capsys, ["dim", "--config", str(cfg), "--q", "1"])
        assert code == 0
        doc = json.loads(out)
        assert [r["q"] for r in doc["reports"]] == [1.0]
        assert doc["config"]["measure"] == "bernoulli:0.7,0.3"

    def test_unknown_config_field(self, tmp_path, capsys):
        cfg = tmp_path / "run.json"
        cfg.write_text(json.dumps({"verbosity": 3}))
        code, _, err = run(capsys, ["dim", "--config", str(cfg)])
        assert code == 1 and "unknown config field" in err

    def test_malformed_config(self, tmp_path, capsys):
        cfg = tmp_path / "run.json"
        cfg.write_text("{not json")
        code, _, err = run(capsys, ["dim", "--config", str(cfg)])
        assert code == 1 and "not valid JSON" in err
        code, _, err = run(capsys, ["dim", "--config", str(tmp_path / "absent.json")])
        assert code == 1 and "cannot read config" in err
        cfg.write_text("[1, 2]")
        code, _, err = run(capsys, ["dim", "--config", str(cfg)])
        assert code == 1 and "JSON object" in err


class TestByteIdentity:
    MC_ARGS = [
        "dim", "--system", "doubling_map", "--measure", "lebesgue",
        "--mode", "mc", "--samples", "3000", "--seed", "5",
        "--eps0", "0.25", "--eps-count", "4",
    ]

    def test_dim_mc_rerun(self, tmp_path, capsys):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        assert main(self.MC_ARGS + ["--out", str(a)]) == 0
        assert main(self.MC_ARGS + ["--out", str(b)]) == 0
        capsys.readouterr()
        assert a.read_bytes() == b.read_bytes()

    def test_out_path_does_not_leak_into_content(self, tmp_path, capsys):
        a = tmp_path / "deep" if False else tmp_path / "one.json"
        b = tmp_path / "two.json"
        assert main(["dim", "--out", str(a)]) == 0
        assert main(["dim", "--out", str(b)]) == 0
        stdout_doc = None
        assert main(["dim"]) == 0
        stdout_doc = capsys.readouterr().out
        assert a.read_bytes() == b.read_bytes()
        assert a.read_text() == stdout_doc

    def test_dim_mc_thread_count_invisible(self, tmp_path, capsys):
        a, b = tmp_path / "t1.json", tmp_path / "t8.json"
        assert main(self.MC_ARGS + ["--threads", "1", "--out", str(a)]) == 0
        assert main(self.MC_ARGS + ["--threads", "8", "--out", str(b)]) == 0
        capsys.readouterr()
        assert a.read_bytes() == b.read_bytes()

    def test_entropy_rerun(self, tmp_path, capsys):
        # cloud mode needs samples >> 2^(n+2j) or the empirical balls go empty
        args = [
            "entropy", "--mode", "mc", "--samples", "8192", "--seed", "9",
            "--nmax", "5", "--eps0", "0.5", "--centers", "4",
        ]
        a, b = tmp_path / "e1.json", tmp_path / "e2.json"
        assert main(args + ["--out", str(a)]) == 0
        assert main(args + ["--out", str(b)]) == 0
        capsys.readouterr()
        assert a.read_bytes() == b.read_bytes()

    def test_verify_rerun(self, tmp_path, capsys):
        args = ["verify", "--theorems", "expansive"]
        a, b = tmp_path / "v1.jsonl", tmp_path / "v2.jsonl"
        assert main(args + ["--out", str(a)]) == 0
        assert main(args + ["--out", str(b)]) == 0
        capsys.readouterr()
        assert a.read_bytes() == b.read_bytes()
        first = json.loads(a.read_text().splitlines()[0])
        assert first["kind"] == "run_header"
