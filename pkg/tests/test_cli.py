"""Command-line interface: exit codes, outputs, schema, determinism."""

import json
from importlib import resources

import jsonschema
import pytest

from spinqft import cli


SCHEMA = json.loads(
    resources.files("spinqft.schema").joinpath("cli-output.schema.json").read_text())


def run_cli(args, capsys):
    code = cli.main(args)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def validate(doc):
    jsonschema.validate(doc, SCHEMA)


class TestVerify:
    @pytest.mark.parametrize("decomp", ["serial", "parallel"])
    def test_exit_zero_and_schema(self, decomp, capsys):
        code, out, _ = run_cli(["verify", "--n", "3", "--decomp", decomp], capsys)
        assert code == 0
        doc = json.loads(out)
        validate(doc)
        assert doc["passed"] and doc["max_deviation"] < 1e-10

    def test_n_cap_is_usage_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            cli.main(["verify", "--n", "99"])
        assert exc.value.code == 2

    def test_approximate_with_cutoff_fails_verification(self, capsys):
        code, out, _ = run_cli(["verify", "--n", "4", "--decomp", "approximate",
                                "--m", "1"], capsys)
        assert code == 1
        doc = json.loads(out)
        validate(doc)
        assert not doc["passed"]


class TestCost:
    def test_csv_output(self, capsys, tmp_path):
        out_file = tmp_path / "sweep.csv"
        code, _, err = run_cli(["cost", "--model", "liquid", "--J", "215",
                                "--delta", "10e-6", "--n-range", "1..10",
                                "--out", str(out_file)], capsys)
        assert code == 0
        lines = out_file.read_text().strip().splitlines()
        assert lines[0] == "n,pulse_term,coupling_term,swap_term,total"
        assert len(lines) == 11
        assert "ratio" in err

    def test_solid_swap_column(self, capsys):
        code, out, _ = run_cli(["cost", "--model", "solid", "--d", "1e7",
                                "--Delta", "1e-7", "--delta", "1e-8",
                                "--n-range", "1..4", "--format", "json"], capsys)
        assert code == 0
        rows = json.loads(out)
        validate(rows)
        for row in rows:
            assert row["swap_term"] == pytest.approx(2 * row["n"] * 1e-7, rel=1e-12)

    def test_invalid_range_is_usage_error(self):
        for bad in ("5..2", "0..3", "nonsense"):
            with pytest.raises(SystemExit) as exc:
                cli.main(["cost", "--model", "liquid", "--n-range", bad])
            assert exc.value.code == 2

    def test_solid_requires_parameters(self):
        with pytest.raises(SystemExit) as exc:
            cli.main(["cost", "--model", "solid", "--n-range", "1..3"])
        assert exc.value.code == 2


class TestSimulate:
    def test_noiseless_fidelity(self, capsys):
        code, out, _ = run_cli(["simulate", "--sequence", "selective-n2"], capsys)
        assert code == 0
        doc = json.loads(out)
        validate(doc)
        assert doc["fidelity_report"]["fidelity"] >= 0.999

    def test_dephasing_lowers_fidelity(self, capsys):
        _, quiet, _ = run_cli(["simulate", "--sequence", "selective-n2"], capsys)
        _, noisy, _ = run_cli(["simulate", "--sequence", "selective-n2",
                               "--t2", "0.05"], capsys)
        f0 = json.loads(quiet)["fidelity_report"]["fidelity"]
        f1 = json.loads(noisy)["fidelity_report"]["fidelity"]
        assert f1 < f0

    def test_tomography_cross_check(self, capsys):
        code, out, _ = run_cli(["simulate", "--sequence", "parallel-n2",
                                "--tomography"], capsys)
        assert code == 0
        doc = json.loads(out)
        validate(doc)
        assert doc["tomography_max_error"] <= 1e-8

    def test_unknown_sequence_is_usage_error(self):
        with pytest.raises(SystemExit) as exc:
            cli.main(["simulate", "--sequence", "nonsense"])
        assert exc.value.code == 2

    def test_sequence_from_file(self, capsys, tmp_path):
        path = tmp_path / "mini.seq"
        path.write_text("n: 2\n90y@s1,s2 180x@s1,s2\n90x@t3-4\nz45@s1\n")
        code, out, _ = run_cli(["simulate", "--sequence", str(path)], capsys)
        assert code == 0
        assert json.loads(out)["fidelity_report"]["fidelity"] >= 0.999

    def test_parse_error_reports_position(self, capsys, tmp_path):
        path = tmp_path / "broken.seq"
        path.write_text("n: 2\n90q@s1\n")
        with pytest.raises(SystemExit) as exc:
            cli.main(["simulate", "--sequence", str(path)])
        assert exc.value.code == 2
        assert "line 2" in capsys.readouterr().err

    def test_no_reverse_readout_changes_nothing_on_flat_target(self, capsys):
        # the transform of |0...0> is reversal-invariant, so both readouts agree
        _, a, _ = run_cli(["simulate", "--sequence", "serial-n2"], capsys)
        _, b, _ = run_cli(["simulate", "--sequence", "serial-n2",
                           "--no-reverse-readout"], capsys)
        fa = json.loads(a)["fidelity_report"]["fidelity"]
        fb = json.loads(b)["fidelity_report"]["fidelity"]
        assert fa == pytest.approx(fb, abs=1e-12)


class TestTomoRoundtrip:
    def test_passes_at_tolerance(self, capsys):
        code, out, _ = run_cli(["tomo-roundtrip", "--n", "2", "--samples", "10"], capsys)
        assert code == 0
        doc = json.loads(out)
        validate(doc)
        assert doc["max_error"] <= 1e-8

    def test_seed_env_override(self, capsys, monkeypatch):
        monkeypatch.setenv("SPINQFT_SEED", "123")
        _, out, _ = run_cli(["tomo-roundtrip", "--n", "2", "--samples", "2"], capsys)
        assert json.loads(out)["seed"] == 123


class TestExportFig2:
    def test_output_csv(self, capsys, tmp_path):
        out_file = tmp_path / "bars.csv"
        code, _, _ = run_cli(["export-fig2", "--sequence", "selective-n2",
                              "--out", str(out_file)], capsys)
        assert code == 0
        lines = out_file.read_text().strip().splitlines()
        assert lines[0] == "row,col,re,im"
        assert len(lines) == 17

    def test_pseudopure_stage(self, capsys):
        code, out, _ = run_cli(["export-fig2", "--sequence", "selective-n2",
                                "--what", "pseudopure"], capsys)
        assert code == 0
        first = out.strip().splitlines()[1].split(",")
        assert float(first[2]) == pytest.approx(1.0, abs=1e-9)  # |00> population


class TestDeterminism:
    def test_identical_runs_are_byte_identical(self, capsys):
        outs = []
        for _ in range(2):
            _, out, _ = run_cli(["simulate", "--sequence", "parallel-n3",
                                 "--tomography"], capsys)
            outs.append(out)
        assert outs[0] == outs[1]

    def test_cost_csv_is_byte_identical(self, capsys):
        outs = []
        for _ in range(2):
            _, out, _ = run_cli(["cost", "--model", "liquid", "--n-range", "1..8"], capsys)
            outs.append(out)
        assert outs[0] == outs[1]
