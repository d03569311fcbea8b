"""Tests for the command-line interface."""

import json
import subprocess
import sys

import numpy as np
import pytest

from qmetric import cli, io, states
from qmetric.cases import example1_states, example2_channel, example2_states


@pytest.fixture
def ex1_files(tmp_path):
    a, b = example1_states()
    pa, pb = tmp_path / "a.json", tmp_path / "b.json"
    io.save_state(pa, a)
    io.save_state(pb, b)
    return str(pa), str(pb)


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


class TestMetric:
    def test_g_of_identical(self, ex1_files, capsys):
        code, out, _ = run(["metric", "--measure", "G", ex1_files[0], ex1_files[0]], capsys)
        assert code == 0
        assert json.loads(out)["value"] == pytest.approx(1.0, abs=1e-12)

    def test_dg_example1(self, ex1_files, capsys):
        code, out, _ = run(["metric", "--measure", "Dg", *ex1_files], capsys)
        rep = json.loads(out)
        assert code == 0
        assert rep["value"] == pytest.approx(0.5, abs=1e-6)
        assert io.state_from_json(rep["witness"]).dim == 4
        assert {"restarts", "iterations", "residual", "branch"} <= set(rep["diagnostics"])

    def test_dpg_example1(self, ex1_files, capsys):
        code, out, _ = run(["metric", "--measure", "Dpg", *ex1_files], capsys)
        assert json.loads(out)["value"] == pytest.approx(0.5, abs=1e-12)

    @pytest.mark.parametrize("measure", ["F", "A", "B", "C", "Dtr"])
    def test_scalar_measures(self, measure, ex1_files, capsys):
        code, out, _ = run(["metric", "--measure", measure, *ex1_files], capsys)
        assert code == 0 and "value" in json.loads(out)

    def test_invalid_state_exit_2(self, tmp_path, ex1_files, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps({"dim": 2, "matrix": [[[1.2, 0], [0, 0]], [[0, 0], [-0.2, 0]]]}))
        code, out, err = run(["metric", "--measure", "F", str(bad), str(bad)], capsys)
        assert code == 2
        assert out == ""
        assert "NotPSD" in err

    def test_dim_mismatch_exit_2(self, tmp_path, ex1_files, capsys):
        q = tmp_path / "q.json"
        io.save_state(q, states.maximally_mixed(2))
        code, out, err = run(["metric", "--measure", "G", str(q), ex1_files[0]], capsys)
        assert code == 2 and "DimMismatch" in err

    def test_twelve_significant_digits(self, ex1_files, capsys):
        _, out, _ = run(["metric", "--measure", "C", *ex1_files], capsys)
        assert json.loads(out)["value"] == float(f"{np.sqrt(0.25):.12g}")
        _, out, _ = run(["metric", "--measure", "A", *ex1_files], capsys)
        text = out.split('"value": ')[1].split()[0]
        assert len(text.replace(".", "").lstrip("0")) <= 12


class TestRandomState:
    def test_byte_identical(self, tmp_path, capsys):
        p1, p2 = tmp_path / "1.json", tmp_path / "2.json"
        for p in (p1, p2):
            assert run(["random-state", "--dim", "3", "--rank", "2", "--seed", "5", "--out", str(p)], capsys)[0] == 0
        assert p1.read_bytes() == p2.read_bytes()

    def test_pure(self, tmp_path, capsys):
        p = tmp_path / "s.json"
        run(["random-state", "--dim", "2", "--rank", "1", "--seed", "1", "--out", str(p)], capsys)
        assert states.purity(io.load_state(p)) == pytest.approx(1.0, abs=1e-12)

    def test_full_rank(self, tmp_path, capsys):
        p = tmp_path / "s.json"
        run(["random-state", "--dim", "4", "--rank", "4", "--seed", "1", "--out", str(p)], capsys)
        assert np.linalg.eigvalsh(io.load_state(p).matrix).min() > 1e-8

    def test_bad_rank(self, tmp_path, capsys):
        code, _, err = run(["random-state", "--dim", "2", "--rank", "3", "--seed", "1",
                            "--out", str(tmp_path / "s.json")], capsys)
        assert code == 2 and err


class TestApplyChannel:
    def test_example2(self, tmp_path, capsys):
        c, s, o = tmp_path / "c.json", tmp_path / "s.json", tmp_path / "o.json"
        io.save_channel(c, example2_channel())
        io.save_state(s, example2_states()[0])
        code, _, _ = run(["apply-channel", "--channel", str(c), "--state", str(s), "--out", str(o)], capsys)
        assert code == 0
        np.testing.assert_array_equal(io.load_state(o).matrix, np.diag([0, 1, 0, 0]))

    def test_bad_channel(self, tmp_path, capsys):
        c, s = tmp_path / "c.json", tmp_path / "s.json"
        c.write_text(json.dumps({"in_dim": 2, "out_dim": 2, "kraus": [io.encode_matrix(0.5 * np.eye(2))]}))
        io.save_state(s, states.maximally_mixed(2))
        code, _, err = run(["apply-channel", "--channel", str(c), "--state", str(s)], capsys)
        assert code == 2 and "residual" in err


class TestReproduce:
    def rows(self, capsys, ident):
        code, out, _ = run(["reproduce", "--id", ident], capsys)
        assert code == 0
        return {r["quantity"]: r for r in json.loads(out)["rows"]}

    def test_ex1(self, capsys):
        rows = self.rows(capsys, "ex1")
        assert rows["Dg"]["computed"] == pytest.approx(0.5, abs=1e-6)
        assert rows["bound"]["computed"] == pytest.approx(0.612372435696, abs=1e-9)
        assert rows["bound - Dg"]["computed"] > 0.11

    def test_ex2(self, capsys):
        rows = self.rows(capsys, "ex2")
        assert rows["G before"]["computed"] == 0.5
        assert rows["G after"]["computed"] == 0.0
        assert rows["Dpg after"]["computed"] > rows["Dpg before"]["computed"]

    def test_prop1(self, capsys):
        (row,) = self.rows(capsys, "prop1").values()
        assert row["deviation"] <= 1e-9


class TestVerify:
    def test_subset_passes(self, tmp_path, capsys):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"samples_per_property": 3, "only": ["example1.regression",
                                                                       "metrics.g.squared_convexity"]}))
        out = tmp_path / "r.json"
        code, stdout, _ = run(["verify", "--config", str(cfg), "--out", str(out)], capsys)
        assert code == 0
        report = json.loads(out.read_text())
        assert report["summary"] == {"pass": 1, "fail": 0, "report_only": 1}

    def test_hard_fail_exit_1_and_report_written(self, tmp_path, capsys):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"only": ["channels.pg.contractivity"]}))
        out = tmp_path / "r.json"
        code, _, _ = run(["verify", "--config", str(cfg), "--out", str(out), "--quiet"], capsys)
        assert code == 1
        (verdict,) = json.loads(out.read_text())["verdicts"]
        assert verdict["status"] == "Fail" and verdict["counterexample"]

    def test_zero_samples_bad_config(self, tmp_path, capsys):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"samples_per_property": 0}))
        out = tmp_path / "r.json"
        code, _, err = run(["verify", "--config", str(cfg), "--out", str(out)], capsys)
        assert code == 2 and "BadConfig" in err
        assert not out.exists()

    def test_env_seed_override(self, tmp_path, capsys, monkeypatch):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"seed": 1, "samples_per_property": 2, "only": ["states.bloch.roundtrip"]}))
        out = tmp_path / "r.json"
        monkeypatch.setenv("QMETRIC_SEED", "42")
        run(["verify", "--config", str(cfg), "--out", str(out), "--quiet"], capsys)
        assert json.loads(out.read_text())["config"]["seed"] == 42


def test_module_entry_point(tmp_path):
    p = tmp_path / "s.json"
    proc = subprocess.run([sys.executable, "-m", "qmetric", "random-state", "--dim", "2", "--seed", "0",
                           "--out", str(p)], capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert io.load_state(p).dim == 2
