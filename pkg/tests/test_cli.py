import json

import numpy as np
import pytest

from snrecoupling.cli import main, parse_labels, parse_partition
from snrecoupling.errors import ValidationError
from snrecoupling.quantumstates import (
    DensityMatrix,
    maximally_mixed,
    save_state,
    state_to_json,
)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


class TestParsing:
    def test_partition(self):
        assert parse_partition("3,1") == (3, 1)
        with pytest.raises(ValidationError):
            parse_partition("1,3")
        with pytest.raises(ValidationError):
            parse_partition("a,b")

    def test_labels(self):
        labels = parse_labels("2,1/2,1/3/3/2,1/2,1", 6)
        assert labels[2] == (3,)
        with pytest.raises(ValidationError):
            parse_labels("2,1/3", 6)


class TestScalarCommands:
    def test_char(self, capsys):
        code, out = run(capsys, "char", "--lambda", "2,1", "--type", "3")
        assert code == 0
        assert out.strip() == "-1"

    def test_kron(self, capsys):
        code, out = run(capsys, "kron", "--alpha", "2,1", "--beta", "2,1",
                        "--lambda", "2,1")
        assert code == 0
        assert out.strip() == "1"

    def test_cg_dump(self, capsys, tmp_path):
        path = tmp_path / "cg.json"
        code, _ = run(capsys, "cg", "--alpha", "2,1", "--beta", "2,1",
                      "--lambda", "3", "--out", str(path))
        assert code == 0
        payload = json.loads(path.read_text())
        assert payload["count"] == 1
        mat = np.array(payload["maps"][0])
        assert mat.shape == (4, 1)

    def test_recoupling_block(self, capsys):
        code, out = run(capsys, "recoupling", "--labels", "3/3/3/3/3/3")
        assert code == 0
        payload = json.loads(out)
        assert payload["hs"] == pytest.approx(1.0)
        assert payload["block_shape"] == [1, 1, 1, 1]

    def test_scan_recoupling(self, capsys):
        code, out = run(capsys, "scan-recoupling", "--k", "2")
        assert code == 0
        lines = [json.loads(line) for line in out.strip().split("\n")]
        assert len(lines) == 2**6
        for line in lines:
            assert line["swap_bl_residual"] < 1e-8
            assert line["swap_ag_residual"] < 1e-8


class TestStateCommands:
    def test_sample_validate_roundtrip(self, capsys, tmp_path):
        path = tmp_path / "state.json"
        code, _ = run(capsys, "sample-state", "--dims", "2,2,2", "--seed", "7",
                      "--out", str(path))
        assert code == 0
        code, out = run(capsys, "validate-state", str(path))
        assert code == 0
        res = json.loads(out)
        assert res["valid"] and res["hermiticity"] < 1e-10

    def test_validate_rejects_bad_state(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        payload = state_to_json(maximally_mixed((2, 2)))
        payload["matrix"][0][0] = [0.9, 0.0]  # breaks the trace
        path.write_text(json.dumps(payload))
        code, out = run(capsys, "validate-state", str(path))
        assert code == 1
        assert not json.loads(out)["valid"]

    def test_spectrum_estimation_csv(self, capsys, tmp_path):
        path = tmp_path / "rho.json"
        save_state(DensityMatrix(dims=(2,), matrix=np.diag([0.9, 0.1])), path)
        _, out = run(capsys, "spectrum-estimation", "--rho", str(path),
                     "--k-max", "6", "--format", "csv")
        lines = out.strip().splitlines()
        assert lines[0].split(",")[:4] == ["k", "lam", "trace", "l1_dist"]
        assert len(lines) > 6

    def test_overlap(self, capsys, tmp_path):
        path = tmp_path / "rho.json"
        save_state(maximally_mixed((2, 2, 2)), path)
        code, out = run(capsys, "overlap", "--rho", str(path), "--k", "2",
                        "--labels", "2/2/2/2/2/2")
        assert code == 0
        payload = json.loads(out)
        assert 0 <= payload["t_p"] <= 1 and 0 <= payload["t_q"] <= 1

    def test_overlap_certificate(self, capsys, tmp_path):
        path = tmp_path / "rho.json"
        save_state(maximally_mixed((2, 2, 2)), path)
        code, out = run(capsys, "overlap-certificate", "--rho", str(path),
                        "--k", "2", "--delta", "2.0")
        assert code == 0
        summary = json.loads(out.strip().splitlines()[-1])
        assert summary["passed"]

    def test_ssa_scan_exit_code(self, capsys):
        code, out = run(capsys, "ssa-scan", "--n", "5", "--seed", "3")
        assert code == 0
        assert json.loads(out.strip().splitlines()[-1])["passed"]

    def test_overlap_bound_fuzz(self, capsys):
        code, out = run(capsys, "overlap-bound-fuzz", "--n", "20", "--seed", "1")
        assert code == 0

    def test_dimension_ratio(self, capsys, tmp_path):
        path = tmp_path / "ghz.json"
        v = np.zeros(8)
        v[0] = v[7] = 1 / np.sqrt(2)
        save_state(DensityMatrix(dims=(2, 2, 2), matrix=np.outer(v, v)), path)
        code, out = run(capsys, "dimension-ratio", "--rho", str(path),
                        "--k-list", "500,2000")
        assert code == 0

    def test_converse_probe(self, capsys, tmp_path):
        path = tmp_path / "spectra.json"
        path.write_text(json.dumps({
            "r_a": [0.5, 0.5], "r_b": [0.5, 0.5], "r_c": [1.0, 0.0],
            "r_ab": [0.25, 0.25, 0.25, 0.25], "r_bc": [0.5, 0.5, 0.0, 0.0],
            "r_abc": [1.0, 0, 0, 0, 0, 0, 0, 0],
        }))
        code, out = run(capsys, "converse-probe", "--spectra", str(path),
                        "--k-min", "2", "--k-max", "3", "--samples", "0")
        assert code == 0
        summary = json.loads(out.strip().splitlines()[-1])
        assert summary["hs_sequence"] == [0.0, 0.0]

    def test_error_exit_code(self, capsys):
        code = main(["char", "--lambda", "1,2", "--type", "3"])
        assert code == 2
