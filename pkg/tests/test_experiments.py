import json
import math

import numpy as np
import pytest

from snrecoupling.combinatorics import round_spectrum
from snrecoupling.errors import ValidationError
from snrecoupling.schurweyl import projected_trace
from snrecoupling.experiments import (
    cmd_converse_probe,
    cmd_dimension_ratio,
    cmd_overlap_bound_fuzz,
    cmd_spectrum_estimation,
    cmd_ssa_scan,
    cmd_overlap_certificate,
)
from snrecoupling.quantumstates import (
    DensityMatrix,
    SpectraTuple,
    ghz_state,
    maximally_mixed,
    pure_state,
    sample_hs_random,
    spectra_tuple,
)


def product_pure_tripartite():
    v = np.zeros(8)
    v[0] = 1.0
    return pure_state(v, (2, 2, 2))


class TestOverlapCertificate:
    def test_full_ball_covers_everything(self):
        rep = cmd_overlap_certificate(maximally_mixed((2, 2, 2)), k=2, delta=2.0)
        assert rep.summary["t_p"] == pytest.approx(1.0, abs=1e-10)
        assert rep.summary["t_q"] == pytest.approx(1.0, abs=1e-10)
        assert rep.summary["sum_hs"] >= 1.0
        assert rep.passed

    def test_product_pure_state_single_dominant_tuple(self):
        rep = cmd_overlap_certificate(product_pure_tripartite(), k=3, delta=0.5)
        assert rep.summary["nonzero_tuple_count"] == 1
        assert rep.summary["sum_hs"] >= rep.summary["rhs_lower_bound"] - 1e-9
        assert rep.summary["sum_hs"] == pytest.approx(1.0, abs=1e-9)
        assert rep.summary["t_q"] == pytest.approx(1.0, abs=1e-9)
        assert rep.passed

    def test_chain_holds_with_slack_k3(self):
        rep = cmd_overlap_certificate(maximally_mixed((2, 2, 2)), k=3, delta=1.0)
        s = rep.summary
        assert s["sum_hs"] >= s["t_pq_abs"] - 1e-9
        assert s["t_pq_abs"] >= s["rhs_lower_bound"] - 1e-9
        assert rep.passed

    def test_rejects_negative_delta(self):
        with pytest.raises(ValidationError):
            cmd_overlap_certificate(maximally_mixed((2, 2, 2)), k=2, delta=-0.1)

    def test_deterministic(self):
        a = cmd_overlap_certificate(maximally_mixed((2, 2, 2)), k=2, delta=1.0)
        b = cmd_overlap_certificate(maximally_mixed((2, 2, 2)), k=2, delta=1.0)
        assert a.to_json_lines() == b.to_json_lines()


class TestOverlapBoundFuzz:
    def test_no_violations(self):
        rep = cmd_overlap_bound_fuzz(500, seed=0)
        assert rep.summary["violations"] == 0
        assert rep.summary["min_slack"] >= -1e-9
        assert rep.passed

    def test_deterministic_and_thread_invariant(self):
        a = cmd_overlap_bound_fuzz(50, seed=5)
        b = cmd_overlap_bound_fuzz(50, seed=5, threads=2)
        assert a.to_json_lines() == b.to_json_lines()

    def test_rejects_bad_n(self):
        with pytest.raises(ValidationError):
            cmd_overlap_bound_fuzz(0, seed=0)

    def test_edge_cases_by_direct_evaluation(self):
        # P = Q = identity: 1 >= 1 - 0; Q = 0: 0 >= tr(P sigma) - 1
        sigma = sample_hs_random(4, seed=17).matrix
        eye = np.eye(4)
        lhs = abs(np.trace(eye @ eye @ sigma))
        rhs = np.trace(eye @ sigma).real - np.sqrt(
            max(0.0, np.trace((eye - eye) @ sigma).real)
        )
        assert lhs >= rhs - 1e-12
        zero = np.zeros((4, 4))
        lhs = abs(np.trace(eye @ zero @ sigma))
        rhs = np.trace(eye @ sigma).real - np.sqrt(
            max(0.0, np.trace((eye - zero) @ sigma).real)
        )
        assert lhs >= rhs - 1e-12


class TestSpectrumEstimation:
    def test_uniform_qubit_first_rows(self):
        rep = cmd_spectrum_estimation(maximally_mixed(2), k_max=2)
        rows = {(item["k"], tuple(item["lam"])): item["trace"] for item in rep.items}
        assert rows[(2, (2,))] == pytest.approx(3 / 4)
        assert rows[(2, (1, 1))] == pytest.approx(1 / 4)

    def test_biased_qubit_rows(self):
        rho = DensityMatrix(dims=(2,), matrix=np.diag([2 / 3, 1 / 3]))
        rep = cmd_spectrum_estimation(rho, k_max=2)
        rows = {(item["k"], tuple(item["lam"])): item["trace"] for item in rep.items}
        assert rows[(2, (2,))] == pytest.approx(7 / 9)
        assert rows[(2, (1, 1))] == pytest.approx(2 / 9)

    def test_rate_gate_on_biased_qubit(self):
        rho = DensityMatrix(dims=(2,), matrix=np.diag([0.9, 0.1]))
        rep = cmd_spectrum_estimation(rho, k_max=20)
        assert rep.summary["gate_rate"]
        for direction in rep.summary["rate_directions"]:
            assert direction["monotone"]

    def test_tail_reported_per_k(self):
        rho = DensityMatrix(dims=(2,), matrix=np.diag([0.9, 0.1]))
        rep = cmd_spectrum_estimation(rho, k_max=10)
        assert len(rep.summary["tail_mass"]) == 10
        # mass inside plus outside the ball accounts for everything
        for k in (5, 10):
            total = sum(item["trace"] for item in rep.items if item["k"] == k)
            assert total == pytest.approx(1.0, abs=1e-10)

    def test_rejects_unsupported_range(self):
        with pytest.raises(ValidationError):
            cmd_spectrum_estimation(maximally_mixed(5), k_max=5)
        with pytest.raises(ValidationError):
            cmd_spectrum_estimation(maximally_mixed(2), k_max=31)

    def test_far_diagram_below_polynomial_gaussian_envelope(self):
        # the diagram tracking the uniform direction at k = 30 sits at l1
        # distance 0.8 from spec (0.9, 0.1); its mass is far below the
        # Gaussian rate times a generous polynomial factor
        rho = DensityMatrix(dims=(2,), matrix=np.diag([0.9, 0.1]))
        k = 30
        lam = round_spectrum((0.5, 0.5), k)
        assert lam == (15, 15)
        tr = projected_trace(lam, rho, k)
        assert tr <= math.exp(-k * 0.8**2 / 2) * (k + 1) ** 6


class TestDimensionRatio:
    def test_maximally_mixed_matches_zero_gap(self):
        rep = cmd_dimension_ratio(maximally_mixed((2, 2, 2)), [64, 256])
        assert rep.summary["ssa_gap"] == pytest.approx(0.0, abs=1e-9)
        for item in rep.items:
            assert item["abs_error"] <= item["error_bound"]
        assert rep.passed

    def test_ghz_converges_to_unit_gap(self):
        rep = cmd_dimension_ratio(ghz_state(), [2000])
        item = rep.items[0]
        assert item["gap"] == pytest.approx(1.0, abs=1e-9)
        assert abs(item["ratio"] - 1.0) <= 0.05
        assert rep.passed

    def test_error_shrinks_when_k_doubles(self):
        rho = sample_hs_random((2, 2, 2), seed=3)
        ks = [250, 1000, 4000, 16000]
        rep = cmd_dimension_ratio(rho, ks)
        errors = [item["abs_error"] for item in rep.items]
        assert errors[-1] < errors[0]
        assert rep.passed

    def test_bound_is_monotone_on_grid(self):
        rep = cmd_dimension_ratio(ghz_state(), [250, 500, 1000, 2000])
        bounds = [item["error_bound"] for item in rep.items]
        assert all(b2 <= b1 for b1, b2 in zip(bounds, bounds[1:]))


class TestConverseProbe:
    def test_vanishing_multiplicity_tuple_gives_zero(self):
        spectra = SpectraTuple(
            r_a=np.array([0.5, 0.5]),
            r_b=np.array([0.5, 0.5]),
            r_c=np.array([1.0, 0.0]),
            r_ab=np.array([0.25] * 4),
            r_bc=np.array([0.5, 0.5, 0.0, 0.0]),
            r_abc=np.array([1.0] + [0.0] * 7),
        )
        rep = cmd_converse_probe(spectra, [2, 3, 4], samples=0, seed=0)
        assert rep.summary["hs_sequence"] == [0.0, 0.0, 0.0]

    def test_compatible_pure_state_tuple_stays_bounded(self):
        rng = np.random.default_rng(1)
        v = rng.standard_normal(8) + 1j * rng.standard_normal(8)
        spectra = spectra_tuple(pure_state(v, (2, 2, 2)))
        rep = cmd_converse_probe(spectra, [2, 3, 4], samples=2, seed=0)
        assert all(h >= 0.99 for h in rep.summary["hs_sequence"])
        # the Cauchy-Schwarz surrogate is a genuine upper-bound witness
        for item in rep.items:
            assert item["surrogate_max"] <= 1.0 + 1e-9

    def test_perturbed_tuple_loses_compatibility_at_small_k(self):
        rng = np.random.default_rng(1)
        v = rng.standard_normal(8) + 1j * rng.standard_normal(8)
        s = spectra_tuple(pure_state(v, (2, 2, 2)))
        r_b = np.sort(np.clip(s.r_b + np.array([0.2, -0.2]), 0, 1))[::-1]
        perturbed = SpectraTuple(
            r_a=s.r_a, r_b=r_b / r_b.sum(), r_c=s.r_c,
            r_ab=s.r_ab, r_bc=s.r_bc, r_abc=s.r_abc,
        )
        rep = cmd_converse_probe(perturbed, [2, 3], samples=0, seed=0)
        assert rep.summary["hs_sequence"][0] == 0.0

    def test_rejects_large_k(self):
        spectra = spectra_tuple(maximally_mixed((2, 2, 2)))
        with pytest.raises(ValidationError):
            cmd_converse_probe(spectra, [5], samples=0, seed=0)


class TestSsaScan:
    def test_seeded_reproducibility(self):
        a = cmd_ssa_scan(10, seed=2)
        b = cmd_ssa_scan(10, seed=2)
        assert a.to_json_lines() == b.to_json_lines()

    def test_ghz_probe_included(self):
        rep = cmd_ssa_scan(5, seed=0)
        assert rep.summary["ghz_ssa_gap"] == pytest.approx(1.0, abs=1e-9)

    def test_no_violations(self):
        rep = cmd_ssa_scan(200, seed=11)
        assert rep.summary["min_ssa_gap"] >= -1e-9
        assert rep.summary["min_weak_mono_gap"] >= -1e-9
        assert rep.passed


class TestReportFormats:
    def test_json_lines_structure(self):
        rep = cmd_ssa_scan(3, seed=1)
        lines = rep.to_json_lines().strip().split("\n")
        header = json.loads(lines[0])
        summary = json.loads(lines[-1])
        assert header["record"] == "header"
        assert header["schema_version"] == 1
        assert summary["record"] == "summary"
        assert len(lines) == 2 + len(rep.items)

    def test_csv_has_item_columns(self):
        rep = cmd_ssa_scan(3, seed=1)
        csv_text = rep.to_csv()
        head = csv_text.splitlines()[0]
        assert "ssa_gap" in head and "weak_mono_gap" in head

    def test_write_both_formats(self, tmp_path):
        rep = cmd_overlap_bound_fuzz(5, seed=0)
        rep.write(tmp_path / "r.jsonl", "json")
        rep.write(tmp_path / "r.csv", "csv")
        assert (tmp_path / "r.jsonl").read_text().startswith("{")
        assert "slack" in (tmp_path / "r.csv").read_text()
