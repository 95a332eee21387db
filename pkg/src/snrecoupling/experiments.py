"""Desk-scale experiment drivers with machine-readable reports.

Every driver is deterministic given (parameters, seed) and returns an
ExperimentReport: per-item records, summary statistics and a pass flag for
the gates it declares.  Asymptotic statements are certified only through
exact finite-size identities and inequalities; unspecified polynomial
factors are reported as diagnostics, never asserted.
"""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from .combinatorics import (
    Partition,
    enumerate_partitions,
    log_sk_dimension,
    normalize,
    round_spectrum,
)
from .errors import ValidationError
from .quantumstates import (
    DensityMatrix,
    SpectraTuple,
    ghz_state,
    sample_hs_random,
    spectra_tuple,
    ssa_gap,
    weak_mono_gap,
)
from .recoupling import recoupling_tensor
from .schurweyl import (
    ball_sum_projector,
    projected_trace,
    trace_with_tensor_power,
)

SCHEMA_VERSION = 1
GATE_SLACK = 1e-9


@dataclass
class ExperimentReport:
    experiment: str
    parameters: dict
    items: list[dict] = field(default_factory=list)
    summary: dict = field(default_factory=dict)
    passed: bool = True
    schema_version: int = SCHEMA_VERSION

    def as_dict(self) -> dict:
        return {
            "experiment": self.experiment,
            "schema_version": self.schema_version,
            "parameters": self.parameters,
            "items": self.items,
            "summary": self.summary,
            "passed": self.passed,
        }

    def to_json_lines(self) -> str:
        lines = []
        header = {
            "record": "header",
            "experiment": self.experiment,
            "schema_version": self.schema_version,
            "parameters": self.parameters,
        }
        lines.append(json.dumps(header, sort_keys=True))
        for item in self.items:
            lines.append(json.dumps({"record": "item", **item}, sort_keys=True))
        lines.append(
            json.dumps(
                {"record": "summary", "passed": self.passed, **self.summary},
                sort_keys=True,
            )
        )
        return "\n".join(lines) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        fields: list[str] = []
        for item in self.items:
            for key in item:
                if key not in fields:
                    fields.append(key)
        writer = csv.DictWriter(buf, fieldnames=fields)
        writer.writeheader()
        for item in self.items:
            writer.writerow({k: item.get(k, "") for k in fields})
        return buf.getvalue()

    def write(self, path, fmt: str = "json") -> None:
        text = self.to_json_lines() if fmt == "json" else self.to_csv()
        Path(path).write_text(text)


def _json_float(x) -> float:
    return float(x)


def _parallel_map(fn: Callable, items: Sequence, threads: int = 1) -> list:
    """Order-preserving map, optionally over a thread pool."""
    if threads <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def _l1_distance(lam: Partition, r: np.ndarray) -> float:
    padded = normalize(lam, length=max(len(lam), r.size))
    rr = np.zeros(padded.size)
    rr[: r.size] = r
    return float(np.abs(padded - rr).sum())


def _ball(k: int, r: np.ndarray, delta: float, max_rows: int) -> list[Partition]:
    return [
        lam
        for lam in enumerate_partitions(k, max_rows)
        if _l1_distance(lam, r) <= delta
    ]


# ---------------------------------------------------------------------------

def cmd_overlap_certificate(rho: DensityMatrix, k: int, delta: float) -> ExperimentReport:
    """Finite-size certificate for the projector-overlap chain.

    Builds the delta-ball projector sums P~ and Q~ around the marginal
    spectra of rho, computes their overlap traces with rho^(x k), sums the
    recoupling norms over the ball tuples and asserts, on computed numbers,

        sum_ball hs  >=  |tr(P~ Q~ rho^k)|  >=  tr(P~ rho^k) - sqrt(1 - tr(Q~ rho^k)).
    """
    if delta < 0:
        raise ValidationError("delta must be non-negative")
    if len(rho.dims) != 3:
        raise ValidationError("certificate needs a tripartite state")
    a, b, c = rho.dims
    spectra = spectra_tuple(rho)

    balls = {
        "alpha": _ball(k, spectra.r_a, delta, a),
        "beta": _ball(k, spectra.r_b, delta, b),
        "gamma": _ball(k, spectra.r_c, delta, c),
        "mu": _ball(k, spectra.r_ab, delta, a * b),
        "nu": _ball(k, spectra.r_bc, delta, b * c),
        "lam": _ball(k, spectra.r_abc, delta, a * b * c),
    }

    s_a = ball_sum_projector(balls["alpha"], rho.dims, k, "A")
    s_b = ball_sum_projector(balls["beta"], rho.dims, k, "B")
    s_c = ball_sum_projector(balls["gamma"], rho.dims, k, "C")
    s_m = ball_sum_projector(balls["mu"], rho.dims, k, "AB")
    s_n = ball_sum_projector(balls["nu"], rho.dims, k, "BC")
    s_l = ball_sum_projector(balls["lam"], rho.dims, k, "ABC")

    abc = s_a @ s_b
    abc = abc @ s_c
    q_delta = abc @ s_m
    q_delta = q_delta @ s_c
    q_delta = q_delta @ s_l
    p_delta = abc @ (s_a @ s_n)
    p_delta = p_delta @ s_l
    del abc, s_a, s_b, s_c, s_m, s_n

    t_p = trace_with_tensor_power(p_delta, rho.matrix, k).real
    t_q = trace_with_tensor_power(q_delta, rho.matrix, k).real
    t_pq = trace_with_tensor_power(p_delta @ q_delta, rho.matrix, k)
    del p_delta, q_delta, s_l

    items = []
    sum_hs = 0.0
    tuple_count = 0
    for alpha, beta, gamma, mu, nu, lam in product(
        balls["alpha"], balls["beta"], balls["gamma"],
        balls["mu"], balls["nu"], balls["lam"],
    ):
        tuple_count += 1
        hs = recoupling_tensor(alpha, beta, gamma, mu, nu, lam).hs
        if hs > 0:
            items.append(
                {
                    "alpha": list(alpha), "beta": list(beta), "gamma": list(gamma),
                    "mu": list(mu), "nu": list(nu), "lam": list(lam),
                    "hs": _json_float(hs),
                }
            )
            sum_hs += hs

    rhs = t_p - math.sqrt(max(0.0, 1.0 - t_q))
    chain_first = sum_hs >= abs(t_pq) - GATE_SLACK
    chain_second = abs(t_pq) >= rhs - GATE_SLACK
    report = ExperimentReport(
        experiment="overlap_certificate",
        parameters={"k": k, "delta": delta, "dims": list(rho.dims)},
        items=items,
        summary={
            "t_p": _json_float(t_p),
            "t_q": _json_float(t_q),
            "t_pq_abs": _json_float(abs(t_pq)),
            "sum_hs": _json_float(sum_hs),
            "rhs_lower_bound": _json_float(rhs),
            "ball_tuple_count": tuple_count,
            "nonzero_tuple_count": len(items),
            "ball_sizes": {k_: len(v) for k_, v in balls.items()},
            "chain_first_holds": chain_first,
            "chain_second_holds": chain_second,
        },
        passed=chain_first and chain_second,
    )
    return report


def cmd_overlap_bound_fuzz(n: int, seed: int, threads: int = 1) -> ExperimentReport:
    """Fuzz |tr(PQ sigma)| >= tr(P sigma) - sqrt(tr((1-Q) sigma)).

    Random-subspace projectors P, Q and HS-random sigma on dimensions up
    to 16.
    """
    if n < 1:
        raise ValidationError("n must be >= 1")

    def trial(i: int) -> dict:
        rng = np.random.default_rng((seed, i))
        d = int(rng.integers(2, 17))
        sigma = sample_hs_random(d, rng).matrix

        def projector():
            rank = int(rng.integers(0, d + 1))
            if rank == 0:
                return np.zeros((d, d), dtype=complex)
            g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
            q_mat, _ = np.linalg.qr(g)
            v = q_mat[:, :rank]
            return v @ v.conj().T

        p, q = projector(), projector()
        lhs = abs(complex(np.trace(p @ q @ sigma)))
        rhs = float(np.trace(p @ sigma).real) - math.sqrt(
            max(0.0, float(np.trace((np.eye(d) - q) @ sigma).real))
        )
        return {"trial": i, "dim": d, "lhs": _json_float(lhs), "rhs": _json_float(rhs),
                "slack": _json_float(lhs - rhs)}

    items = _parallel_map(trial, range(n), threads)
    min_slack = min(item["slack"] for item in items)
    violations = sum(1 for item in items if item["slack"] < -GATE_SLACK)
    return ExperimentReport(
        experiment="overlap_bound_fuzz",
        parameters={"n": n, "seed": seed},
        items=items,
        summary={"min_slack": _json_float(min_slack), "violations": violations},
        passed=violations == 0,
    )


def cmd_spectrum_estimation(
    rho: DensityMatrix, k_max: int, delta: float = 0.3, tail_bound: float = 1e-3
) -> ExperimentReport:
    """Concentration of tr(P_lam rho^(x k)) around the spectrum of rho.

    Gates: (a) the tail mass outside the delta-ball is below ``tail_bound``
    at k_max, with the first k from which it never increases reported;
    (b) along every diagram sequence obtained by growing the first row on
    fixed lower rows, the rate diagnostic log(trace) + k * dist^2 / 2 has
    non-increasing increments over the last 10 k values.
    """
    if len(rho.dims) != 1:
        raise ValidationError("spectrum estimation needs a single-system state")
    d = rho.dims[0]
    if d > 4 or k_max > 30:
        raise ValidationError("supported range is d <= 4, k_max <= 30")
    r = rho.spectrum()

    items = []
    traces: dict[tuple[int, Partition], float] = {}
    tails = []
    for k in range(1, k_max + 1):
        tail = 0.0
        for lam in enumerate_partitions(k, d):
            tr = projected_trace(lam, rho, k)
            dist = _l1_distance(lam, r)
            traces[(k, lam)] = tr
            items.append(
                {
                    "k": k,
                    "lam": list(lam),
                    "trace": _json_float(tr),
                    "l1_dist": _json_float(dist),
                    "gaussian_bound": _json_float(math.exp(-k * dist**2 / 2)),
                }
            )
            if dist > delta:
                tail += tr
        tails.append(tail)

    k0 = k_max
    for start in range(len(tails)):
        if all(tails[i + 1] <= tails[i] + GATE_SLACK for i in range(start, len(tails) - 1)):
            k0 = start + 1
            break
    gate_tail = tails[-1] <= tail_bound

    window = range(max(1, k_max - 9), k_max + 1)
    directions = []
    gate_rate = True
    for lam_top in enumerate_partitions(k_max, d):
        rest = lam_top[1:]
        seq = []
        for k in window:
            first = k - sum(rest)
            if first < (rest[0] if rest else 1):
                continue
            lam = (first,) + rest
            tr = traces[(k, lam)]
            if tr <= 0:
                continue
            dist = _l1_distance(lam, r)
            seq.append((k, math.log(tr) + k * dist**2 / 2))
        incs = [seq[i + 1][1] - seq[i][1] for i in range(len(seq) - 1)]
        mono = all(incs[i + 1] <= incs[i] + GATE_SLACK for i in range(len(incs) - 1))
        directions.append(
            {"direction": list(lam_top), "points": len(seq), "monotone": mono}
        )
        if not mono:
            gate_rate = False

    return ExperimentReport(
        experiment="spectrum_estimation",
        parameters={"k_max": k_max, "delta": delta, "dims": list(rho.dims),
                    "tail_bound": tail_bound},
        items=items,
        summary={
            "tail_mass": [_json_float(t) for t in tails],
            "tail_at_k_max": _json_float(tails[-1]),
            "tail_nonincreasing_from": k0,
            "gate_tail": gate_tail,
            "rate_directions": directions,
            "gate_rate": gate_rate,
        },
        passed=gate_tail and gate_rate,
    )


def cmd_dimension_ratio(rho: DensityMatrix, k_values: Sequence[int]) -> ExperimentReport:
    """Dimension-ratio route to the strong-subadditivity gap.

    For each k the four relevant spectra are rounded to diagrams and
    g(k) = (1/k) log2(dim[mu] dim[nu] / (dim[beta] dim[lam])) is compared
    with the entropy gap H(AB) + H(BC) - H(B) - H(ABC); the deviation is
    certified against C log2(k)/k with C = 4 (ab + bc + b + abc).
    """
    if len(rho.dims) != 3:
        raise ValidationError("dimension ratio needs a tripartite state")
    a, b, c = rho.dims
    spectra = spectra_tuple(rho)
    gap = ssa_gap(rho)
    big_c = 4.0 * (a * b + b * c + b + a * b * c)

    def renorm(vec):
        v = np.asarray(vec, dtype=float)
        return v / v.sum()

    items = []
    ok = True
    for k in k_values:
        if k < 2:
            raise ValidationError("k values must be >= 2")
        mu = round_spectrum(renorm(spectra.r_ab), k)
        nu = round_spectrum(renorm(spectra.r_bc), k)
        beta = round_spectrum(renorm(spectra.r_b), k)
        lam = round_spectrum(renorm(spectra.r_abc), k)
        log2 = math.log(2.0)
        g_k = (
            log_sk_dimension(mu)
            + log_sk_dimension(nu)
            - log_sk_dimension(beta)
            - log_sk_dimension(lam)
        ) / (k * log2)
        err = abs(g_k - gap)
        bound = big_c * math.log2(k) / k
        items.append(
            {
                "k": k,
                "mu": list(mu), "nu": list(nu), "beta": list(beta), "lam": list(lam),
                "ratio": _json_float(g_k),
                "gap": _json_float(gap),
                "abs_error": _json_float(err),
                "error_bound": _json_float(bound),
            }
        )
        if err > bound:
            ok = False
    return ExperimentReport(
        experiment="dimension_ratio",
        parameters={"k_values": list(k_values), "dims": list(rho.dims)},
        items=items,
        summary={"ssa_gap": _json_float(gap), "bound_constant": _json_float(big_c)},
        passed=ok,
    )


def cmd_converse_probe(
    spectra: SpectraTuple,
    k_values: Sequence[int],
    samples: int,
    seed: int,
    dims: tuple[int, int, int] = (2, 2, 2),
) -> ExperimentReport:
    """Decay probe for spectra tuples, compatible or not with a joint state.

    Rounds the six target spectra to diagrams at each k, computes the exact
    recoupling norm, and samples states to maximize the Cauchy-Schwarz
    surrogate sqrt(tr(P~ sigma^k) tr(Q~ sigma^k)).  The decay sequence is a
    trend diagnostic, not a proof.
    """
    a, b, c = dims

    def renorm(vec):
        v = np.clip(np.asarray(vec, dtype=float), 0.0, None)
        return v / v.sum()

    items = []
    for k in k_values:
        if k > 4:
            raise ValidationError("dense-cap regime requires k <= 4")
        alpha = round_spectrum(renorm(spectra.r_a), k)
        beta = round_spectrum(renorm(spectra.r_b), k)
        gamma = round_spectrum(renorm(spectra.r_c), k)
        mu = round_spectrum(renorm(spectra.r_ab), k)
        nu = round_spectrum(renorm(spectra.r_bc), k)
        lam = round_spectrum(renorm(spectra.r_abc), k)
        hs = recoupling_tensor(alpha, beta, gamma, mu, nu, lam).hs

        surrogate = 0.0
        if samples > 0 and len(alpha) <= a and len(beta) <= b and len(gamma) <= c:
            s_a = ball_sum_projector([alpha], dims, k, "A")
            s_b = ball_sum_projector([beta], dims, k, "B")
            s_c = ball_sum_projector([gamma], dims, k, "C")
            s_l = ball_sum_projector([lam], dims, k, "ABC")
            abc_proj = s_a @ s_b @ s_c
            q_op = abc_proj @ ball_sum_projector([mu], dims, k, "AB") @ s_c @ s_l
            p_op = abc_proj @ (s_a @ ball_sum_projector([nu], dims, k, "BC")) @ s_l
            del abc_proj, s_a, s_b, s_c, s_l
            rng = np.random.default_rng((seed, k))
            for _ in range(samples):
                sigma = sample_hs_random(dims, rng)
                t_p = trace_with_tensor_power(p_op, sigma.matrix, k).real
                t_q = trace_with_tensor_power(q_op, sigma.matrix, k).real
                surrogate = max(
                    surrogate, math.sqrt(max(t_p, 0.0) * max(t_q, 0.0))
                )
            del p_op, q_op

        items.append(
            {
                "k": k,
                "alpha": list(alpha), "beta": list(beta), "gamma": list(gamma),
                "mu": list(mu), "nu": list(nu), "lam": list(lam),
                "hs": _json_float(hs),
                "surrogate_max": _json_float(surrogate),
            }
        )

    return ExperimentReport(
        experiment="converse_probe",
        parameters={
            "k_values": list(k_values), "samples": samples, "seed": seed,
            "dims": list(dims), "spectra": spectra.as_dict(),
        },
        items=items,
        summary={"hs_sequence": [item["hs"] for item in items]},
        passed=True,
    )


def cmd_ssa_scan(n: int, seed: int, threads: int = 1) -> ExperimentReport:
    """Entropy-inequality scan over HS-random tripartite states plus GHZ."""
    if n < 1:
        raise ValidationError("n must be >= 1")

    def trial(i: int) -> dict:
        rng = np.random.default_rng((seed, i))
        rho = sample_hs_random((2, 2, 2), rng)
        return {
            "trial": i,
            "ssa_gap": _json_float(ssa_gap(rho)),
            "weak_mono_gap": _json_float(weak_mono_gap(rho)),
        }

    items = _parallel_map(trial, range(n), threads)
    ghz = ghz_state()
    ghz_item = {
        "trial": "ghz_probe",
        "ssa_gap": _json_float(ssa_gap(ghz)),
        "weak_mono_gap": _json_float(weak_mono_gap(ghz)),
    }
    items.append(ghz_item)
    min_ssa = min(item["ssa_gap"] for item in items)
    min_weak = min(item["weak_mono_gap"] for item in items)
    passed = (
        min_ssa >= -GATE_SLACK
        and min_weak >= -GATE_SLACK
        and abs(ghz_item["ssa_gap"] - 1.0) <= GATE_SLACK
    )
    return ExperimentReport(
        experiment="ssa_scan",
        parameters={"n": n, "seed": seed},
        items=items,
        summary={
            "min_ssa_gap": _json_float(min_ssa),
            "min_weak_mono_gap": _json_float(min_weak),
            "ghz_ssa_gap": ghz_item["ssa_gap"],
        },
        passed=passed,
    )
