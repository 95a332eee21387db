"""Command-line interface.

Partitions are written as comma-separated rows ("3,1"); where several labels
are needed they are joined with "/" ("2,1/2,1/3").  Reports are emitted as
JSON lines by default, CSV with --format csv.  The exit code is 0 exactly
when every gate declared by the invoked command passes.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .combinatorics import check_partition, enumerate_partitions
from .errors import ValidationError
from .experiments import (
    ExperimentReport,
    cmd_converse_probe,
    cmd_dimension_ratio,
    cmd_overlap_bound_fuzz,
    cmd_spectrum_estimation,
    cmd_ssa_scan,
    cmd_overlap_certificate,
)
from .intertwiner import cg_isometries, kronecker_coefficient
from .quantumstates import (
    DensityMatrix,
    SpectraTuple,
    load_state,
    sample_hs_random,
    state_to_json,
)
from .recoupling import column_swap_check, column_swap_check_ag, recoupling_tensor
from .repsym import character
from .schurweyl import overlap_trace, tripartite_p, tripartite_q
from .tensorlinalg import hs_norm


def parse_partition(text: str):
    try:
        return check_partition([int(p) for p in text.split(",") if p.strip()])
    except ValueError as exc:
        raise ValidationError(f"cannot parse partition {text!r}: {exc}") from exc


def parse_labels(text: str, expected: int):
    pieces = [p for p in text.replace(";", "/").split("/") if p.strip()]
    if len(pieces) != expected:
        raise ValidationError(f"expected {expected} labels, got {len(pieces)} in {text!r}")
    return tuple(parse_partition(p) for p in pieces)


def _emit(text: str, out: str | None) -> None:
    if out and out != "-":
        Path(out).write_text(text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _emit_report(report: ExperimentReport, args) -> int:
    text = report.to_csv() if args.format == "csv" else report.to_json_lines()
    _emit(text, args.out)
    return 0 if report.passed else 1


def _common_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, default=0, help="deterministic seed")
    parser.add_argument("--out", default=None, help="output file ('-' for stdout)")
    parser.add_argument("--format", choices=("json", "csv"), default="json")
    parser.add_argument("--threads", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="snrecoupling", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("char", help="integer character value")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--type", dest="cycle_type", required=True)
    _common_flags(p)

    p = sub.add_parser("kron", help="Kronecker coefficient")
    p.add_argument("--alpha", required=True)
    p.add_argument("--beta", required=True)
    p.add_argument("--lambda", dest="lam", required=True)
    _common_flags(p)

    p = sub.add_parser("cg", help="intertwiner basis matrices")
    p.add_argument("--alpha", required=True)
    p.add_argument("--beta", required=True)
    p.add_argument("--lambda", dest="lam", required=True)
    _common_flags(p)

    p = sub.add_parser("recoupling", help="one recoupling block")
    p.add_argument("--labels", required=True,
                   help="six partitions alpha/beta/gamma/mu/nu/lambda")
    _common_flags(p)

    p = sub.add_parser("scan-recoupling", help="norms and swap residuals per tuple")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--max-rows", type=int, default=None)
    _common_flags(p)

    p = sub.add_parser("spectrum-estimation", help="concentration table")
    p.add_argument("--rho", required=True, help="state file (single system)")
    p.add_argument("--k-max", type=int, default=30)
    p.add_argument("--delta", type=float, default=0.3)
    _common_flags(p)
    p.set_defaults(format="csv")

    p = sub.add_parser("overlap", help="projector overlap traces")
    p.add_argument("--rho", required=True, help="tripartite state file")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--labels", required=True,
                   help="six partitions alpha/beta/gamma/mu/nu/lambda")
    _common_flags(p)

    p = sub.add_parser("overlap-certificate", help="projector-overlap chain certificate")
    p.add_argument("--rho", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--delta", type=float, required=True)
    _common_flags(p)

    p = sub.add_parser("overlap-bound-fuzz", help="projector inequality fuzz")
    p.add_argument("--n", type=int, default=10000)
    _common_flags(p)

    p = sub.add_parser("dimension-ratio", help="dimension-ratio route to the entropy gap")
    p.add_argument("--rho", required=True)
    p.add_argument("--k-list", required=True, help="comma-separated k values")
    _common_flags(p)

    p = sub.add_parser("converse-probe", help="decay probe for target spectra")
    p.add_argument("--spectra", required=True, help="JSON file with r_a..r_abc")
    p.add_argument("--k-min", type=int, default=2)
    p.add_argument("--k-max", type=int, default=4)
    p.add_argument("--samples", type=int, default=10)
    _common_flags(p)

    p = sub.add_parser("ssa-scan", help="entropy-inequality scan")
    p.add_argument("--n", type=int, default=1000)
    _common_flags(p)

    p = sub.add_parser("validate-state", help="check a state file and echo residuals")
    p.add_argument("state", help="state file")
    _common_flags(p)

    p = sub.add_parser("sample-state", help="write an HS-random state file")
    p.add_argument("--dims", required=True, help="comma-separated dimensions")
    _common_flags(p)

    return parser


def _cmd_char(args) -> int:
    value = character(parse_partition(args.lam), parse_partition(args.cycle_type))
    _emit(str(value), args.out)
    return 0


def _cmd_kron(args) -> int:
    value = kronecker_coefficient(
        parse_partition(args.alpha), parse_partition(args.beta), parse_partition(args.lam)
    )
    _emit(str(value), args.out)
    return 0


def _cmd_cg(args) -> int:
    basis = cg_isometries(
        parse_partition(args.alpha), parse_partition(args.beta), parse_partition(args.lam)
    )
    payload = {
        "alpha": list(basis.targets[0]),
        "beta": list(basis.targets[1]),
        "lambda": list(basis.source),
        "count": len(basis),
        "maps": [m.tolist() for m in basis.maps],
    }
    _emit(json.dumps(payload, sort_keys=True), args.out)
    return 0


def _cmd_recoupling(args) -> int:
    labels = parse_labels(args.labels, 6)
    tensor = recoupling_tensor(*labels)
    payload = {
        "labels": [list(l) for l in tensor.labels],
        "block_shape": list(tensor.block_shape),
        "entries": tensor.entries.tolist(),
        "hs": tensor.hs,
    }
    _emit(json.dumps(payload, sort_keys=True), args.out)
    return 0


def _cmd_scan_recoupling(args) -> int:
    from itertools import product

    parts = enumerate_partitions(args.k, args.max_rows)
    lines = []
    for labels in product(parts, repeat=6):
        tensor = recoupling_tensor(*labels)
        swap_bl = column_swap_check(*labels)
        swap_ag = column_swap_check_ag(*labels)
        lines.append(
            json.dumps(
                {
                    "labels": [list(l) for l in labels],
                    "hs": tensor.hs,
                    "swap_bl_residual": swap_bl.residual,
                    "swap_ag_residual": swap_ag.residual,
                },
                sort_keys=True,
            )
        )
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_spectrum_estimation(args) -> int:
    rho = load_state(args.rho)
    report = cmd_spectrum_estimation(rho, args.k_max, args.delta)
    if args.format == "csv":
        _emit(report.to_csv(), args.out)
    else:
        _emit(report.to_json_lines(), args.out)
    return 0 if report.passed else 1


def _cmd_overlap(args) -> int:
    rho = load_state(args.rho)
    if len(rho.dims) != 3:
        raise ValidationError("overlap needs a tripartite state")
    alpha, beta, gamma, mu, nu, lam = parse_labels(args.labels, 6)
    p_op = tripartite_p(alpha, beta, gamma, nu, lam, rho.dims, args.k)
    q_op = tripartite_q(alpha, beta, gamma, mu, lam, rho.dims, args.k)
    traces = overlap_trace(p_op, q_op, rho, args.k)
    payload = {
        "t_pq": [traces.t_pq.real, traces.t_pq.imag],
        "t_p": traces.t_p,
        "t_q": traces.t_q,
    }
    _emit(json.dumps(payload, sort_keys=True), args.out)
    return 0


def _cmd_overlap_certificate(args) -> int:
    return _emit_report(cmd_overlap_certificate(load_state(args.rho), args.k, args.delta), args)


def _cmd_fuzz(args) -> int:
    return _emit_report(cmd_overlap_bound_fuzz(args.n, args.seed, args.threads), args)


def _cmd_dimension_ratio(args) -> int:
    ks = [int(v) for v in args.k_list.split(",") if v.strip()]
    return _emit_report(cmd_dimension_ratio(load_state(args.rho), ks), args)


def _cmd_converse(args) -> int:
    payload = json.loads(Path(args.spectra).read_text())
    spectra = SpectraTuple(
        r_a=np.asarray(payload["r_a"], dtype=float),
        r_b=np.asarray(payload["r_b"], dtype=float),
        r_c=np.asarray(payload["r_c"], dtype=float),
        r_ab=np.asarray(payload["r_ab"], dtype=float),
        r_bc=np.asarray(payload["r_bc"], dtype=float),
        r_abc=np.asarray(payload["r_abc"], dtype=float),
    )
    ks = list(range(args.k_min, args.k_max + 1))
    return _emit_report(cmd_converse_probe(spectra, ks, args.samples, args.seed), args)


def _cmd_ssa_scan(args) -> int:
    return _emit_report(cmd_ssa_scan(args.n, args.seed, args.threads), args)


def _cmd_validate_state(args) -> int:
    payload = json.loads(Path(args.state).read_text())
    try:
        rho = DensityMatrix(
            dims=tuple(payload["dims"]),
            matrix=np.array(
                [[complex(e[0], e[1]) for e in row] for row in payload["matrix"]]
            ),
        )
    except ValidationError as exc:
        _emit(json.dumps({"valid": False, "reason": str(exc)}), args.out)
        return 1
    mat = rho.matrix
    residuals = {
        "valid": True,
        "hermiticity": hs_norm(mat - mat.conj().T),
        "trace_defect": abs(complex(np.trace(mat)) - 1.0),
        "min_eigenvalue": float(np.linalg.eigvalsh(mat)[0]),
    }
    _emit(json.dumps(residuals, sort_keys=True), args.out)
    return 0


def _cmd_sample_state(args) -> int:
    dims = tuple(int(d) for d in args.dims.split(","))
    rho = sample_hs_random(dims, args.seed)
    text = json.dumps(state_to_json(rho))
    _emit(text, args.out)
    return 0


_HANDLERS = {
    "char": _cmd_char,
    "kron": _cmd_kron,
    "cg": _cmd_cg,
    "recoupling": _cmd_recoupling,
    "scan-recoupling": _cmd_scan_recoupling,
    "spectrum-estimation": _cmd_spectrum_estimation,
    "overlap": _cmd_overlap,
    "overlap-certificate": _cmd_overlap_certificate,
    "overlap-bound-fuzz": _cmd_fuzz,
    "dimension-ratio": _cmd_dimension_ratio,
    "converse-probe": _cmd_converse,
    "ssa-scan": _cmd_ssa_scan,
    "validate-state": _cmd_validate_state,
    "sample-state": _cmd_sample_state,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
