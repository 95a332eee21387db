"""Concrete tensor-power realization: permutation actions, isotypic projectors,
cycle-type projected traces and the tripartite projector route to recoupling
norms.

Index convention (global): a vector on (C^{abc})^(x k) is indexed by per-copy
digit groups, copy slowest, subsystems ordered A, B, C inside each copy.
Projectors on subsystem groups (e.g. the AB pairs of every copy) are built by
permuting exactly the digits of those subsystems across copies.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .combinatorics import (
    Partition,
    Permutation,
    all_permutations,
    check_partition,
    conjugacy_classes,
    perm_cycle_type,
    perm_inverse,
    sk_dimension,
    weyl_dimension,
)
from .errors import ResourceLimitError, ValidationError
from .quantumstates import DensityMatrix
from .repsym import character
from .tensorlinalg import hermitian_eigensystem, hs_norm, op_norm

DENSE_CAP = 4096
IMPLICIT_CAP = 1_000_000


def apply_permutation(perm: Permutation, vec: np.ndarray, d: int, k: int) -> np.ndarray:
    """Permute the k tensor factors of a vector of length d**k, matrix-free."""
    vec = np.asarray(vec)
    if vec.size != d**k:
        raise ValidationError(f"vector length {vec.size} != {d}**{k}")
    if sorted(perm) != list(range(k)):
        raise ValidationError(f"not a permutation of 0..{k - 1}: {perm}")
    inv = perm_inverse(perm)
    return vec.reshape((d,) * k).transpose(inv).reshape(-1)


def permutation_index_map(
    perm: Permutation, dims: Sequence[int], k: int, active: Sequence[bool]
) -> np.ndarray:
    """Index map y of the copy permutation acting on the active subsystems.

    The unitary U(perm) maps basis state x to basis state y[x]; inactive
    subsystem digits stay with their copy.
    """
    dims = tuple(int(d) for d in dims)
    n_sub = len(dims)
    total = int(np.prod(dims)) ** k
    digits = np.empty((k, n_sub, total), dtype=np.int64)
    rest = np.arange(total, dtype=np.int64)
    # copy slowest, inside a copy the subsystem order of `dims`
    for t in range(k):
        for s in range(n_sub):
            radix_rest = int(np.prod(dims[s + 1:])) * int(np.prod(dims)) ** (k - 1 - t)
            digits[t, s] = rest // radix_rest
            rest = rest % radix_rest
    inv = perm_inverse(perm)
    out_digits = np.empty_like(digits)
    for t in range(k):
        for s in range(n_sub):
            out_digits[t, s] = digits[inv[t], s] if active[s] else digits[t, s]
    y = np.zeros(total, dtype=np.int64)
    for t in range(k):
        for s in range(n_sub):
            radix_rest = int(np.prod(dims[s + 1:])) * int(np.prod(dims)) ** (k - 1 - t)
            y += out_digits[t, s] * radix_rest
    return y


@dataclass(frozen=True)
class IsotypicProjector:
    """Projector onto the lam-isotypic component of (C^d)^(x k).

    Dense matrix when d**k <= DENSE_CAP, otherwise apply-to-vector only.
    """

    lam: Partition
    d: int
    k: int
    matrix: np.ndarray | None

    def apply(self, vec: np.ndarray) -> np.ndarray:
        if self.matrix is not None:
            return self.matrix @ vec
        if self.d**self.k > IMPLICIT_CAP:
            raise ResourceLimitError(
                f"implicit projector refused above d^k = {IMPLICIT_CAP}"
            )
        dim = sk_dimension(self.lam)
        out = np.zeros_like(np.asarray(vec, dtype=float if not np.iscomplexobj(vec) else complex))
        for perm in all_permutations(self.k):
            chi = character(self.lam, perm_cycle_type(perm))
            if chi:
                out = out + chi * apply_permutation(perm, vec, self.d, self.k)
        return dim / math.factorial(self.k) * out


def isotypic_projector(lam, d: int, k: int) -> IsotypicProjector:
    """Group-average projector (dim/k!) sum_pi chi(pi) U(pi)."""
    lam = check_partition(lam)
    if sum(lam) != k:
        raise ValidationError(f"{lam} is not a partition of {k}")
    if d**k > DENSE_CAP:
        if d**k > IMPLICIT_CAP:
            raise ResourceLimitError(f"d^k = {d**k} above implicit cap {IMPLICIT_CAP}")
        return IsotypicProjector(lam=lam, d=d, k=k, matrix=None)
    mat = group_projector_matrix(lam, (d,), k, (True,))
    return IsotypicProjector(lam=lam, d=d, k=k, matrix=mat)


_proj_cache: dict = {}
_proj_lock = threading.Lock()
_PROJ_CACHE_DIM_LIMIT = 1024


def group_projector_matrix(
    lam: Partition, dims: Sequence[int], k: int, active: Sequence[bool]
) -> np.ndarray:
    """Dense isotypic projector acting on the active subsystems of every copy.

    With dims = (d,) and active = (True,) this is the plain projector on
    (C^d)^(x k); with dims = (a, b, c) and active = (True, True, False) it is
    the projector of the AB pairs tensored with identity on the C digits.
    """
    lam = check_partition(lam)
    dims = tuple(int(x) for x in dims)
    active = tuple(bool(x) for x in active)
    key = (lam, dims, k, active)
    with _proj_lock:
        cached = _proj_cache.get(key)
    if cached is not None:
        return cached
    total = int(np.prod(dims)) ** k
    if total > DENSE_CAP:
        raise ResourceLimitError(f"dense projector dimension {total} above {DENSE_CAP}")
    dim = sk_dimension(lam)
    mat = np.zeros((total, total))
    cols = np.arange(total)
    for perm in all_permutations(k):
        chi = character(lam, perm_cycle_type(perm))
        if chi:
            y = permutation_index_map(perm, dims, k, active)
            np.add.at(mat, (y, cols), chi)
    mat *= dim / math.factorial(k)
    mat.setflags(write=False)
    if total <= _PROJ_CACHE_DIM_LIMIT:
        with _proj_lock:
            _proj_cache.setdefault(key, mat)
    return mat


def projected_trace(lam, rho: DensityMatrix | np.ndarray, k: int) -> float:
    """tr(P_lam rho^(x k)) via cycle types: one term per partition of k.

    Needs only the power traces tr(rho^j), so it scales to k ~ 30 where no
    projector could ever be materialized.
    """
    lam = check_partition(lam)
    if sum(lam) != k:
        raise ValidationError(f"{lam} is not a partition of {k}")
    mat = rho.matrix if isinstance(rho, DensityMatrix) else np.asarray(rho)
    vals, _ = hermitian_eigensystem(mat)
    power_traces = [float(np.sum(vals**j)) for j in range(k + 1)]
    total = 0.0
    for t, size in conjugacy_classes(k):
        chi = character(lam, t)
        if chi:
            prod = 1.0
            for part in t:
                prod *= power_traces[part]
            total += size * chi * prod
    return sk_dimension(lam) / math.factorial(k) * total


# ---------------------------------------------------------------------------
# tripartite projectors

GROUP_MASKS = {
    "A": (True, False, False),
    "B": (False, True, False),
    "C": (False, False, True),
    "AB": (True, True, False),
    "BC": (False, True, True),
    "ABC": (True, True, True),
}


def lifted_group_projector(lam, dims: tuple[int, int, int], k: int, group: str) -> np.ndarray:
    """Isotypic projector of one subsystem group, as a dense operator on
    (C^{abc})^(x k) in the global index convention."""
    dims = tuple(int(d) for d in dims)
    return group_projector_matrix(lam, dims, k, GROUP_MASKS[group])


def ball_sum_projector(
    labels: Sequence[Partition], dims: Sequence[int], k: int, group: str
) -> np.ndarray:
    """Sum of the lifted projectors of several labels, assembled in one pass.

    Uses the per-cycle-type summed coefficients, so the memory footprint is a
    single dense matrix regardless of how many labels the ball contains.
    """
    dims = tuple(int(d) for d in dims)
    active = GROUP_MASKS[group]
    total = int(np.prod(dims)) ** k
    if total > DENSE_CAP:
        raise ResourceLimitError(f"dense ball projector dimension {total} above {DENSE_CAP}")
    labels = [check_partition(l) for l in labels]
    coeff = {}
    for t, _ in conjugacy_classes(k):
        coeff[t] = sum(sk_dimension(l) * character(l, t) for l in labels) / math.factorial(k)
    mat = np.zeros((total, total))
    cols = np.arange(total)
    for perm in all_permutations(k):
        c = coeff[perm_cycle_type(perm)]
        if c:
            y = permutation_index_map(perm, dims, k, active)
            np.add.at(mat, (y, cols), c)
    return mat


class TripartiteProjectors(NamedTuple):
    p_tilde: np.ndarray
    q_tilde: np.ndarray


def tripartite_q(alpha, beta, gamma, mu, lam, dims: tuple[int, int, int], k: int) -> np.ndarray:
    """(P_alpha (x) P_beta (x) P_gamma)(P_mu (x) P_gamma) P_lam, dense."""
    pa = lifted_group_projector(alpha, dims, k, "A")
    pb = lifted_group_projector(beta, dims, k, "B")
    pc = lifted_group_projector(gamma, dims, k, "C")
    pm = lifted_group_projector(mu, dims, k, "AB")
    pl = lifted_group_projector(lam, dims, k, "ABC")
    return (pa @ pb @ pc) @ (pm @ pc) @ pl


def tripartite_p(alpha, beta, gamma, nu, lam, dims: tuple[int, int, int], k: int) -> np.ndarray:
    """(P_alpha (x) P_beta (x) P_gamma)(P_alpha (x) P_nu) P_lam, dense."""
    pa = lifted_group_projector(alpha, dims, k, "A")
    pb = lifted_group_projector(beta, dims, k, "B")
    pc = lifted_group_projector(gamma, dims, k, "C")
    pn = lifted_group_projector(nu, dims, k, "BC")
    pl = lifted_group_projector(lam, dims, k, "ABC")
    return (pa @ pb @ pc) @ (pa @ pn) @ pl


def tripartite_projectors(
    alpha, beta, gamma, mu, nu, lam, dims: tuple[int, int, int], k: int
) -> TripartiteProjectors:
    return TripartiteProjectors(
        p_tilde=tripartite_p(alpha, beta, gamma, nu, lam, dims, k),
        q_tilde=tripartite_q(alpha, beta, gamma, mu, lam, dims, k),
    )


class SchurWeylNorm(NamedTuple):
    hs: float
    op: float


def hs_norm_via_schurweyl(
    alpha, beta, gamma, mu, nu, lam, dims: tuple[int, int, int], k: int
) -> SchurWeylNorm:
    """Independent route to the recoupling HS norm through P~ Q~.

    The product P~ Q~ equals an identity of dimension
    dim[lam] * dim V^a_alpha * dim V^b_beta * dim V^c_gamma tensored with the
    recoupling block, so dividing its HS norm by the square root of that
    dimension recovers the block's norm.  Also returns op_norm(P~ Q~) for
    the norm sandwich.
    """
    labels = tuple(map(check_partition, (alpha, beta, gamma, mu, nu, lam)))
    alpha, beta, gamma, mu, nu, lam = labels
    a, b, c = dims
    if len(alpha) > a or len(beta) > b or len(gamma) > c or len(lam) > a * b * c:
        raise ValidationError(
            "row counts must fit the local dimensions for the dense route"
        )
    pq = tripartite_p(alpha, beta, gamma, nu, lam, dims, k) @ tripartite_q(
        alpha, beta, gamma, mu, lam, dims, k
    )
    raw_hs = hs_norm(pq)
    raw_op = op_norm(pq)
    factor = (
        sk_dimension(lam)
        * weyl_dimension(alpha, a)
        * weyl_dimension(beta, b)
        * weyl_dimension(gamma, c)
    )
    if factor == 0:
        if raw_hs > 1e-9:
            raise AssertionError(
                f"zero identity factor but nonzero norm {raw_hs:.3e} for {labels}"
            )
        return SchurWeylNorm(hs=0.0, op=raw_op)
    return SchurWeylNorm(hs=raw_hs / math.sqrt(factor), op=raw_op)


class OverlapTraces(NamedTuple):
    t_pq: complex
    t_p: float
    t_q: float


def trace_with_tensor_power(mat: np.ndarray, rho: np.ndarray, k: int) -> complex:
    """tr(M rho^(x k)) without materializing rho^(x k)."""
    d = rho.shape[0]
    if mat.shape != (d**k, d**k):
        raise ValidationError(f"operator shape {mat.shape} != ({d**k}, {d**k})")
    tens = mat.reshape((d,) * (2 * k))
    out_idx = list(range(k))
    in_idx = list(range(k, 2 * k))
    operands = [tens, out_idx + in_idx]
    for t in range(k):
        operands.extend([rho, [in_idx[t], out_idx[t]]])
    return complex(np.einsum(*operands, optimize=True))


def overlap_trace(p_tilde: np.ndarray, q_tilde: np.ndarray, rho: DensityMatrix, k: int) -> OverlapTraces:
    """tr(P~ Q~ rho^(x k)) plus the two marginal traces."""
    t_pq = trace_with_tensor_power(p_tilde @ q_tilde, rho.matrix, k)
    t_p = trace_with_tensor_power(p_tilde, rho.matrix, k).real
    t_q = trace_with_tensor_power(q_tilde, rho.matrix, k).real
    return OverlapTraces(t_pq=t_pq, t_p=t_p, t_q=t_q)
