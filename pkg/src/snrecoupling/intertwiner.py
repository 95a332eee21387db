"""Kronecker coefficients and explicit orthonormal intertwiner bases.

An intertwiner basis for the triple (alpha, beta, lam) is a list of real
matrices phi_i of shape (dim[alpha]*dim[beta], dim[lam]) commuting with the
group action and normalized so tr(phi_j^T phi_i) = dim[lam] * delta_ij.
Each phi_i is then an isometric embedding of [lam] into [alpha] (x) [beta].
Entries are convention-dependent (any orthonormal mixing of the multiplicity
space is equally valid); only norms, Gram matrices and block unitarity are
basis-independent.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
import numpy as np

from .combinatorics import (
    Partition,
    check_partition,
    conjugacy_classes,
    random_permutation,
    sk_dimension,
)
from .errors import ResourceLimitError, ValidationError
from .repsym import character, represent, young_orthogonal_rep
from .tensorlinalg import fix_vector_sign, kron, orthonormal_nullspace

DEFAULT_PRODUCT_CAP = 2_000_000
EQUIVARIANCE_TOL = 1e-9


@dataclass(frozen=True)
class IntertwinerBasis:
    source: Partition
    targets: tuple[Partition, Partition]
    maps: tuple[np.ndarray, ...]

    def __len__(self) -> int:
        return len(self.maps)


def _same_k(*parts: Partition) -> int:
    ks = {sum(p) for p in parts}
    if len(ks) != 1:
        raise ValidationError(f"partitions {parts} do not share one k")
    return ks.pop()


def kronecker_coefficient(alpha, beta, lam) -> int:
    """Multiplicity of [lam] inside [alpha] (x) [beta], exact integer."""
    alpha, beta, lam = map(check_partition, (alpha, beta, lam))
    k = _same_k(alpha, beta, lam)
    total = 0
    for t, size in conjugacy_classes(k):
        total += size * character(alpha, t) * character(beta, t) * character(lam, t)
    g, rem = divmod(total, math.factorial(k))
    assert rem == 0, "character sum must be divisible by k!"
    assert g >= 0
    return g


_cg_cache: dict[tuple[Partition, Partition, Partition], IntertwinerBasis] = {}
_cg_lock = threading.Lock()


def cg_isometries(alpha, beta, lam, product_cap: int = DEFAULT_PRODUCT_CAP) -> IntertwinerBasis:
    """Orthonormal intertwiner basis [lam] -> [alpha] (x) [beta].

    Solves the equivariance equations for the k-1 adjacent-transposition
    generators simultaneously (they generate S_k; a random full permutation
    is re-checked afterwards), orthonormalizes in the Hilbert-Schmidt inner
    product and rescales by sqrt(dim[lam]).
    """
    alpha, beta, lam = map(check_partition, (alpha, beta, lam))
    da, db, dl = sk_dimension(alpha), sk_dimension(beta), sk_dimension(lam)
    if da * db * dl > product_cap:
        raise ResourceLimitError(
            f"dim product {da * db * dl} for {(alpha, beta, lam)} exceeds cap {product_cap}"
        )
    key = (alpha, beta, lam)
    with _cg_lock:
        cached = _cg_cache.get(key)
    if cached is not None:
        return cached
    basis = _solve_cg(alpha, beta, lam)
    with _cg_lock:
        _cg_cache.setdefault(key, basis)
    return basis


def _solve_cg(alpha: Partition, beta: Partition, lam: Partition) -> IntertwinerBasis:
    k = _same_k(alpha, beta, lam)
    da, db, dl = sk_dimension(alpha), sk_dimension(beta), sk_dimension(lam)
    g = kronecker_coefficient(alpha, beta, lam)
    if g == 0:
        return IntertwinerBasis(source=lam, targets=(alpha, beta), maps=())

    rep_a = young_orthogonal_rep(alpha)
    rep_b = young_orthogonal_rep(beta)
    rep_l = young_orthogonal_rep(lam)

    # Nullspace of the stacked generator constraints, restricted one
    # generator at a time: cheaper than one big stacked system, same result.
    basis = np.eye(da * db * dl)
    for i in range(k - 1):
        gen_ab = kron(rep_a.generators[i], rep_b.generators[i])
        gen_l = rep_l.generators[i]
        images = np.empty((da * db * dl, basis.shape[1]))
        for col in range(basis.shape[1]):
            x = basis[:, col].reshape(da * db, dl)
            images[:, col] = (gen_ab @ x - x @ gen_l).reshape(-1)
        null = orthonormal_nullspace(images)
        if not null:
            basis = np.zeros((da * db * dl, 0))
            break
        basis = basis @ np.column_stack(null)
    count = basis.shape[1]
    assert count == g, f"solver found {count} intertwiners, characters say {g}"

    maps = []
    for col in range(count):
        vec = fix_vector_sign(basis[:, col])
        phi = math.sqrt(dl) * vec.reshape(da * db, dl)
        phi.setflags(write=False)
        maps.append(phi)

    _check_full_permutation(rep_a, rep_b, rep_l, maps, k)
    return IntertwinerBasis(source=lam, targets=(alpha, beta), maps=tuple(maps))


def _check_full_permutation(rep_a, rep_b, rep_l, maps, k) -> None:
    # generators suffice because they generate S_k; verify on one
    # non-trivial word to catch convention bugs early.
    rng = np.random.default_rng(k)
    perm = random_permutation(k, rng)
    big = kron(represent(rep_a, perm), represent(rep_b, perm))
    small = represent(rep_l, perm)
    for phi in maps:
        resid = np.abs(big @ phi - phi @ small).max()
        if resid > EQUIVARIANCE_TOL:
            raise AssertionError(f"equivariance violated for {perm}: {resid:.3e}")


def trivial_coupling(lam) -> np.ndarray:
    """Unit vector (1/sqrt(dim)) sum_e |e>|e> in [lam] (x) [lam]."""
    lam = check_partition(lam)
    d = sk_dimension(lam)
    vec = np.eye(d).reshape(-1) / math.sqrt(d)
    return vec


def bend_and_compare(alpha, beta, lam, tol: float = 1e-8) -> np.ndarray:
    """Unitary relating bent intertwiners to the straight basis.

    Bending turns each phi_i: [lam] -> [alpha] (x) [beta] into
    psi_i: [alpha] -> [lam] (x) [beta] with tr(psi_j^T psi_i) =
    dim[alpha] delta_ij; the returned g x g matrix U expresses psi_i in the
    basis cg_isometries(lam, beta, alpha).  Raises if the Gram matrix
    deviates from dim[alpha] * I (an index-convention bug) or if U fails to
    be unitary within tol.
    """
    alpha, beta, lam = map(check_partition, (alpha, beta, lam))
    da, db, dl = sk_dimension(alpha), sk_dimension(beta), sk_dimension(lam)
    source = cg_isometries(alpha, beta, lam)
    g = len(source)
    if g < 1:
        raise ValidationError(f"no intertwiners for {(alpha, beta, lam)}")

    psis = []
    for phi in source.maps:
        cube = phi.reshape(da, db, dl)
        psi = math.sqrt(da / dl) * cube.transpose(2, 1, 0).reshape(dl * db, da)
        psis.append(psi)

    gram = np.array([[np.trace(p.T @ q) for q in psis] for p in psis])
    gram_resid = np.abs(gram - da * np.eye(g)).max()
    if gram_resid > tol * da:
        raise AssertionError(
            f"bent Gram matrix deviates from dim[alpha]*I by {gram_resid:.3e}"
        )

    target = cg_isometries(lam, beta, alpha)
    assert len(target) == g
    u = np.array(
        [[np.trace(tgt.T @ psi) / da for tgt in target.maps] for psi in psis]
    )
    unitary_resid = np.abs(u @ u.conj().T - np.eye(g)).max()
    if unitary_resid > tol:
        raise AssertionError(f"bend comparison not unitary: {unitary_resid:.3e}")
    return u
