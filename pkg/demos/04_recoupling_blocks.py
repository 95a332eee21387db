"""Recoupling blocks, their unitarity and the column-swap symmetry.

Coupling three representations in the two bracket orders gives two
orthonormal families of composite isometries; the recoupling tensor is
their overlap matrix.  Assembled over the middle labels it is exactly
unitary, which yields the basis-independent sum rule, and swapping columns
rescales the Hilbert-Schmidt norm by a ratio of dimensions.
"""

from itertools import product

import numpy as np

from snrecoupling.combinatorics import enumerate_partitions
from snrecoupling.intertwiner import kronecker_coefficient
from snrecoupling.recoupling import (
    column_swap_check,
    full_recoupling_unitary,
    recoupling_tensor,
)

lbl = (2, 1)
print("one block at k = 3, all labels (2,1), mu = nu = (3):")
tensor = recoupling_tensor(lbl, lbl, lbl, (3,), (3,), lbl)
print(f"  entries {tensor.entries.ravel()}, hs = {tensor.hs:.6f}")

print("\nthe full change-of-tree matrix for (alpha, beta, gamma, lam) all (2,1):")
u = full_recoupling_unitary(lbl, lbl, lbl, lbl)
print(f"  mu blocks: {u.mu_order}")
print(f"  nu blocks: {u.nu_order}")
print(f"  U =\n{np.round(u.matrix, 6)}")
print(f"  U^T U - I residual: {np.abs(u.matrix.T @ u.matrix - np.eye(3)).max():.2e}")

print("\nsum rule: total squared norm equals the multiplicity count")
total = sum(
    recoupling_tensor(lbl, lbl, lbl, mu, nu, lbl).hs ** 2
    for mu in enumerate_partitions(3)
    for nu in enumerate_partitions(3)
)
count = sum(
    kronecker_coefficient(lbl, lbl, mu) * kronecker_coefficient(mu, lbl, lbl)
    for mu in enumerate_partitions(3)
)
print(f"  sum hs^2 = {total:.10f} vs sum g*g = {count}")

print("\ncolumn swap: norm ratio is a pure dimension factor")
for labels in product(enumerate_partitions(3), repeat=6):
    r = column_swap_check(*labels)
    if r.lhs_hs > 1e-9 and abs(r.predicted_ratio - 1.0) > 1e-9:
        alpha, beta, gamma, mu, nu, lam = labels
        print(f"  labels {labels}:")
        print(f"    lhs = {r.lhs_hs:.6f}, rhs = {r.rhs_hs:.6f}, "
              f"sqrt(dim{mu} dim{nu} / (dim{beta} dim{lam})) = {r.predicted_ratio:.6f}")
        print(f"    residual = {r.residual:.2e}")
        break
