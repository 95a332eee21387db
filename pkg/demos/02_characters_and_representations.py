"""Young's orthogonal form and exact characters.

The generator matrices of each irreducible representation are real,
symmetric and orthogonal; their entries come from axial distances in
standard tableaux.  Characters are computed independently by the
border-strip recursion, which lets us cross-check matrix traces against
exact integers.
"""

import numpy as np

from snrecoupling.combinatorics import (
    conjugacy_classes,
    enumerate_partitions,
    perm_cycle_type,
    random_permutation,
)
from snrecoupling.repsym import character, represent, young_orthogonal_rep

rep = young_orthogonal_rep((2, 1))
print("generators of the standard representation of S_3:")
for i, g in enumerate(rep.generators, start=1):
    print(f"  s_{i} =\n{np.round(g, 6)}")

a, b = rep.generators
print("\nbraid relation s1 s2 s1 = s2 s1 s2:",
      np.abs(a @ b @ a - b @ a @ b).max() < 1e-12)

print("\ncharacter table of S_4 (rows: diagrams, columns: cycle types):")
types = [t for t, _ in conjugacy_classes(4)]
print("        " + "  ".join(f"{str(t):>12}" for t in types))
for lam in enumerate_partitions(4):
    row = [character(lam, t) for t in types]
    print(f"{str(lam):>8}" + "  ".join(f"{v:>12}" for v in row))

print("\ncolumn orthogonality: sum_lam chi(t)^2 = k!/|class|")
for t, size in conjugacy_classes(4):
    total = sum(character(lam, t) ** 2 for lam in enumerate_partitions(4))
    print(f"  type {t}: {total} = {24 // size} * (24/{24 // size})"
          f" -> centralizer {24 // size}")

rng = np.random.default_rng(0)
print("\nmatrix traces reproduce the exact characters:")
for lam in enumerate_partitions(4):
    rep = young_orthogonal_rep(lam)
    pi = random_permutation(4, rng)
    tr = np.trace(represent(rep, pi))
    chi = character(lam, perm_cycle_type(pi))
    print(f"  {lam}: trace(rho({pi})) = {tr:+.6f}, character = {chi:+d}")
