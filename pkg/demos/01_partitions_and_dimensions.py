"""Young diagrams, their two dimensions, and spectrum rounding.

Every irreducible representation of the symmetric group S_k is labelled by a
partition of k.  This script walks through the basic bookkeeping: enumerating
diagrams, hook-length dimensions, the dual dimensions under Schur-Weyl
duality, and the largest-remainder rounding that turns a probability vector
into a nearby diagram.
"""

import math

from snrecoupling.combinatorics import (
    enumerate_partitions,
    log_sk_dimension,
    normalize,
    round_spectrum,
    sk_dimension,
    weyl_dimension,
)

k = 5
print(f"partitions of {k} (reverse lexicographic):")
for lam in enumerate_partitions(k):
    print(f"  {lam}: dim[lam] = {sk_dimension(lam)}, "
          f"dim V^2 = {weyl_dimension(lam, 2)}, dim V^3 = {weyl_dimension(lam, 3)}")

total = sum(sk_dimension(lam) ** 2 for lam in enumerate_partitions(k))
print(f"\nsum of dim^2 = {total} = {k}! = {math.factorial(k)}")

for d in (2, 3):
    total = sum(sk_dimension(l) * weyl_dimension(l, d) for l in enumerate_partitions(k))
    print(f"sum of dim[lam] * dim V^{d}_lam = {total} = {d}^{k} = {d**k}")

print("\nnormalized diagrams are probability vectors:")
lam = (3, 2)
print(f"  normalize({lam}) = {normalize(lam)}")

print("\nrounding a spectrum to a diagram (largest remainder):")
for r, kk in [((0.6, 0.4), 5), ((0.5, 0.3, 0.2), 10), ((0.9, 0.1), 30)]:
    lam = round_spectrum(r, kk)
    print(f"  round({r}, k={kk}) = {lam}, normalized back = {normalize(lam)}")

print("\nlog-domain dimensions stay finite far beyond exact floats:")
big = (1000, 1000)
print(f"  ln dim[{big}] = {log_sk_dimension(big):.3f}"
      f"  (that is about 2^{log_sk_dimension(big) / math.log(2):.1f})")
