"""Partitions, standard tableaux, permutations and dimension formulas.

Partitions are plain tuples of non-increasing positive ints summing to k.
Permutations are tuples ``p`` of length k with ``p[i]`` the 0-indexed image
of ``i``; composition is ``(p * q)(i) = p(q(i))``.
"""

from __future__ import annotations

import math
from functools import lru_cache
from itertools import permutations as _itertools_permutations
from typing import NamedTuple, Sequence

import numpy as np

from .errors import ValidationError

Partition = tuple[int, ...]
Permutation = tuple[int, ...]


class CycleType(NamedTuple):
    parts: Partition
    size: int


def check_partition(rows: Sequence[int]) -> Partition:
    """Validate and canonicalize a partition given as a sequence of rows."""
    lam = tuple(int(r) for r in rows)
    if not lam:
        raise ValidationError("partition must have at least one row")
    if any(r <= 0 for r in lam):
        raise ValidationError(f"partition rows must be positive: {lam}")
    if any(lam[i] < lam[i + 1] for i in range(len(lam) - 1)):
        raise ValidationError(f"partition rows must be non-increasing: {lam}")
    return lam


def partition_weight(lam: Sequence[int]) -> int:
    return sum(lam)


@lru_cache(maxsize=None)
def enumerate_partitions(k: int, max_rows: int | None = None) -> tuple[Partition, ...]:
    """All partitions of k with at most max_rows rows, reverse-lexicographic."""
    if k < 1:
        raise ValidationError("k must be >= 1")
    rows_cap = k if max_rows is None else max_rows
    if rows_cap < 1:
        raise ValidationError("max_rows must be >= 1")

    out: list[Partition] = []

    def rec(remaining: int, largest: int, prefix: tuple[int, ...]) -> None:
        if remaining == 0:
            out.append(prefix)
            return
        if len(prefix) == rows_cap:
            return
        for part in range(min(remaining, largest), 0, -1):
            rec(remaining - part, part, prefix + (part,))

    rec(k, k, ())
    return tuple(out)


def conjugate_partition(lam: Sequence[int]) -> Partition:
    lam = check_partition(lam)
    return tuple(sum(1 for r in lam if r > j) for j in range(lam[0]))


def hook_lengths(lam: Sequence[int]) -> list[list[int]]:
    """Hook length of every cell, as a list of rows."""
    lam = check_partition(lam)
    conj = conjugate_partition(lam)
    return [
        [lam[i] - j + conj[j] - i - 1 for j in range(lam[i])]
        for i in range(len(lam))
    ]


def sk_dimension(lam: Sequence[int]) -> int:
    """Dimension of the irreducible S_k representation labelled by lam.

    Exact big-integer arithmetic; equals the number of standard tableaux.
    """
    return _sk_dimension(check_partition(lam))


@lru_cache(maxsize=None)
def _sk_dimension(lam: Partition) -> int:
    k = sum(lam)
    prod = 1
    for row in hook_lengths(lam):
        for h in row:
            prod *= h
    dim, rem = divmod(math.factorial(k), prod)
    assert rem == 0
    return dim


def log_sk_dimension(lam: Sequence[int]) -> float:
    """Natural log of sk_dimension, overflow-free for very large k."""
    lam = check_partition(lam)
    k = sum(lam)
    log_hooks = 0.0
    for row in hook_lengths(lam):
        for h in row:
            log_hooks += math.log(h)
    return math.lgamma(k + 1) - log_hooks


def weyl_dimension(lam: Sequence[int], d: int) -> int:
    """Dimension of the GL(d) multiplicity space of lam under Schur-Weyl.

    Counts semistandard tableaux of shape lam with entries in 1..d; zero
    exactly when lam has more than d rows.
    """
    return _weyl_dimension(check_partition(lam), int(d))


@lru_cache(maxsize=None)
def _weyl_dimension(lam: Partition, d: int) -> int:
    if d < 1:
        raise ValidationError("d must be >= 1")
    if len(lam) > d:
        return 0
    num = 1
    den = 1
    conj = conjugate_partition(lam)
    for i in range(len(lam)):
        for j in range(lam[i]):
            num *= d + j - i
            den *= lam[i] - j + conj[j] - i - 1
    dim, rem = divmod(num, den)
    assert rem == 0
    return dim


def normalize(lam: Sequence[int], length: int | None = None) -> np.ndarray:
    """Rows divided by k, zero-padded to the requested length."""
    lam = check_partition(lam)
    k = sum(lam)
    if length is None:
        length = len(lam)
    if length < len(lam):
        raise ValidationError(f"cannot pad {lam} to length {length}")
    vec = np.zeros(length)
    vec[: len(lam)] = np.asarray(lam, dtype=float) / k
    return vec


def round_spectrum(r: Sequence[float], k: int) -> Partition:
    """Round a non-increasing probability vector to a partition of k.

    Largest-remainder apportionment of k*r; ties prefer the larger
    remainder, then the earlier row.  The result is re-sorted so it is a
    valid partition even if apportionment breaks monotonicity.
    """
    r = np.asarray(r, dtype=float)
    if r.ndim != 1 or r.size == 0:
        raise ValidationError("spectrum must be a non-empty vector")
    if np.any(r < 0):
        raise ValidationError("spectrum entries must be non-negative")
    if np.any(np.diff(r) > 0):
        raise ValidationError("spectrum must be non-increasing")
    if abs(float(r.sum()) - 1.0) > 1e-12:
        raise ValidationError(f"spectrum must sum to 1, got {r.sum()!r}")
    target = r * k
    base = np.floor(target).astype(int)
    remainder = target - base
    deficit = k - int(base.sum())
    order = sorted(range(r.size), key=lambda i: (-remainder[i], i))
    for i in order[:deficit]:
        base[i] += 1
    rows = tuple(sorted((int(b) for b in base if b > 0), reverse=True))
    assert sum(rows) == k
    return rows


def class_size(cycle_type: Sequence[int]) -> int:
    """Number of permutations in S_k with the given cycle type (exact)."""
    parts = check_partition(cycle_type)
    k = sum(parts)
    centralizer = 1
    for j in set(parts):
        m = parts.count(j)
        centralizer *= j**m * math.factorial(m)
    size, rem = divmod(math.factorial(k), centralizer)
    assert rem == 0
    return size


@lru_cache(maxsize=None)
def conjugacy_classes(k: int) -> tuple[CycleType, ...]:
    """One entry per cycle type of S_k with its exact class size."""
    return tuple(CycleType(t, class_size(t)) for t in enumerate_partitions(k))


# ---------------------------------------------------------------------------
# standard tableaux

Tableau = tuple[tuple[int, ...], ...]


def _tableau_row_word(tab: Tableau) -> tuple[int, ...]:
    k = sum(len(row) for row in tab)
    word = [0] * k
    for i, row in enumerate(tab):
        for entry in row:
            word[entry - 1] = i
    return tuple(word)


def standard_tableaux(lam: Sequence[int]) -> tuple[Tableau, ...]:
    """All standard tableaux of shape lam, sorted by their row word."""
    return _standard_tableaux(check_partition(lam))


@lru_cache(maxsize=None)
def _standard_tableaux(lam: Partition) -> tuple[Tableau, ...]:
    k = sum(lam)

    results: list[Tableau] = []

    def rec(shape: list[int], cells: dict[tuple[int, int], int], n: int) -> None:
        if n == 0:
            tab = tuple(
                tuple(cells[(i, j)] for j in range(lam[i]))
                for i in range(len(lam))
            )
            results.append(tab)
            return
        # remove n from any outer corner of the current shape
        for i in range(len(shape)):
            if shape[i] > 0 and (i == len(shape) - 1 or shape[i] > shape[i + 1]):
                j = shape[i] - 1
                shape[i] -= 1
                cells[(i, j)] = n
                rec(shape, cells, n - 1)
                shape[i] += 1
                del cells[(i, j)]

    rec(list(lam), {}, k)
    results.sort(key=_tableau_row_word)
    return tuple(results)


def tableau_positions(tab: Tableau) -> dict[int, tuple[int, int]]:
    """Map each entry of a standard tableau to its (row, col) cell."""
    pos = {}
    for i, row in enumerate(tab):
        for j, entry in enumerate(row):
            pos[entry] = (i, j)
    return pos


# ---------------------------------------------------------------------------
# permutations

def identity_permutation(k: int) -> Permutation:
    return tuple(range(k))


def perm_compose(p: Permutation, q: Permutation) -> Permutation:
    """(p * q)(i) = p(q(i))."""
    return tuple(p[q[i]] for i in range(len(p)))


def perm_inverse(p: Permutation) -> Permutation:
    inv = [0] * len(p)
    for i, v in enumerate(p):
        inv[v] = i
    return tuple(inv)


def adjacent_transposition(k: int, i: int) -> Permutation:
    """s_i swapping i and i+1 (1-indexed, so positions i-1 and i)."""
    if not 1 <= i <= k - 1:
        raise ValidationError(f"generator index {i} out of range for k={k}")
    p = list(range(k))
    p[i - 1], p[i] = p[i], p[i - 1]
    return tuple(p)


def perm_cycle_type(p: Permutation) -> Partition:
    k = len(p)
    seen = [False] * k
    lengths = []
    for start in range(k):
        if seen[start]:
            continue
        length = 0
        i = start
        while not seen[i]:
            seen[i] = True
            i = p[i]
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths, reverse=True))


def adjacent_word(p: Permutation) -> list[int]:
    """Bubble-sort word: p = s_{w[-1]} ... s_{w[0]} with 1-indexed w."""
    work = list(p)
    word = []
    changed = True
    while changed:
        changed = False
        for j in range(len(work) - 1):
            if work[j] > work[j + 1]:
                work[j], work[j + 1] = work[j + 1], work[j]
                word.append(j + 1)
                changed = True
    return word


def all_permutations(k: int):
    """Iterate over S_k in lexicographic one-line order."""
    return _itertools_permutations(range(k))


def random_permutation(k: int, rng: np.random.Generator) -> Permutation:
    return tuple(int(v) for v in rng.permutation(k))
