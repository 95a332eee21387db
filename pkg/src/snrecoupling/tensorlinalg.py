"""Dense linear algebra and tensor-index utilities shared by all modules.

Index convention, fixed globally: subsystems are ordered A, B, C within one
copy, copies are ordered 1..k, and the copy index is always the slowest.
``kron`` follows the row-major convention (left factor slowest), so nested
kron products reproduce exactly this layout.  All modules go through these
helpers instead of hand-rolled strides.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .errors import ValidationError

DEFAULT_RANK_RTOL = 1e-10


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.kron(a, b)


def hs_norm(a: np.ndarray) -> float:
    """Hilbert-Schmidt (Frobenius) norm, pairwise-summed."""
    a = np.asarray(a)
    return float(np.sqrt(np.sum(np.abs(a) ** 2)))


def op_norm(a: np.ndarray) -> float:
    """Largest singular value."""
    a = np.asarray(a)
    if a.size == 0:
        return 0.0
    return float(np.linalg.svd(a, compute_uv=False)[0])


def fix_vector_sign(v: np.ndarray) -> np.ndarray:
    """Deterministic phase: first entry of largest magnitude made positive real."""
    idx = int(np.argmax(np.abs(v)))
    pivot = v[idx]
    if pivot == 0:
        return v
    if np.iscomplexobj(v):
        return v * (np.conj(pivot) / abs(pivot))
    return v if pivot > 0 else -v


def orthonormal_nullspace(a: np.ndarray, rtol: float = DEFAULT_RANK_RTOL) -> list[np.ndarray]:
    """Orthonormal basis of the nullspace of ``a`` by SVD thresholding.

    Singular values at or below rtol * sigma_max count as zero.  Each basis
    vector gets the deterministic sign convention of ``fix_vector_sign``.
    """
    if rtol <= 0:
        raise ValidationError("rtol must be positive")
    a = np.asarray(a)
    if a.size == 0:
        n = a.shape[1] if a.ndim == 2 else 0
        return [fix_vector_sign(e) for e in np.eye(n)]
    _, s, vh = np.linalg.svd(a, full_matrices=True)
    cutoff = rtol * (s[0] if s.size else 0.0)
    rank = int(np.sum(s > cutoff))
    return [fix_vector_sign(np.conj(vh[i])) for i in range(rank, a.shape[1])]


def hermitian_eigensystem(h: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues sorted non-increasingly with matching orthonormal columns."""
    h = np.asarray(h)
    scale = hs_norm(h)
    if hs_norm(h - h.conj().T) > 1e-10 * max(scale, 1e-300):
        raise ValidationError("matrix is not Hermitian within tolerance")
    vals, vecs = np.linalg.eigh(h)
    order = np.argsort(vals, kind="stable")[::-1]
    return vals[order], vecs[:, order]


def tensor_shape(dims: Iterable[int]) -> tuple[int, ...]:
    shape = tuple(int(d) for d in dims)
    if not shape or any(d < 1 for d in shape):
        raise ValidationError(f"all tensor factors must be >= 1: {shape}")
    return shape


def partial_trace(m: np.ndarray, dims: Sequence[int], keep: Sequence[int]) -> np.ndarray:
    """Trace out all factors not listed in ``keep`` (indices into dims)."""
    dims = tensor_shape(dims)
    n = len(dims)
    keep = sorted(set(int(i) for i in keep))
    if keep and (keep[0] < 0 or keep[-1] >= n):
        raise ValidationError(f"keep indices {keep} out of range for {n} factors")
    total = int(np.prod(dims))
    m = np.asarray(m)
    if m.shape != (total, total):
        raise ValidationError(f"matrix shape {m.shape} does not match dims {dims}")
    t = m.reshape(dims + dims)
    # einsum with integer subscripts: kept row/col axes stay distinct,
    # traced axes share one index between row and col.
    row = list(range(n))
    col = [n + i if i in keep else i for i in range(n)]
    out = [i for i in keep] + [n + i for i in keep]
    reduced = np.einsum(t, row + col, out)
    kept_dim = int(np.prod([dims[i] for i in keep])) if keep else 1
    return reduced.reshape(kept_dim, kept_dim)
