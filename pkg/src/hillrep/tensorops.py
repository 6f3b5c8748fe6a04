"""Elementary matrix kernels: vectorization, Kronecker/Hadamard products,
the trace inner product and the canonical shuffle.

Matrices are plain ``numpy`` arrays of dtype ``complex128``.  Real input is
accepted and promoted; vectorization is column-major throughout.
"""

import numpy as np

from .errors import DimensionMismatch

__all__ = [
    "as_matrix",
    "as_vector",
    "elementary",
    "basis_vector",
    "ones",
    "vec",
    "unvec",
    "kron",
    "hadamard",
    "trace_inner",
    "shuffle",
    "sum_circ",
]


def as_matrix(a, name="matrix"):
    """Return ``a`` as a finite 2-D complex128 array (a copy is not forced)."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2:
        raise DimensionMismatch(f"{name} must be 2-D, got shape {m.shape}")
    if m.shape[0] < 1 or m.shape[1] < 1:
        raise DimensionMismatch(f"{name} must have positive dimensions, got {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError(f"{name} has non-finite entries")
    return m


def as_vector(x, name="vector"):
    v = np.asarray(x, dtype=np.complex128)
    if v.ndim != 1 or v.size < 1:
        raise DimensionMismatch(f"{name} must be a non-empty 1-D array, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValueError(f"{name} has non-finite entries")
    return v


def elementary(i, j, n, m=None):
    """The n x m matrix with a single 1 at (i, j), 0-based."""
    m = n if m is None else m
    e = np.zeros((n, m), dtype=np.complex128)
    e[i, j] = 1.0
    return e


def basis_vector(j, n):
    e = np.zeros(n, dtype=np.complex128)
    e[j] = 1.0
    return e


def ones(n, m=None):
    return np.ones((n, n if m is None else m), dtype=np.complex128)


def vec(T):
    """Column-stacking vectorization: ``vec(T)[j*rows + i] == T[i, j]``."""
    return as_matrix(T).reshape(-1, order="F")


def unvec(x, rows, cols):
    """Inverse of :func:`vec`."""
    x = as_vector(x)
    if x.size != rows * cols:
        raise DimensionMismatch(f"cannot reshape length {x.size} into {rows}x{cols}")
    return x.reshape((rows, cols), order="F")


def kron(A, B):
    return np.kron(as_matrix(A), as_matrix(B))


def hadamard(A, B):
    A, B = as_matrix(A), as_matrix(B)
    if A.shape != B.shape:
        raise DimensionMismatch(f"Hadamard product of {A.shape} and {B.shape}")
    return A * B


def trace_inner(A, B):
    """Trace inner product ``trace(A B*)``, linear in ``A``."""
    A, B = as_matrix(A), as_matrix(B)
    if A.shape != B.shape:
        raise DimensionMismatch(f"inner product of {A.shape} and {B.shape}")
    return complex(np.vdot(B.reshape(-1, order="F"), A.reshape(-1, order="F")))


def shuffle(n):
    """Canonical shuffle: the n^2 x n^2 permutation with z (x) x -> x (x) z."""
    if n < 1:
        raise ValueError("n must be positive")
    idx = np.arange(n * n)
    a, b = divmod(idx, n)
    C = np.zeros((n * n, n * n), dtype=np.complex128)
    C[b * n + a, idx] = 1.0
    return C


def sum_circ(C, V):
    """Weighted block sum ``sum_ij C[i, j] * V_ij`` over the m x m grid of
    r x r blocks of ``V``, evaluated through the Hadamard/Kronecker form

        (1_m (x) I_r)^* ((C (x) ones_r) o V) (1_m (x) I_r).
    """
    C, V = as_matrix(C, "C"), as_matrix(V, "V")
    m = C.shape[0]
    if C.shape != (m, m):
        raise DimensionMismatch(f"C must be square, got {C.shape}")
    if V.shape[0] != V.shape[1] or V.shape[0] % m:
        raise DimensionMismatch(f"V of shape {V.shape} is not an {m}x{m} grid of square blocks")
    r = V.shape[0] // m
    P = np.kron(np.ones((m, 1)), np.eye(r))
    return P.conj().T @ (np.kron(C, ones(r)) * V) @ P
