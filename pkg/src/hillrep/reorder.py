"""The block reordering ``S -> R`` that sends the (i, j) block of ``S`` to
column ``j*p + i`` of ``R`` as its column-stacked vector.

For ``S`` of size (n p) x (q r), viewed as a p x r grid of n x q blocks,
``reorder(S)`` has size (n q) x (p r).  The map is a pure permutation of
entries, so round trips are bit-exact.  With the matricization ``L`` of a
linear map on square matrices, ``reorder(L, BlockShape(n, q, n, q))`` is its
Choi matrix.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch
from .tensorops import as_matrix, shuffle

__all__ = [
    "BlockShape",
    "reorder",
    "reorder_inverse",
    "reorder_entrywise_oracle",
    "hermitian_deviation",
    "is_reorder_image_hermitian",
    "is_psd",
    "swap_permutation",
]

DEFAULT_TOL = 1e-10


@dataclass(frozen=True)
class BlockShape:
    """Inner block size n x q, outer grid p x r."""

    n: int
    q: int
    p: int
    r: int

    def __post_init__(self):
        for name in ("n", "q", "p", "r"):
            v = getattr(self, name)
            if int(v) != v or v < 1:
                raise ValueError(f"{name} must be a positive integer, got {v!r}")

    @property
    def source(self):
        return (self.n * self.p, self.q * self.r)

    @property
    def target(self):
        return (self.n * self.q, self.p * self.r)

    def inverse(self):
        """Shape whose reorder undoes this one."""
        return BlockShape(self.n, self.p, self.q, self.r)


def reorder(S, shape):
    S = as_matrix(S, "S")
    if S.shape != shape.source:
        raise DimensionMismatch(f"S has shape {S.shape}, expected {shape.source} for {shape}")
    n, q, p, r = shape.n, shape.q, shape.p, shape.r
    # S4[i, k, j, l] = S[i*n + k, j*q + l];  R4[l, k, j, i] = R[l*n + k, j*p + i]
    S4 = S.reshape(p, n, r, q)
    return S4.transpose(3, 1, 2, 0).reshape(q * n, r * p)


def reorder_inverse(R, shape):
    """Undo :func:`reorder`; itself a reorder with inner n x p, grid q x r."""
    R = as_matrix(R, "R")
    if R.shape != shape.target:
        raise DimensionMismatch(f"R has shape {R.shape}, expected {shape.target} for {shape}")
    return reorder(R, shape.inverse())


def reorder_entrywise_oracle(S, R, shape):
    """Check ``R == reorder(S)`` entry by entry through the index relation

        S_ij[k, l] == R_lj[k, i]

    where ``S_ij`` are the n x q blocks of ``S`` and ``R_lj`` the n x p blocks
    of ``R``.  Exact comparison; independent of the reshape in :func:`reorder`.
    """
    S, R = as_matrix(S, "S"), as_matrix(R, "R")
    n, q, p, r = shape.n, shape.q, shape.p, shape.r
    if S.shape != shape.source or R.shape != shape.target:
        raise DimensionMismatch(f"shapes {S.shape}, {R.shape} incompatible with {shape}")
    for i in range(p):
        for j in range(r):
            for k in range(n):
                for l in range(q):
                    if S[i * n + k, j * q + l] != R[l * n + k, j * p + i]:
                        return False
    return True


def hermitian_deviation(S, n, q):
    """Deviation of ``reorder(S, (n, q, n, q))`` from Hermitian, by two routes.

    Returns ``(shuffle_dev, entry_dev)``: the max-norm of ``conj(S) - C_n S C_q``
    and the max over index quadruples of ``|S_ij[k,l] - conj(S_kl[i,j])|``.
    """
    S = as_matrix(S, "S")
    if S.shape != (n * n, q * q):
        raise DimensionMismatch(f"S has shape {S.shape}, expected {(n * n, q * q)}")
    shuffle_dev = float(np.max(np.abs(S.conj() - shuffle(n) @ S @ shuffle(q))))
    S4 = S.reshape(n, n, q, q)  # S4[i, k, j, l] = S_ij[k, l]
    entry_dev = float(np.max(np.abs(S4 - S4.transpose(1, 0, 3, 2).conj())))
    return shuffle_dev, entry_dev


def is_reorder_image_hermitian(S, n, q, tol=DEFAULT_TOL):
    shuffle_dev, entry_dev = hermitian_deviation(S, n, q)
    verdict = shuffle_dev <= tol
    if verdict != (entry_dev <= tol):
        raise RuntimeError(
            f"Hermiticity routes disagree: shuffle {shuffle_dev:.3e}, entrywise {entry_dev:.3e}"
        )
    return verdict


def is_psd(M, tol=DEFAULT_TOL):
    """Hermitian and ``lambda_min >= -tol * max(1, lambda_max)``."""
    M = as_matrix(M)
    if M.shape[0] != M.shape[1] or np.max(np.abs(M - M.conj().T)) > tol * max(1.0, np.max(np.abs(M))):
        return False
    w = np.linalg.eigvalsh((M + M.conj().T) / 2)
    return bool(w[0] >= -tol * max(1.0, w[-1]))


def swap_permutation(size, a, b):
    """Permutation matrix interchanging rows/columns ``a`` and ``b``."""
    P = np.eye(size, dtype=np.complex128)
    P[[a, b]] = P[[b, a]]
    return P
