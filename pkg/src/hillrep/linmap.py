"""Linear matrix maps ``F^{q x q} -> F^{n x n}`` stored by their matricization.

The matricization ``L`` (n^2 x q^2) satisfies ``L @ vec(V) == vec(map(V))``;
its n x q blocks ``L_ij`` carry entries ``ell[i, j, k, l] = L_ij[k, l]``.
The Choi matrix (n q x n q) has ``map(E_ij)`` as its (i, j) block and is
obtained from ``L`` by :func:`hillrep.reorder.reorder`.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, InvalidRank
from .reorder import BlockShape, reorder, reorder_inverse
from .tensorops import as_matrix, elementary, shuffle, unvec, vec

__all__ = [
    "DEFAULT_TOL",
    "LinearMatrixMap",
    "ChoiMatrix",
    "from_matricization",
    "from_choi",
    "from_function",
    "choi",
    "choi_by_definition",
    "apply",
    "apply_choi_sum",
    "apply_hadamard",
    "star_linearity_deviation",
    "is_star_linear",
    "is_hermitian_preserving",
    "random_star_linear",
    "identity_map",
    "transpose_map",
    "zero_map",
    "choi_from_matricization",
    "matricization_from_choi",
]

DEFAULT_TOL = 1e-10


def _frozen(a):
    a = np.array(a, dtype=np.complex128)
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class LinearMatrixMap:
    n: int
    q: int
    L: np.ndarray

    def __post_init__(self):
        L = as_matrix(self.L, "L")
        if L.shape != (self.n * self.n, self.q * self.q):
            raise DimensionMismatch(
                f"matricization has shape {L.shape}, expected {(self.n ** 2, self.q ** 2)}"
            )
        object.__setattr__(self, "L", _frozen(L))

    @property
    def shape(self):
        return BlockShape(self.n, self.q, self.n, self.q)

    def blocks(self):
        """Array ``ell`` of shape (n, q, n, q) with ``ell[i, j] == L_ij``."""
        n, q = self.n, self.q
        return self.L.reshape(n, n, q, q).transpose(0, 2, 1, 3)

    def block(self, i, j):
        n, q = self.n, self.q
        return self.L[i * n:(i + 1) * n, j * q:(j + 1) * q]

    def choi(self):
        return choi(self)

    def __call__(self, V):
        return apply(self, V)

    def is_real(self):
        return not np.any(self.L.imag)

    def __repr__(self):
        return f"LinearMatrixMap(n={self.n}, q={self.q})"


@dataclass(frozen=True, eq=False)
class ChoiMatrix:
    n: int
    q: int
    M: np.ndarray

    def __post_init__(self):
        M = as_matrix(self.M, "Choi matrix")
        if M.shape != (self.n * self.q, self.n * self.q):
            raise DimensionMismatch(
                f"Choi matrix has shape {M.shape}, expected {(self.n * self.q,) * 2}"
            )
        object.__setattr__(self, "M", _frozen(M))

    def block(self, i, j):
        n = self.n
        return self.M[i * n:(i + 1) * n, j * n:(j + 1) * n]


def from_matricization(L, n, q):
    return LinearMatrixMap(n, q, L)


def from_choi(C, n=None, q=None):
    """Map with the given Choi matrix (a :class:`ChoiMatrix` or an array plus n, q)."""
    if not isinstance(C, ChoiMatrix):
        if n is None or q is None:
            raise TypeError("n and q are required when C is a plain array")
        C = ChoiMatrix(n, q, C)
    return LinearMatrixMap(C.n, C.q, reorder_inverse(C.M, BlockShape(C.n, C.q, C.n, C.q)))


def from_function(f, n, q):
    """Tabulate a callable ``f: q x q -> n x n`` on the standard basis."""
    L = np.zeros((n * n, q * q), dtype=np.complex128)
    for j in range(q):
        for i in range(q):
            out = as_matrix(f(elementary(i, j, q)), "f(E_ij)")
            if out.shape != (n, n):
                raise DimensionMismatch(f"f returned shape {out.shape}, expected {(n, n)}")
            L[:, j * q + i] = vec(out)
    return LinearMatrixMap(n, q, L)


def choi(lmap):
    return ChoiMatrix(lmap.n, lmap.q, reorder(lmap.L, lmap.shape))


def choi_by_definition(lmap):
    """Choi matrix assembled blockwise from ``map(E_ij)``."""
    n, q = lmap.n, lmap.q
    M = np.zeros((n * q, n * q), dtype=np.complex128)
    for i in range(q):
        for j in range(q):
            M[i * n:(i + 1) * n, j * n:(j + 1) * n] = apply(lmap, elementary(i, j, q))
    return ChoiMatrix(n, q, M)


def _check_input(lmap, V):
    V = as_matrix(V, "V")
    if V.shape != (lmap.q, lmap.q):
        raise DimensionMismatch(f"V has shape {V.shape}, expected {(lmap.q, lmap.q)}")
    return V


def apply(lmap, V):
    V = _check_input(lmap, V)
    return unvec(lmap.L @ vec(V), lmap.n, lmap.n)


def apply_choi_sum(lmap, V):
    """``sum_ij V[i, j] * Choi_ij``."""
    V = _check_input(lmap, V)
    n, q = lmap.n, lmap.q
    C4 = choi(lmap).M.reshape(q, n, q, n)
    return np.einsum("ij,iajb->ab", V, C4)


def apply_hadamard(lmap, V):
    """``(1_q (x) I_n)^T (Choi o (V (x) ones_n)) (1_q (x) I_n)``."""
    V = _check_input(lmap, V)
    n, q = lmap.n, lmap.q
    P = np.kron(np.ones((q, 1)), np.eye(n))
    return P.T @ (choi(lmap).M * np.kron(V, np.ones((n, n)))) @ P


def star_linearity_deviation(lmap):
    """Max-norm deviations ``(|Choi - Choi*|, |conj(L) - C_n L C_q|)``."""
    M = choi(lmap).M
    choi_dev = float(np.max(np.abs(M - M.conj().T)))
    shuffle_dev = float(np.max(np.abs(lmap.L.conj() - shuffle(lmap.n) @ lmap.L @ shuffle(lmap.q))))
    return choi_dev, shuffle_dev


def is_star_linear(lmap, tol=DEFAULT_TOL):
    """``map(V*) == map(V)*`` for all V, tested on the Choi matrix and on the
    shuffle identity of the matricization; both must pass."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    choi_dev, shuffle_dev = star_linearity_deviation(lmap)
    return choi_dev <= tol and shuffle_dev <= tol


def _herm_dev(X):
    return float(np.max(np.abs(X - X.conj().T))) / max(1.0, float(np.max(np.abs(X))))


def is_hermitian_preserving(lmap, trials=20, seed=0, field=None, tol=DEFAULT_TOL):
    """Does the map send Hermitian (over the reals: symmetric) input to
    Hermitian output?

    Checks a spanning set of the input space deterministically (``E_ii``,
    ``E_ij + E_ji`` and, over the complex field, ``i(E_ij - E_ji)``) and then
    ``trials`` random Hermitian/symmetric inputs.  ``field`` defaults to
    ``"real"`` when the matricization has no imaginary part.
    """
    if field is None:
        field = "real" if lmap.is_real() else "complex"
    if field not in ("real", "complex"):
        raise ValueError(f"field must be 'real' or 'complex', got {field!r}")
    q = lmap.q
    probes = []
    for i in range(q):
        for j in range(i, q):
            probes.append(elementary(i, j, q) + elementary(j, i, q))
            if field == "complex" and i != j:
                probes.append(1j * (elementary(i, j, q) - elementary(j, i, q)))
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        X = rng.standard_normal((q, q))
        if field == "complex":
            X = X + 1j * rng.standard_normal((q, q))
        probes.append(X + X.conj().T)
    return all(_herm_dev(apply(lmap, V)) <= tol for V in probes)


def random_star_linear(n, q, rank, seed=0, field="complex"):
    """Reproducible *-linear map whose Choi matrix has exactly ``rank``
    nonzero eigenvalues, each of magnitude in [0.5, 2] with random sign."""
    if not 1 <= rank <= n * q:
        raise InvalidRank(f"rank must lie in [1, {n * q}], got {rank}")
    rng = np.random.default_rng(seed)
    X = rng.standard_normal((n * q, rank))
    if field == "complex":
        X = X + 1j * rng.standard_normal((n * q, rank))
    elif field != "real":
        raise ValueError(f"field must be 'real' or 'complex', got {field!r}")
    Q, _ = np.linalg.qr(X)
    d = rng.uniform(0.5, 2.0, rank) * rng.choice([-1.0, 1.0], rank)
    M = (Q * d) @ Q.conj().T
    M = (M + M.conj().T) / 2  # exactly Hermitian
    if field == "real":
        M = M.real
    return from_choi(M, n, q)


def identity_map(n):
    return LinearMatrixMap(n, n, np.eye(n * n))


def transpose_map(n):
    return LinearMatrixMap(n, n, shuffle(n))


def zero_map(n, q=None):
    q = n if q is None else q
    return LinearMatrixMap(n, q, np.zeros((n * n, q * q)))


def choi_from_matricization(L, n, p, q, r):
    """Choi matrix (n q x p r) of a map ``F^{q x r} -> F^{n x p}`` with
    matricization ``L`` (n p x q r)."""
    return reorder(L, BlockShape(n, q, p, r))


def matricization_from_choi(C, n, p, q, r):
    return reorder_inverse(C, BlockShape(n, q, p, r))
