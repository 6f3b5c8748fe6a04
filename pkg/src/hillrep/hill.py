"""Minimal Hill representations of *-linear matrix maps.

A Hill representation writes a map as

    map(V) = sum_{k,l} H[k, l] * A_l @ V @ A_k^*

with A_1..A_m of size n x q and an m x m Hill matrix H.  It is minimal when
m equals the rank of the Choi matrix, which is also the dimension of the span
of the n x q blocks L_ij of the matricization.

Construction starts from a basis L_1..L_m of that span and two coefficient
arrays: ``alpha`` with ``L_ij = sum_k alpha[k, i, j] L_k`` (unique) and
``beta`` with ``L_k = sum_ij beta[k, i, j] L_ij`` (a choice).  Then
``A_k = conj(alpha[k])``, ``B_k = beta[k]`` and ``H[k, l] = <B_k, L_l>``
in the trace inner product.

Matrix families are stored as arrays of shape (m, n, q).  Indices are 0-based.
"""

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .errors import (
    BiorthogonalityViolation,
    DifferentMaps,
    DimensionMismatch,
    KernelMismatch,
    MissingProvenance,
    NotStarLinear,
    SpanDeficient,
)
from .linmap import LinearMatrixMap, apply, choi, is_star_linear
from .tensorops import as_matrix, sum_circ

__all__ = [
    "RANK_TOL",
    "BasisSelection",
    "HillRepresentation",
    "RepresentationBridge",
    "block_stack",
    "minimal_rank",
    "block_span_dimension",
    "select_basis",
    "build_hill",
    "hill",
    "hill_from_A",
    "hill_from_kernel_matched",
    "apply_hill",
    "apply_hill_circ",
    "reconstruct",
    "reconstruct_choi",
    "star_linear_cert",
    "stacked_forms",
    "gram",
    "biorthogonality_residual",
    "compare",
    "bridge_residuals",
    "representation_residuals",
]

RANK_TOL = 1e-9


def _frozen(a):
    a = np.array(a, dtype=np.complex128)
    a.flags.writeable = False
    return a


def _flat(Ms):
    """(m, n, q) -> (m, n*q) with column index i*q + j."""
    m, n, q = Ms.shape
    return Ms.reshape(m, n * q)


def _vecs(Ms):
    """(m, n, q) -> (n*q, m) whose columns are the column-stacked vec(M_k)."""
    m, n, q = Ms.shape
    return Ms.transpose(0, 2, 1).reshape(m, n * q).T


def _unvecs(X, n, q):
    """Inverse of :func:`_vecs`."""
    m = X.shape[1]
    return X.T.reshape(m, q, n).transpose(0, 2, 1)


def gram(Ms, Ns):
    """The m x m matrix ``[<M_k, N_l>]`` of trace inner products."""
    return _flat(Ms) @ _flat(Ns).conj().T


def _rel(X, Y):
    """Relative Frobenius distance, 0 when both sides vanish."""
    scale = max(np.linalg.norm(X), np.linalg.norm(Y))
    return float(np.linalg.norm(X - Y) / scale) if scale > 0 else 0.0


@dataclass(frozen=True, eq=False)
class BasisSelection:
    """A basis L_1..L_m of the block span together with its coefficients.

    ``source`` is ``"blocks"``, ``"qr"`` or ``"user"``; ``picks`` lists the
    chosen block indices (i_k, j_k) for the ``"blocks"`` strategy.
    """

    Ls: np.ndarray
    alpha: np.ndarray
    beta: np.ndarray
    source: str
    picks: tuple = None

    def __post_init__(self):
        for name in ("Ls", "alpha", "beta"):
            object.__setattr__(self, name, _frozen(getattr(self, name)))
        if not (self.Ls.shape == self.alpha.shape == self.beta.shape) or self.Ls.ndim != 3:
            raise ValueError("Ls, alpha and beta must share a shape (m, n, q)")
        if self.picks is not None:
            object.__setattr__(self, "picks", tuple(tuple(int(x) for x in p) for p in self.picks))

    @property
    def m(self):
        return self.Ls.shape[0]

    @property
    def As(self):
        return self.alpha.conj()

    @property
    def Bs(self):
        return self.beta


@dataclass(frozen=True, eq=False)
class HillRepresentation:
    n: int
    q: int
    H: np.ndarray
    As: np.ndarray
    basis: BasisSelection = None

    def __post_init__(self):
        H = np.array(self.H, dtype=np.complex128)
        if H.size == 0:
            H = H.reshape(0, 0)
        As = np.array(self.As, dtype=np.complex128).reshape(-1, self.n, self.q)
        if H.shape != (As.shape[0], As.shape[0]):
            raise ValueError(f"H has shape {H.shape} but there are {As.shape[0]} matrices A_k")
        object.__setattr__(self, "H", _frozen(H))
        object.__setattr__(self, "As", _frozen(As))

    @property
    def m(self):
        return self.As.shape[0]

    def __call__(self, V):
        return apply_hill(self, V)

    def __repr__(self):
        return f"HillRepresentation(n={self.n}, q={self.q}, m={self.m})"


@dataclass(frozen=True, eq=False)
class RepresentationBridge:
    """Invertible Phi, Xi relating two minimal representations, with
    ``H = Phi H' Phi^*`` and ``Xi = Phi H'``."""

    Phi: np.ndarray
    Xi: np.ndarray
    residuals: dict = field(default_factory=dict)


# -- rank and basis ---------------------------------------------------------


def block_stack(lmap):
    """nq x nq matrix whose column ``i*q + j`` is ``vec(L_ij)``."""
    n, q = lmap.n, lmap.q
    return np.ascontiguousarray(lmap.blocks().transpose(3, 2, 0, 1).reshape(n * q, n * q))


def _numerical_rank(s, tol):
    if s.size == 0 or s[0] == 0:
        return 0
    return int(np.sum(s > tol * s[0]))


def minimal_rank(lmap, tol=RANK_TOL):
    """Number of terms in a minimal Hill representation: the numerical rank of
    the Choi matrix (singular values above ``tol * sigma_max``)."""
    return _numerical_rank(np.linalg.svd(choi(lmap).M, compute_uv=False), tol)


def block_span_dimension(lmap, tol=RANK_TOL):
    """Dimension of span{L_ij}, from the singular values of the block stack."""
    return _numerical_rank(np.linalg.svd(block_stack(lmap), compute_uv=False), tol)


def _require_star_linear(lmap, tol):
    scale = max(1.0, float(np.max(np.abs(lmap.L))))
    if not is_star_linear(lmap, tol * scale):
        raise NotStarLinear(f"{lmap!r} is not *-linear within tolerance {tol * scale:.1e}")


def _empty_basis(n, q, source):
    z = np.zeros((0, n, q))
    return BasisSelection(z, z, z, source, () if source == "blocks" else None)


def _expansion(P, M, tol, what):
    """Solve ``P @ X = M`` in the least-squares sense and insist it is exact."""
    X, *_ = np.linalg.lstsq(P, M, rcond=None)
    if np.linalg.norm(P @ X - M) > tol * max(1.0, np.linalg.norm(M)):
        raise SpanDeficient(f"{what} do not lie in the span")
    return X


def _basis_from(lmap, Ls, source, tol, beta=None, picks=None):
    n, q = lmap.n, lmap.q
    M = block_stack(lmap)
    P = _vecs(Ls)
    s = np.linalg.svd(P, compute_uv=False)
    if s[-1] <= tol * s[0]:
        raise SpanDeficient("basis matrices are linearly dependent")
    alpha = _expansion(P, M, tol, "blocks L_ij")  # (m, nq), column i*q + j
    alpha = alpha.reshape(-1, n, q)
    if beta is None:
        X, *_ = np.linalg.lstsq(M, P, rcond=tol)  # minimum-norm choice
        if np.linalg.norm(M @ X - P) > tol * max(1.0, np.linalg.norm(P)):
            raise SpanDeficient("basis matrices leave the span of the blocks")
        beta = X.T.reshape(-1, n, q)
    return BasisSelection(Ls, alpha, beta, source, picks)


def select_basis(lmap, strategy="blocks", tol=RANK_TOL, check_star_linear=True):
    """Choose a basis of span{L_ij}.

    ``strategy`` is ``"blocks"`` (greedy scan of the blocks in row-major order,
    keeping each block whose residual against the current span exceeds
    ``tol`` times the largest block norm; then ``B_k = E_{i_k j_k}``),
    ``"qr"`` (orthonormal basis from a column-pivoted QR of the block stack;
    ``beta`` is the minimum-norm solution), or a sequence of m matrices of
    size n x q to be used as given.

    The zero map yields an empty selection.
    """
    if check_star_linear:
        _require_star_linear(lmap, tol)
    n, q = lmap.n, lmap.q
    m = minimal_rank(lmap, tol)
    if isinstance(strategy, str):
        if strategy not in ("blocks", "qr"):
            raise ValueError(f"unknown strategy {strategy!r}")
        if m == 0:
            return _empty_basis(n, q, strategy)
    M = block_stack(lmap)

    if isinstance(strategy, str) and strategy == "blocks":
        threshold = tol * np.max(np.linalg.norm(M, axis=0))
        Q = np.zeros((n * q, 0), dtype=np.complex128)
        picks = []
        for idx in range(n * q):
            v = M[:, idx]
            for _ in range(2):  # re-orthogonalize once
                v = v - Q @ (Q.conj().T @ v)
            nv = np.linalg.norm(v)
            if nv > threshold:
                picks.append(divmod(idx, q))
                Q = np.column_stack([Q, v / nv])
        if len(picks) != m:
            raise SpanDeficient(
                f"block scan found {len(picks)} independent blocks but the Choi rank is {m}; "
                "the tolerance is ambiguous for this map"
            )
        Ls = np.stack([lmap.block(i, j) for i, j in picks])
        beta = np.zeros((m, n, q), dtype=np.complex128)
        for k, (i, j) in enumerate(picks):
            beta[k, i, j] = 1.0
        return _basis_from(lmap, Ls, "blocks", tol, beta=beta, picks=picks)

    if isinstance(strategy, str):  # qr
        Q, _, _ = scipy.linalg.qr(M, mode="economic", pivoting=True)
        return _basis_from(lmap, _unvecs(Q[:, :m], n, q), "qr", tol)

    Ls = np.stack([as_matrix(L, "basis matrix") for L in strategy]) if len(strategy) else np.zeros((0, n, q))
    if Ls.shape[1:] != (n, q):
        raise SpanDeficient(f"basis matrices must be {n}x{q}")
    if Ls.shape[0] != m:
        raise SpanDeficient(f"{Ls.shape[0]} matrices supplied but the block span has dimension {m}")
    if m == 0:
        return _empty_basis(n, q, "user")
    return _basis_from(lmap, Ls, "user", tol)


def biorthogonality_residual(basis):
    """max |<B_k, A_l> - delta_kl|."""
    if basis.m == 0:
        return 0.0
    return float(np.max(np.abs(gram(basis.Bs, basis.As) - np.eye(basis.m))))


# -- construction -----------------------------------------------------------


def build_hill(lmap, basis, tol=RANK_TOL):
    """Hill representation with ``A_k = conj(alpha_k)`` and
    ``H[k, l] = <B_k, L_l>``."""
    if basis.m and basis.Ls.shape[1:] != (lmap.n, lmap.q):
        raise ValueError("basis does not belong to a map of this size")
    scale = max(1.0, np.linalg.norm(basis.beta) * np.linalg.norm(basis.alpha))
    if biorthogonality_residual(basis) > tol * scale:
        raise BiorthogonalityViolation(
            f"<B_k, A_l> deviates from the identity by {biorthogonality_residual(basis):.2e}"
        )
    H = gram(basis.Bs, basis.Ls)
    return HillRepresentation(lmap.n, lmap.q, H, basis.As, basis)


def hill(lmap, strategy="blocks", tol=RANK_TOL):
    """Convenience: :func:`select_basis` followed by :func:`build_hill`."""
    return build_hill(lmap, select_basis(lmap, strategy, tol), tol)


def hill_from_A(lmap, As, tol=RANK_TOL):
    """Minimal Hill representation with prescribed A_1..A_m.

    Expands ``L_ij = sum_k lam[k, i, j] A_k``, sets ``L_k = conj(lam[k])`` and
    solves ``L_k = sum_l H[k, l] A_l`` for H.
    """
    _require_star_linear(lmap, tol)
    n, q = lmap.n, lmap.q
    m = minimal_rank(lmap, tol)
    As = np.stack([as_matrix(A, "A_k") for A in As]) if len(As) else np.zeros((0, n, q))
    if As.shape[1:] != (n, q) or As.shape[0] != m:
        raise SpanDeficient(f"expected {m} matrices of size {n}x{q}, got {As.shape}")
    if m == 0:
        return HillRepresentation(n, q, np.zeros((0, 0)), As, _empty_basis(n, q, "user"))
    P = _vecs(As)
    s = np.linalg.svd(P, compute_uv=False)
    if s[-1] <= tol * s[0]:
        raise SpanDeficient("A_k are linearly dependent")
    lam = _expansion(P, block_stack(lmap), tol, "blocks L_ij").reshape(m, n, q)
    Ls = lam.conj()
    Ht, *_ = np.linalg.lstsq(P, _vecs(Ls), rcond=None)
    basis = _basis_from(lmap, Ls, "user", tol)
    return HillRepresentation(n, q, Ht.T, As, basis)


def hill_from_kernel_matched(lmap, Ahat, tol=RANK_TOL):
    """Hill representation from any m x nq matrix with the Choi kernel.

    ``H^T = (Ahat Ahat^*)^{-1} Ahat Choi Ahat^* (Ahat Ahat^*)^{-1}`` and A_k is
    the conjugate of row k of ``Ahat``, reshaped column-major to n x q.
    """
    _require_star_linear(lmap, tol)
    n, q = lmap.n, lmap.q
    C = choi(lmap).M
    U, s, Vh = np.linalg.svd(C)
    m = _numerical_rank(s, tol)
    Ahat = np.asarray(Ahat, dtype=np.complex128).reshape(-1, n * q)
    if Ahat.shape[0] != m:
        raise KernelMismatch(f"Ahat has {Ahat.shape[0]} rows, the Choi rank is {m}")
    if m == 0:
        return HillRepresentation(n, q, np.zeros((0, 0)), np.zeros((0, n, q)), _empty_basis(n, q, "user"))
    sa = np.linalg.svd(Ahat, compute_uv=False)
    if sa[-1] <= tol * sa[0]:
        raise KernelMismatch("Ahat does not have full row rank")
    null_C = Vh[m:].conj().T
    if null_C.size and np.linalg.norm(Ahat @ null_C) > tol * np.linalg.norm(Ahat):
        raise KernelMismatch("Ker Choi is not contained in Ker Ahat")
    null_A = scipy.linalg.null_space(Ahat, rcond=tol)
    if null_A.size and np.linalg.norm(C @ null_A) > tol * np.linalg.norm(C):
        raise KernelMismatch("Ker Ahat is not contained in Ker Choi")
    G = Ahat @ Ahat.conj().T
    X = np.linalg.solve(G, Ahat @ C @ Ahat.conj().T)
    Ht = np.linalg.solve(G, X.conj().T).conj().T  # X G^{-1}, G Hermitian
    H = Ht.T
    As = _unvecs(Ahat.conj().T, n, q)
    Ls = np.einsum("kl,lij->kij", H, As)
    basis = _basis_from(lmap, Ls, "user", tol)
    return HillRepresentation(n, q, H, As, basis)


# -- evaluation -------------------------------------------------------------


def apply_hill(rep, V):
    V = as_matrix(V, "V")
    if V.shape != (rep.q, rep.q):
        raise DimensionMismatch(f"V has shape {V.shape}, expected {(rep.q, rep.q)}")
    if rep.m == 0:
        return np.zeros((rep.n, rep.n), dtype=np.complex128)
    AV = rep.As @ V
    return np.einsum("kl,lab,kcb->ac", rep.H, AV, rep.As.conj())


def apply_hill_circ(rep, V):
    """Same value as :func:`apply_hill`, through the block-grid weighted sum
    over ``[A_l V A_k^*]_{k,l}``."""
    V = as_matrix(V, "V")
    if rep.m == 0:
        return np.zeros((rep.n, rep.n), dtype=np.complex128)
    m, n = rep.m, rep.n
    grid = np.zeros((m * n, m * n), dtype=np.complex128)
    for k in range(m):
        for l in range(m):
            grid[k * n:(k + 1) * n, l * n:(l + 1) * n] = rep.As[l] @ V @ rep.As[k].conj().T
    return sum_circ(rep.H, grid)


def reconstruct(rep):
    """Matricization ``sum_{k,l} H[k, l] conj(A_k) (x) A_l`` as a map."""
    n, q = rep.n, rep.q
    if rep.m == 0:
        return LinearMatrixMap(n, q, np.zeros((n * n, q * q)))
    L4 = np.einsum("kl,kij,lab->iajb", rep.H, rep.As.conj(), rep.As)
    return LinearMatrixMap(n, q, L4.reshape(n * n, q * q))


def reconstruct_choi(rep):
    """``Ahat^* H^T Ahat``."""
    Ahat, _ = stacked_forms(rep)
    return Ahat.conj().T @ rep.H.T @ Ahat


def stacked_forms(rep_or_mats):
    """``(hat, tilde)`` for a representation's A_k (or any (m, n, q) family):
    ``hat`` is m x nq with rows ``vec(conj(K_k))^T``; ``tilde`` stacks the
    K_k vertically into mn x q."""
    Ks = rep_or_mats.As if isinstance(rep_or_mats, HillRepresentation) else np.asarray(rep_or_mats)
    m, n, q = Ks.shape
    return _vecs(Ks).T.conj(), Ks.reshape(m * n, q)


# -- verification -----------------------------------------------------------


def star_linear_cert(lmap, basis, tol=RANK_TOL):
    """Basis-level *-linearity certificate: ``L = sum_k conj(L_k) (x) A_k``,
    ``L_k = sum_l <B_k, L_l> A_l`` and ``<B_k, L_l> = conj(<B_l, L_k>)``."""
    if basis.m == 0:
        return not np.any(lmap.L)
    n, q = lmap.n, lmap.q
    Ls, As = basis.Ls, basis.As
    G = gram(basis.Bs, Ls)
    L_from = np.einsum("kij,kab->iajb", Ls.conj(), As).reshape(n * n, q * q)
    ok_ii = _rel(L_from, lmap.L) <= tol
    ok_iii = _rel(np.einsum("kl,lij->kij", G, As), Ls) <= tol
    ok_sym = _rel(G, G.conj().T) <= tol
    return bool(ok_ii and ok_iii and ok_sym)


def representation_residuals(lmap, rep, trials=20, seed=0):
    """Relative residuals of the representation against ``lmap``."""
    rng = np.random.default_rng(seed)
    n, q = rep.n, rep.q
    out = {}
    rec = reconstruct(rep)
    out["L_rel"] = _rel(rec.L, lmap.L)
    out["choi_rel"] = _rel(reconstruct_choi(rep) if rep.m else np.zeros((n * q, n * q)), choi(lmap).M)
    worst = 0.0
    for _ in range(trials):
        V = rng.standard_normal((q, q)) + 1j * rng.standard_normal((q, q))
        worst = max(worst, _rel(apply_hill(rep, V), apply(lmap, V)))
    out["apply_rel"] = worst
    if rep.m:
        H = rep.H
        out["H_hermitian"] = float(np.linalg.norm(H - H.conj().T) / np.linalg.norm(H))
        s = np.linalg.svd(H, compute_uv=False)
        out["H_inverse_condition"] = float(s[-1] / s[0])
    else:
        out["H_hermitian"] = 0.0
        out["H_inverse_condition"] = 1.0
    return out


# -- comparison -------------------------------------------------------------


def compare(repA, repB, tol=RANK_TOL):
    """Bridge ``Phi = [<B_k, A'_l>]``, ``Xi = [<B_k, L'_l>]`` between two
    minimal representations of the same map, with all relation residuals."""
    if repA.basis is None or repB.basis is None:
        raise MissingProvenance("both representations must carry their basis selection")
    if (repA.n, repA.q, repA.m) != (repB.n, repB.q, repB.m):
        raise DifferentMaps(f"{repA!r} and {repB!r} differ in size")
    if _rel(reconstruct(repA).L, reconstruct(repB).L) > tol:
        raise DifferentMaps("the representations reconstruct different maps")
    bA, bB = repA.basis, repB.basis
    Phi = gram(bA.Bs, bB.As)
    Xi = gram(bA.Bs, bB.Ls)
    bridge = RepresentationBridge(_frozen(Phi), _frozen(Xi))
    bridge.residuals.update(bridge_residuals(repA, repB, bridge))
    return bridge


def bridge_residuals(repA, repB, bridge):
    """Relative residual of every identity linking two representations."""
    bA, bB = repA.basis, repB.basis
    H, Hp = repA.H, repB.H
    Phi, Xi = bridge.Phi, bridge.Xi
    n, m = repA.n, repA.m
    Ahat, Atil = stacked_forms(bA.As)
    Ahat_p, Atil_p = stacked_forms(bB.As)
    Lhat, Ltil = stacked_forms(bA.Ls)
    Lhat_p, Ltil_p = stacked_forms(bB.Ls)
    In = np.eye(n)
    return {
        "Lhat_H": _rel(Lhat, H.conj() @ Ahat),
        "Lhat_rel": _rel(Lhat, Phi.conj() @ Lhat_p),
        "Ahat_rel": _rel(Phi.T @ Ahat, Ahat_p),
        "Lhat_XiAhatp": _rel(Lhat, Xi.conj() @ Ahat_p),
        "Lhatp_XiStarAhat": _rel(Lhat_p, Xi.T @ Ahat),
        "Ltilde_rel": _rel(Ltil, np.kron(Phi, In) @ Ltil_p),
        "Atilde_rel": _rel(np.kron(Phi.conj().T, In) @ Atil, Atil_p),
        "H_PhiHpPhiStar": _rel(H, Phi @ Hp @ Phi.conj().T),
        "H_PhiXiStar": _rel(H, Phi @ Xi.conj().T),
        "Xi_PhiHp": _rel(Xi, Phi @ Hp),
        "Phi_inverse": _rel(Phi @ gram(bB.Bs, bA.As), np.eye(m)),
        "XiStar_formula": _rel(Xi.conj().T, gram(bB.Bs, bA.Ls)),
    }
