import numpy as np
import pytest
from conftest import crandn, row_sum_map
from hypothesis import given, settings
from hypothesis import strategies as st

from hillrep.errors import (
    BiorthogonalityViolation,
    DifferentMaps,
    DimensionMismatch,
    KernelMismatch,
    MissingProvenance,
    NotStarLinear,
    SpanDeficient,
)
from hillrep.hill import (
    BasisSelection,
    HillRepresentation,
    apply_hill,
    apply_hill_circ,
    biorthogonality_residual,
    block_span_dimension,
    build_hill,
    compare,
    gram,
    hill,
    hill_from_A,
    hill_from_kernel_matched,
    minimal_rank,
    reconstruct,
    reconstruct_choi,
    representation_residuals,
    select_basis,
    stacked_forms,
    star_linear_cert,
)
from hillrep.linmap import (
    identity_map,
    random_star_linear,
    transpose_map,
    zero_map,
)
from hillrep.tensorops import elementary, shuffle, vec

E = lambda i, j: elementary(i, j, 2)  # noqa: E731


def rel(a, b):
    scale = max(np.linalg.norm(a), np.linalg.norm(b))
    return np.linalg.norm(a - b) / scale if scale else 0.0



def test_minimal_rank_examples():
    for n in (1, 2, 4):
        assert minimal_rank(identity_map(n)) == 1
    assert minimal_rank(transpose_map(2)) == 4
    assert minimal_rank(zero_map(3, 2)) == 0


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.integers(0, 2**32 - 1))
def test_rank_equals_block_span_dimension(n, q, seed):
    rank = int(np.random.default_rng(seed).integers(1, n * q + 1))
    m = random_star_linear(n, q, rank, seed)
    assert minimal_rank(m) == block_span_dimension(m) == rank


def test_identity_map_blocks():
    b = select_basis(identity_map(3), "blocks")
    assert b.picks == ((0, 0),)
    assert np.array_equal(b.Ls[0], np.eye(3))
    assert np.array_equal(b.Bs[0], elementary(0, 0, 3))
    rep = build_hill(identity_map(3), b)
    assert np.array_equal(rep.H, [[1]])
    assert np.allclose(rep.As[0], np.eye(3), atol=1e-15)


def test_transpose_map_blocks():
    lmap = transpose_map(2)
    b = select_basis(lmap, "blocks")
    assert [np.array_equal(L, X) for L, X in zip(b.Ls, [E(0, 0), E(1, 0), E(0, 1), E(1, 1)])] == [True] * 4
    rep = build_hill(lmap, b)
    assert np.array_equal(rep.H, shuffle(2))
    for A, X in zip(rep.As, [E(0, 0), E(0, 1), E(1, 0), E(1, 1)]):
        assert np.array_equal(A, X)
    assert np.array_equal(apply_hill(rep, np.array([[1, 2], [3, 4]])), [[1, 3], [2, 4]])
    assert np.array_equal(reconstruct(rep).L, shuffle(2))
    Ahat, _ = stacked_forms(rep)
    assert np.array_equal(np.sort(np.argmax(Ahat, axis=1)), [0, 1, 2, 3])


def test_zero_map_is_empty():
    for strategy in ("blocks", "qr"):
        rep = hill(zero_map(2, 3), strategy)
        assert rep.m == 0 and rep.H.shape == (0, 0)
        assert np.array_equal(apply_hill(rep, np.ones((3, 3))), np.zeros((2, 2)))
        assert not np.any(reconstruct(rep).L)


def test_not_star_linear_rejected():
    with pytest.raises(NotStarLinear):
        hill(row_sum_map())
    with pytest.raises(NotStarLinear):
        select_basis(row_sum_map(), "qr")


def test_user_basis():
    lmap = random_star_linear(2, 2, 2, seed=3)
    Ls = select_basis(lmap, "qr").Ls
    mixed = [Ls[0] + 2 * Ls[1], Ls[1] - 1j * Ls[0]]
    rep = build_hill(lmap, select_basis(lmap, mixed))
    assert rel(reconstruct(rep).L, lmap.L) <= 1e-10
    with pytest.raises(SpanDeficient):
        select_basis(lmap, [Ls[0]])
    with pytest.raises(SpanDeficient):
        select_basis(lmap, [Ls[0], 2 * Ls[0]])
    with pytest.raises(SpanDeficient):
        select_basis(lmap, [Ls[0], crandn(np.random.default_rng(0), 2, 2)])


def test_star_linear_cert():
    b = select_basis(identity_map(2))
    assert star_linear_cert(identity_map(2), b)
    lmap = random_star_linear(3, 2, 4, seed=1)
    assert star_linear_cert(lmap, select_basis(lmap, "qr"))
    # force a basis for the non-*-linear example through the user machinery
    bad = row_sum_map()
    basis = select_basis(bad, [np.diag([1.0, 0.0, 0.0])[:, :2], np.diag([0.0, 1.0, 0.0])[:, :2]],
                         check_star_linear=False)
    assert not star_linear_cert(bad, basis)


def test_biorthogonality_violation():
    lmap = random_star_linear(2, 2, 2, seed=5)
    b = select_basis(lmap, "qr")
    broken = BasisSelection(b.Ls, b.alpha, 3 * b.beta, "user")
    with pytest.raises(BiorthogonalityViolation):
        build_hill(lmap, broken)


@pytest.mark.parametrize("strategy", ["blocks", "qr"])
@pytest.mark.parametrize("n,q", [(1, 1), (1, 3), (2, 2), (3, 2), (2, 4)])
def test_build_hill_identities(strategy, n, q):
    for rank in range(1, n * q + 1):
        lmap = random_star_linear(n, q, rank, seed=10 * n + q + rank)
        rep = hill(lmap, strategy)
        b = rep.basis
        assert rep.m == rank
        assert biorthogonality_residual(b) <= 1e-10
        G = gram(b.Bs, b.Ls)
        assert np.max(np.abs(G - G.conj().T)) <= 1e-10 * np.linalg.norm(G)
        res = representation_residuals(lmap, rep)
        assert res["L_rel"] <= 1e-10 and res["choi_rel"] <= 1e-10 and res["apply_rel"] <= 1e-10
        assert res["H_hermitian"] <= 1e-10 and res["H_inverse_condition"] > 1e-10
        V = crandn(np.random.default_rng(rank), q, q)
        assert rel(apply_hill_circ(rep, V), apply_hill(rep, V)) <= 1e-12
        # Choi = Ahat^* conj(H) Ahat as well (H Hermitian)
        Ahat, _ = stacked_forms(rep)
        assert rel(Ahat.conj().T @ rep.H.conj() @ Ahat, lmap.choi().M) <= 1e-10
        # spans of A_k, L_k and the blocks coincide
        P = np.column_stack([vec(A) for A in rep.As])
        Q = np.column_stack([vec(L) for L in b.Ls])
        assert np.linalg.matrix_rank(np.hstack([P, Q]), tol=1e-8) == rank


def test_stacked_form_relation(rng):
    lmap = random_star_linear(3, 2, 4, seed=2)
    rep = hill(lmap, "qr")
    Ahat, Atil = stacked_forms(rep)
    assert np.linalg.matrix_rank(Ahat) == rep.m
    for _ in range(5):
        x = crandn(rng, rep.n)
        lhs = np.kron(np.eye(rep.m), x[:, None]).T @ Atil
        rhs = Ahat.conj() @ np.kron(np.eye(rep.q), x[:, None])
        assert rel(lhs, rhs) <= 1e-12
    # kernel of Ahat equals kernel of the Choi matrix
    C = reconstruct_choi(rep)
    _, s, Vh = np.linalg.svd(C)
    null = Vh[rep.m:].conj().T
    assert np.linalg.norm(Ahat @ null) <= 1e-10


def test_identity_stacked_forms():
    Ahat, Atil = stacked_forms(hill(identity_map(2)))
    assert np.allclose(Ahat, vec(np.eye(2))[None, :])
    assert Atil.shape == (2, 2)
    assert stacked_forms(hill(zero_map(2)))[0].shape == (0, 4)


def test_reconstruct_is_linear_in_H():
    rep = hill(random_star_linear(2, 3, 3, seed=1))
    doubled = HillRepresentation(rep.n, rep.q, 2 * rep.H, rep.As)
    assert rel(reconstruct(doubled).L, 2 * reconstruct(rep).L) <= 1e-15


def test_hill_from_A_identity():
    rep = hill_from_A(identity_map(2), [2 * np.eye(2)])
    assert np.allclose(rep.H, [[0.25]], atol=1e-15)
    assert rel(reconstruct(rep).L, np.eye(4)) <= 1e-14


def test_hill_from_A_transpose():
    As = [E(0, 0), E(0, 1), E(1, 0), E(1, 1)]
    rep = hill_from_A(transpose_map(2), As)
    assert np.allclose(rep.H, shuffle(2), atol=1e-15)
    with pytest.raises(SpanDeficient):
        hill_from_A(transpose_map(2), As[:3])
    with pytest.raises(SpanDeficient):
        hill_from_A(transpose_map(2), [E(0, 0), E(0, 1), E(1, 0), E(0, 0)])


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 3), st.integers(1, 3), st.integers(0, 2**32 - 1))
def test_all_constructions_agree(n, q, seed):
    rng = np.random.default_rng(seed)
    lmap = random_star_linear(n, q, int(rng.integers(1, n * q + 1)), seed)
    m = minimal_rank(lmap)
    ref = hill(lmap, "blocks")
    T = crandn(rng, m, m)
    As = np.einsum("kl,lij->kij", T, ref.As)  # another basis of the span
    rep_a = hill_from_A(lmap, As)
    assert rel(rep_a.H, rep_a.H.conj().T) <= 1e-10
    Ahat, _ = stacked_forms(ref)
    rep_k = hill_from_kernel_matched(lmap, Ahat)
    assert rel(rep_k.H, ref.H) <= 1e-10
    for rep in (rep_a, rep_k):
        assert rel(reconstruct(rep).L, lmap.L) <= 1e-10


def test_kernel_matched_errors():
    lmap = random_star_linear(2, 2, 2, seed=8)
    Ahat, _ = stacked_forms(hill(lmap))
    with pytest.raises(KernelMismatch):
        hill_from_kernel_matched(lmap, Ahat[:1])
    with pytest.raises(KernelMismatch):
        hill_from_kernel_matched(lmap, np.vstack([Ahat[0], Ahat[0]]))
    with pytest.raises(KernelMismatch):
        hill_from_kernel_matched(lmap, crandn(np.random.default_rng(1), 2, 4))


def test_compare_same_rep():
    lmap = random_star_linear(3, 2, 3, seed=4)
    rep = hill(lmap)
    bridge = compare(rep, rep)
    assert np.allclose(bridge.Phi, np.eye(3), atol=1e-12)
    assert np.allclose(bridge.Xi, rep.H, atol=1e-12)


def test_compare_identity_scaled():
    repA = hill(identity_map(2))
    repB = hill_from_A(identity_map(2), [2 * np.eye(2)])
    bridge = compare(repA, repB)
    assert np.allclose(bridge.Phi, [[2]], atol=1e-14)
    assert np.allclose(repA.H, bridge.Phi @ repB.H @ bridge.Phi.conj().T, atol=1e-14)


def test_compare_transpose_blocks_vs_qr():
    lmap = transpose_map(2)
    bridge = compare(hill(lmap, "blocks"), hill(lmap, "qr"))
    assert max(bridge.residuals.values()) <= 1e-9


def test_compare_errors():
    a = hill(random_star_linear(2, 2, 2, seed=1))
    b = hill(random_star_linear(2, 2, 2, seed=2))
    with pytest.raises(DifferentMaps):
        compare(a, b)
    with pytest.raises(DifferentMaps):
        compare(a, hill(random_star_linear(2, 2, 3, seed=1)))
    with pytest.raises(MissingProvenance):
        compare(a, HillRepresentation(a.n, a.q, a.H, a.As))


def test_apply_hill_shape_error():
    with pytest.raises(DimensionMismatch):
        apply_hill(hill(identity_map(2)), np.eye(3))
