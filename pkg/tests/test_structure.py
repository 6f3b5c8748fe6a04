import numpy as np
import pytest
from conftest import row_sum_map

from hillrep.errors import NotStarLinear, SpanDeficient
from hillrep.hill import hill
from hillrep.linmap import (
    identity_map,
    is_star_linear,
    random_star_linear,
    transpose_map,
)
from hillrep.structure import (
    Pattern,
    analyze_structure,
    block_level,
    entry_level,
    hill_from_blocks_entries,
    orthogonality_dual,
    orthogonality_levels,
    random_structured_star_linear,
    repeated_block_dual,
    standard_patterns,
    zero_pattern,
    zero_pattern_dual,
)
from hillrep.tensorops import shuffle


def test_pattern_kind_validation():
    with pytest.raises(ValueError):
        Pattern("x", "bogus", frozenset())


def test_standard_patterns_grids():
    square = standard_patterns(3, 3)
    assert {"circulant", "symmetric", "hermitian", "toeplitz", "hankel", "diagonal", "band"} <= set(square)
    rect = standard_patterns(3, 2)
    assert "circulant" not in rect and "hermitian" not in rect
    # band of width 1 on a 2x2 grid imposes nothing and is dropped
    assert "band" not in standard_patterns(2, 2)
    assert standard_patterns(4, 4)["band"].cells == frozenset((i, j) for i in range(4) for j in range(4) if abs(i - j) > 1)


def test_identity_map_structure():
    lmap = identity_map(3)
    off = [(i, j) for i in range(3) for j in range(3) if i != j]
    assert zero_pattern_dual(lmap, off)
    assert block_level(lmap, zero_pattern("off", off)) and entry_level(lmap, zero_pattern("off", off))
    report = analyze_structure(lmap)
    assert "diagonal" in report.block_patterns and "diagonal" in report.entry_patterns
    assert report.duality_consistent and report.star_linear
    # blocks delta_ij I: Toeplitz at both levels
    assert repeated_block_dual(lmap, [((0, 0), (1, 1)), ((1, 1), (2, 2))])


def test_diagonal_block_map_has_diagonal_blocks():
    pat = standard_patterns(3, 3)["diagonal"]
    lmap = random_structured_star_linear(3, 3, [pat], seed=2)
    assert is_star_linear(lmap)
    ell = lmap.blocks()
    for i in range(3):
        for j in range(3):
            if i != j:
                assert not np.any(ell[i, j])
            assert np.count_nonzero(ell[i, j] - np.diag(np.diag(ell[i, j]))) == 0


def test_zeroed_block_row_gives_zero_rows_in_blocks():
    row = zero_pattern("row0", [(0, j) for j in range(3)])
    lmap = random_structured_star_linear(3, 3, [row], seed=4)
    ell = lmap.blocks()
    assert not np.any(ell[0])
    assert not np.any(ell[:, :, 0, :])
    assert zero_pattern_dual(lmap, row.cells)


def test_toeplitz_block_map_has_toeplitz_blocks():
    pat = standard_patterns(3, 3)["toeplitz"]
    lmap = random_structured_star_linear(3, 3, [pat], seed=5)
    assert block_level(lmap, pat) and entry_level(lmap, pat)
    for i in range(3):
        for j in range(3):
            blk = lmap.block(i, j)
            for a in range(2):
                for b in range(2):
                    assert abs(blk[a, b] - blk[a + 1, b + 1]) <= 1e-14


def test_asymmetric_blocks_fail_symmetric_at_both_levels():
    lmap = random_star_linear(3, 3, 5, seed=1)
    sym = standard_patterns(3, 3)["symmetric"]
    assert not np.allclose(lmap.block(0, 1), lmap.block(1, 0))
    assert not block_level(lmap, sym) and not entry_level(lmap, sym)
    assert repeated_block_dual(lmap, sym.cells)


def test_conjugate_pairs():
    herm = standard_patterns(2, 2)["hermitian"]
    lmap = random_structured_star_linear(2, 2, [herm], seed=0)
    assert block_level(lmap, herm) and entry_level(lmap, herm)
    assert repeated_block_dual(lmap, herm.cells, conjugate=True)


def test_requires_star_linear():
    with pytest.raises(NotStarLinear):
        zero_pattern_dual(row_sum_map(), [(0, 1)])
    with pytest.raises(NotStarLinear):
        repeated_block_dual(row_sum_map(), [((0, 0), (1, 1))])
    with pytest.raises(NotStarLinear):
        orthogonality_dual(row_sum_map(), (0, 0), (1, 1))
    with pytest.raises(NotStarLinear):
        hill_from_blocks_entries(row_sum_map(), [(0, 0)])


def test_orthogonality():
    t = transpose_map(2)
    assert orthogonality_dual(t, (0, 0), (1, 1))
    lmap = random_star_linear(2, 3, 4, seed=3)
    assert not orthogonality_dual(lmap, (1, 2), (1, 2))
    block_ip, entry_ip = orthogonality_levels(lmap, (0, 1), (1, 2))
    assert abs(block_ip - np.conj(entry_ip)) <= 1e-12


def test_hill_from_entries_examples():
    assert np.array_equal(hill_from_blocks_entries(transpose_map(2), [(0, 0), (0, 1), (1, 0), (1, 1)]), shuffle(2))
    assert np.array_equal(hill_from_blocks_entries(identity_map(3), [(0, 0)]), [[1]])
    with pytest.raises(SpanDeficient):
        hill_from_blocks_entries(transpose_map(2), [(0, 0), (0, 1), (1, 0)])
    with pytest.raises(SpanDeficient):
        hill_from_blocks_entries(transpose_map(2), [(0, 0), (0, 1), (1, 0), (0, 0)])


@pytest.mark.parametrize("seed", range(5))
def test_hill_from_entries_bit_identical(seed):
    lmap = random_star_linear(3, 2, 4, seed=seed)
    rep = hill(lmap, "blocks")
    assert np.array_equal(hill_from_blocks_entries(lmap, rep.basis.picks), rep.H)


@pytest.mark.parametrize("seed", range(5))
def test_sparse_map_entries_appear_in_H(seed):
    # only the diagonal blocks are nonzero: every nonzero entry of L shows up in H
    lmap = random_structured_star_linear(3, 3, [standard_patterns(3, 3)["diagonal"]], seed=seed)
    rep = hill(lmap, "blocks")
    assert rep.basis.picks == ((0, 0), (1, 1), (2, 2))
    H = hill_from_blocks_entries(lmap, rep.basis.picks)
    for v in lmap.L[lmap.L != 0]:
        assert v in H


@pytest.mark.parametrize("seed", range(5))
def test_repeated_blocks_entries_appear_in_H(seed):
    # block-Toeplitz: each block repeats one of the picked blocks, and every
    # entry of the picked blocks is an entry of H
    lmap = random_structured_star_linear(3, 3, [standard_patterns(3, 3)["toeplitz"]], seed=seed)
    rep = hill(lmap, "blocks")
    assert rep.m == 5
    H = hill_from_blocks_entries(lmap, rep.basis.picks)
    for L in rep.basis.Ls:
        for v in L.ravel():
            assert v in H


@pytest.mark.parametrize("name", sorted(standard_patterns(3, 3)))
def test_structured_generator_satisfies_pattern(name):
    pat = standard_patterns(3, 3)[name]
    for seed in range(5):
        lmap = random_structured_star_linear(3, 3, [pat], seed=seed)
        assert is_star_linear(lmap)
        assert block_level(lmap, pat) and entry_level(lmap, pat)


def test_structured_generator_real_field():
    pat = standard_patterns(2, 3)["toeplitz"]
    lmap = random_structured_star_linear(2, 3, [pat], seed=1, field="real")
    assert lmap.is_real() and is_star_linear(lmap)
