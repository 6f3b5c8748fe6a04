"""Block-level versus entry-level structure of a *-linear matricization.

For a *-linear map the entries of ``L`` satisfy
``ell[i, j, k, l] == conj(ell[k, l, i, j])`` (block (i, j), entry (k, l)), so
a zero or repetition pattern among the blocks ``L_ij`` holds exactly when the
same pattern holds inside every block.  Patterns are described once, on the
n x q index grid, and evaluated at both levels.
"""

from dataclasses import dataclass

import numpy as np

from .errors import NotStarLinear, SpanDeficient
from .hill import RANK_TOL, block_stack, minimal_rank
from .linmap import DEFAULT_TOL, LinearMatrixMap, is_star_linear

__all__ = [
    "Pattern",
    "zero_pattern",
    "keyed_pattern",
    "standard_patterns",
    "block_level",
    "entry_level",
    "StructureReport",
    "analyze_structure",
    "zero_pattern_dual",
    "repeated_block_dual",
    "orthogonality_levels",
    "orthogonality_dual",
    "hill_from_blocks_entries",
    "random_structured_star_linear",
]


@dataclass(frozen=True)
class Pattern:
    """A structural constraint on an n x q grid of cells.

    ``kind`` is ``"zero"`` (``cells`` is a set of (i, j) that must vanish),
    ``"equal"`` or ``"conjugate"`` (``cells`` is a set of ((i, j), (k, l))
    pairs whose values must agree, respectively agree after conjugation).
    """

    name: str
    kind: str
    cells: frozenset

    def __post_init__(self):
        if self.kind not in ("zero", "equal", "conjugate"):
            raise ValueError(f"unknown pattern kind {self.kind!r}")


def zero_pattern(name, cells):
    return Pattern(name, "zero", frozenset(tuple(c) for c in cells))


def keyed_pattern(name, n, q, key):
    """Equality pattern: cells with the same ``key(i, j)`` must agree."""
    classes = {}
    for i in range(n):
        for j in range(q):
            classes.setdefault(key(i, j), []).append((i, j))
    pairs = set()
    for members in classes.values():
        for a, b in zip(members, members[1:]):
            pairs.add((a, b))
    return Pattern(name, "equal", frozenset(pairs))


def standard_patterns(n, q, band=1):
    """The zero and repetition patterns worth checking on an n x q grid.

    Circulant, symmetric and Hermitian patterns need a square grid and are
    omitted otherwise.
    """
    grid = [(i, j) for i in range(n) for j in range(q)]
    pats = [
        zero_pattern("diagonal", [(i, j) for i, j in grid if i != j]),
        zero_pattern("lower_triangular", [(i, j) for i, j in grid if i < j]),
        zero_pattern("upper_triangular", [(i, j) for i, j in grid if i > j]),
        zero_pattern("band", [(i, j) for i, j in grid if abs(i - j) > band]),
        zero_pattern("hollow", [(i, i) for i in range(min(n, q))]),
        keyed_pattern("toeplitz", n, q, lambda i, j: i - j),
        keyed_pattern("hankel", n, q, lambda i, j: i + j),
        keyed_pattern("centrosymmetric", n, q, lambda i, j: min((i, j), (n - 1 - i, q - 1 - j))),
    ]
    if n == q:
        pats += [
            keyed_pattern("circulant", n, q, lambda i, j: (i - j) % n),
            keyed_pattern("symmetric", n, q, lambda i, j: (min(i, j), max(i, j))),
            Pattern("hermitian", "conjugate",
                    frozenset(((i, j), (j, i)) for i, j in grid if i <= j)),
        ]
    # drop patterns that impose nothing on this grid
    return {p.name: p for p in pats if p.cells}


def _cells_at(ell, pattern, level):
    """Views of the pattern's cells: ``level="block"`` indexes blocks,
    ``level="entry"`` indexes the same entry inside every block."""
    if level == "block":
        return lambda c: ell[c[0], c[1]]
    return lambda c: ell[:, :, c[0], c[1]]


def _holds(lmap, pattern, level, tol):
    at = _cells_at(lmap.blocks(), pattern, level)
    if pattern.kind == "zero":
        return all(np.max(np.abs(at(c))) <= tol for c in pattern.cells)
    if pattern.kind == "equal":
        return all(np.max(np.abs(at(a) - at(b))) <= tol for a, b in pattern.cells)
    return all(np.max(np.abs(at(a) - at(b).conj())) <= tol for a, b in pattern.cells)


def block_level(lmap, pattern, tol=DEFAULT_TOL):
    """Does the pattern hold among the blocks L_ij?"""
    return _holds(lmap, pattern, "block", tol)


def entry_level(lmap, pattern, tol=DEFAULT_TOL):
    """Does the pattern hold inside every block?"""
    return _holds(lmap, pattern, "entry", tol)


def _require_star_linear(lmap, tol):
    if not is_star_linear(lmap, tol):
        raise NotStarLinear(f"{lmap!r} is not *-linear within {tol:.1e}")


def _dual(lmap, pattern, tol):
    _require_star_linear(lmap, tol)
    return block_level(lmap, pattern, tol) == entry_level(lmap, pattern, tol)


def zero_pattern_dual(lmap, cells, tol=DEFAULT_TOL):
    """True when "L_ij = 0 for all (i, j) in cells" and "entry (i, j) of every
    block vanishes for all (i, j) in cells" have the same truth value."""
    return _dual(lmap, zero_pattern("custom", cells), tol)


def repeated_block_dual(lmap, pairs, tol=DEFAULT_TOL, conjugate=False):
    """Equivalence of ``L_ij == L_kl`` (for all given pairs) with equality of
    entries (i, j) and (k, l) in every block.  With ``conjugate=True`` the
    relations are ``L_ij == conj(L_kl)``."""
    kind = "conjugate" if conjugate else "equal"
    return _dual(lmap, Pattern("custom", kind, frozenset(tuple(map(tuple, p)) for p in pairs)), tol)


def orthogonality_levels(lmap, a, b):
    """Inner products ``(<L_a, L_b>, <E_a, E_b>)`` where ``E_a`` collects
    entry ``a`` of every block.  For *-linear maps the first equals the
    conjugate of the second."""
    ell = lmap.blocks()
    La, Lb = ell[a[0], a[1]], ell[b[0], b[1]]
    Ea, Eb = ell[:, :, a[0], a[1]], ell[:, :, b[0], b[1]]
    return complex(np.vdot(Lb, La)), complex(np.vdot(Eb, Ea))


def orthogonality_dual(lmap, a, b, tol=DEFAULT_TOL):
    """Are blocks ``a`` and ``b`` orthogonal?  Evaluated at block and at entry
    level; a disagreement between the two means the tolerance broke down."""
    _require_star_linear(lmap, tol)
    block_ip, entry_ip = orthogonality_levels(lmap, a, b)
    block_orth, entry_orth = abs(block_ip) <= tol, abs(entry_ip) <= tol
    if block_orth != entry_orth:
        raise RuntimeError(f"orthogonality verdicts differ: {block_ip!r} vs {entry_ip!r}")
    return block_orth


@dataclass(frozen=True)
class StructureReport:
    star_linear: bool
    block_patterns: frozenset
    entry_patterns: frozenset
    duality_consistent: bool


def analyze_structure(lmap, tol=DEFAULT_TOL, patterns=None):
    pats = standard_patterns(lmap.n, lmap.q) if patterns is None else patterns
    blocks = frozenset(name for name, p in pats.items() if block_level(lmap, p, tol))
    entries = frozenset(name for name, p in pats.items() if entry_level(lmap, p, tol))
    return StructureReport(is_star_linear(lmap, tol), blocks, entries, blocks == entries)


def hill_from_blocks_entries(lmap, picks, tol=RANK_TOL):
    """Hill matrix for the basis ``L_k = L_{picks[k]}``, read off the entries:
    ``H[k, l] = L_{picks[k]}[picks[l]]``."""
    scale = max(1.0, float(np.max(np.abs(lmap.L))))
    _require_star_linear(lmap, tol * scale)
    picks = [tuple(p) for p in picks]
    m = minimal_rank(lmap, tol)
    if len(picks) != m:
        raise SpanDeficient(f"{len(picks)} blocks picked, the block span has dimension {m}")
    if m:
        q = lmap.q
        P = block_stack(lmap)[:, [i * q + j for i, j in picks]]
        s = np.linalg.svd(P, compute_uv=False)
        if s[-1] <= tol * s[0]:
            raise SpanDeficient("picked blocks are linearly dependent")
    ell = lmap.blocks()
    H = np.empty((m, m), dtype=np.complex128)
    for k, (ik, jk) in enumerate(picks):
        for l, (il, jl) in enumerate(picks):
            H[k, l] = ell[ik, jk, il, jl]
    return H


def random_structured_star_linear(n, q, patterns=(), seed=0, field="complex"):
    """Random *-linear map whose blocks satisfy every given pattern.

    Entries ``ell[i, j, k, l]`` are linked by the *-linearity relation and by
    each pattern at block and entry level; linked entries share one random
    value (conjugated along odd links), classes linked to their own conjugate
    are real and classes touching a zero cell vanish.
    """
    rng = np.random.default_rng(seed)
    size = n * q * n * q
    parent = list(range(size))
    parity = [0] * size  # 1: value is conjugate of parent's
    real = [False] * size
    zero = [False] * size

    def idx(i, j, k, l):
        return ((i * q + j) * n + k) * q + l

    def find(x):
        if parent[x] == x:
            return x, 0
        root, p = find(parent[x])
        parent[x], parity[x] = root, parity[x] ^ p
        return root, parity[x]

    def link(x, y, conj):
        (rx, px), (ry, py) = find(x), find(y)
        if rx == ry:
            if px ^ py != conj:
                real[rx] = True
            return
        parent[ry], parity[ry] = rx, px ^ py ^ conj
        real[rx] |= real[ry]
        zero[rx] |= zero[ry]

    grid = [(i, j) for i in range(n) for j in range(q)]
    for a in grid:
        for b in grid:
            link(idx(*a, *b), idx(*b, *a), 1)
    for pat in patterns:
        for c in pat.cells:
            if pat.kind == "zero":
                for g in grid:
                    zero[find(idx(*c, *g))[0]] = True
                    zero[find(idx(*g, *c))[0]] = True
            else:
                a, b = c
                conj = int(pat.kind == "conjugate")
                for g in grid:
                    link(idx(*a, *g), idx(*b, *g), conj)
                    link(idx(*g, *a), idx(*g, *b), conj)
    values = rng.standard_normal(size) + (1j * rng.standard_normal(size) if field == "complex" else 0)
    ell = np.empty(size, dtype=np.complex128)
    for x in range(size):
        root, p = find(x)
        if zero[root]:
            v = 0.0
        elif real[root] or field != "complex":
            v = values[root].real
        else:
            v = values[root]
        ell[x] = np.conj(v) if p else v
    ell = ell.reshape(n, q, n, q)
    return LinearMatrixMap(n, q, ell.transpose(0, 2, 1, 3).reshape(n * n, q * q))
