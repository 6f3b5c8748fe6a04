"""Minimal Hill representations of *-linear matrix maps."""

from .errors import (
    BiorthogonalityViolation,
    DifferentMaps,
    DimensionMismatch,
    HillrepError,
    InvalidRank,
    KernelMismatch,
    MissingProvenance,
    NotStarLinear,
    SpanDeficient,
)
from .hill import (
    BasisSelection,
    HillRepresentation,
    RepresentationBridge,
    apply_hill,
    build_hill,
    compare,
    hill,
    hill_from_A,
    hill_from_kernel_matched,
    minimal_rank,
    reconstruct,
    reconstruct_choi,
    representation_residuals,
    select_basis,
)
from .linmap import (
    ChoiMatrix,
    LinearMatrixMap,
    apply,
    choi,
    from_choi,
    from_function,
    from_matricization,
    identity_map,
    is_hermitian_preserving,
    is_star_linear,
    random_star_linear,
    transpose_map,
)
from .reorder import BlockShape, reorder, reorder_inverse
from .structure import analyze_structure, standard_patterns
from .tensorops import kron, shuffle, sum_circ, trace_inner, unvec, vec

__version__ = "0.1.0"

__all__ = [
    "analyze_structure",
    "apply",
    "apply_hill",
    "BasisSelection",
    "BiorthogonalityViolation",
    "BlockShape",
    "build_hill",
    "choi",
    "ChoiMatrix",
    "compare",
    "DifferentMaps",
    "DimensionMismatch",
    "from_choi",
    "from_function",
    "from_matricization",
    "hill",
    "hill_from_A",
    "hill_from_kernel_matched",
    "HillrepError",
    "HillRepresentation",
    "identity_map",
    "InvalidRank",
    "is_hermitian_preserving",
    "is_star_linear",
    "KernelMismatch",
    "kron",
    "LinearMatrixMap",
    "minimal_rank",
    "MissingProvenance",
    "NotStarLinear",
    "random_star_linear",
    "reconstruct",
    "reconstruct_choi",
    "reorder",
    "reorder_inverse",
    "representation_residuals",
    "RepresentationBridge",
    "select_basis",
    "shuffle",
    "SpanDeficient",
    "standard_patterns",
    "sum_circ",
    "trace_inner",
    "transpose_map",
    "unvec",
    "vec",
]
