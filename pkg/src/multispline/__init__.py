"""Shortest-support bases for cardinal multi-spline spaces.

Exact construction of minimal-support generator tuples for sums of
spline spaces of distinct degrees, diagnostics (Riesz bounds, slice
independence, polynomial reproduction) and generalized sampling with
recursive inverse filtering.
"""

from .analysis import (
    GramianSample,
    ReproductionReport,
    RieszReport,
    SliceRank,
    compact_dim,
    gramian,
    overlap_count,
    riesz_bounds,
    slice_independence,
    smoothness_order,
    verify_reproduction,
)
from .builder import (
    CoeffSeq,
    GeneratorSet,
    ReproductionError,
    bspline,
    build_mb_spline,
    compact_space_basis,
    increment_step,
    insertion_step,
    reassemble,
    reproduction_coeffs,
    standardize,
)
from .named import interpolatory_family, named_basis
from .piecewise import (
    PiecewisePoly,
    TailedPiecewisePoly,
    combine,
    finite_difference,
    inner_product,
    monomial,
)
from .sampling import (
    AnalysisFunctional,
    IIRFilterSpec,
    LaurentPolyMatrix,
    Measurements,
    NonInvertibleSystem,
    Reconstruction,
    apply_filter,
    consistency_check,
    direct_formulas,
    invert_filter,
    measure,
    parse_functional,
    parse_functionals,
    reconstruct,
    reconstruct_from_measurements,
    system_matrix,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
