"""Attribute reduction over covering rough sets.

Pipeline: validate covers over a universe, compute minimal-description
granules, build a discernibility matrix (the single-membership form or the
legacy pairwise-inclusion form), then enumerate the attribute core and all
reducts as minimal hitting sets — cross-checkable against a brute-force
oracle and benchmarkable for construction cost.
"""

from .backend import active_backend
from .bench import BenchReport, SyntheticSpec, cross_check, generate_family, run_bench
from .discernibility import (
    DiscernibilityMatrix,
    LegacyMatrix,
    MatrixLawReport,
    build_legacy_matrix,
    build_matrix,
    check_matrix_laws,
)
from .errors import CovredError
from .granulation import (
    NeighborhoodMap,
    cover_maps,
    family_granule,
    induced_cover,
    induced_cover_family,
    lower_approx,
    minimal_description,
    upper_approx,
)
from .hitting import absorb, minimal_hitting_sets, minimal_models
from .ingestion import (
    Categorical,
    IntervalBins,
    NumericTolerance,
    Table,
    TableDerivationConfig,
    covers_from_table,
    parse_cover_file,
    read_csv_table,
    serialize_family,
)
from .model import Cover, CoverFamily, Universe, is_partition, validate_cover
from .reduction import (
    ReductSet,
    all_reducts,
    all_reducts_legacy,
    brute_force_reducts,
    core_from_matrix,
    is_covering_preserving,
    is_indispensable,
    reduct_check,
)

__version__ = "0.1.0"

__all__ = [
    "BenchReport",
    "Categorical",
    "Cover",
    "CoverFamily",
    "CovredError",
    "DiscernibilityMatrix",
    "IntervalBins",
    "LegacyMatrix",
    "MatrixLawReport",
    "NeighborhoodMap",
    "NumericTolerance",
    "ReductSet",
    "SyntheticSpec",
    "Table",
    "TableDerivationConfig",
    "Universe",
    "absorb",
    "active_backend",
    "all_reducts",
    "all_reducts_legacy",
    "brute_force_reducts",
    "build_legacy_matrix",
    "build_matrix",
    "check_matrix_laws",
    "core_from_matrix",
    "cover_maps",
    "covers_from_table",
    "cross_check",
    "family_granule",
    "generate_family",
    "induced_cover",
    "induced_cover_family",
    "is_covering_preserving",
    "is_indispensable",
    "is_partition",
    "lower_approx",
    "minimal_description",
    "minimal_hitting_sets",
    "minimal_models",
    "parse_cover_file",
    "read_csv_table",
    "reduct_check",
    "run_bench",
    "serialize_family",
    "upper_approx",
    "validate_cover",
]
