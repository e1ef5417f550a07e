"""Gauss-Seidel convergence analysis for H-matrices"""
import logging

from ._errors import (  # noqa: F401
    HGSError,
    ZeroDiagonal,
    DimensionMismatch,
    BadIndexSet,
    NotIrreducible,
    BadAngle,
    BadId,
    BadClass,
    GenerationFailed,
    ParseError,
    NoConvergence,
    SingularBlock,
    ZeroPivot,
)
from ._linalg import (  # noqa: F401
    IterationMethod,
    Splitting,
    Spectrum,
    split,
    iteration_matrix,
    eigenvalues,
    spectral_radius,
    determinant,
    schur_complement,
)
from ._graph import (  # noqa: F401
    FrobeniusForm,
    is_irreducible,
    frobenius_normal_form,
    strongly_connected_components,
)
from ._taxonomy import (  # noqa: F401
    Dominance,
    MTag,
    HClass,
    Classification,
    GDScaling,
    comparison_matrix,
    dominance_class,
    classify_m,
    classify_h,
    gd_scaling,
    is_gde_block,
    is_hpd,
    perron_vector,
    sample_equimodular,
    classify,
)
from ._ray import (  # noqa: F401
    RayFamily,
    RayVerdict,
    FREE,
    ray_test,
    construct_ray,
)
from ._convergence import (  # noqa: F401
    Status,
    Verdict,
    ConvergenceReport,
    numerical_verdict,
    theorem_verdict,
    analyze,
)
from ._precondition import (  # noqa: F401
    PreconditionerKind,
    Preconditioner,
    PreconditionReport,
    first_column,
    gauss_transform,
    gauss_chain,
    column_eliminator,
    schur_preconditioner,
    verify_preconditioned,
)
from ._solver import (  # noqa: F401
    SolveStatus,
    SolveResult,
    solve,
    preconditioned_solve,
    iteration_vector,
)
from ._corpus import CorpusClass, get, random_in_class  # noqa: F401
from ._grammar import (  # noqa: F401
    parse_matrix,
    parse_vector,
    read_matrix,
    read_vector,
    write_matrix,
    write_vector,
)

logging.getLogger(__name__).addHandler(logging.NullHandler())

__all__ = [
    "HGSError",
    "ZeroDiagonal",
    "DimensionMismatch",
    "BadIndexSet",
    "NotIrreducible",
    "BadAngle",
    "BadId",
    "BadClass",
    "GenerationFailed",
    "ParseError",
    "NoConvergence",
    "SingularBlock",
    "ZeroPivot",
    "IterationMethod",
    "Splitting",
    "Spectrum",
    "split",
    "iteration_matrix",
    "eigenvalues",
    "spectral_radius",
    "determinant",
    "schur_complement",
    "FrobeniusForm",
    "is_irreducible",
    "frobenius_normal_form",
    "strongly_connected_components",
    "Dominance",
    "MTag",
    "HClass",
    "Classification",
    "GDScaling",
    "comparison_matrix",
    "dominance_class",
    "classify_m",
    "classify_h",
    "gd_scaling",
    "is_gde_block",
    "is_hpd",
    "perron_vector",
    "sample_equimodular",
    "classify",
    "RayFamily",
    "RayVerdict",
    "FREE",
    "ray_test",
    "construct_ray",
    "Status",
    "Verdict",
    "ConvergenceReport",
    "numerical_verdict",
    "theorem_verdict",
    "analyze",
    "PreconditionerKind",
    "Preconditioner",
    "PreconditionReport",
    "first_column",
    "gauss_transform",
    "gauss_chain",
    "column_eliminator",
    "schur_preconditioner",
    "verify_preconditioned",
    "SolveStatus",
    "SolveResult",
    "solve",
    "preconditioned_solve",
    "iteration_vector",
    "CorpusClass",
    "get",
    "random_in_class",
    "parse_matrix",
    "parse_vector",
    "read_matrix",
    "read_vector",
    "write_matrix",
    "write_vector",
]
__version__ = "0.1.0"
