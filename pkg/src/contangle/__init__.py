"""Residual contangle of permutation-invariant Gaussian states.

Continuous-variable entanglement obeys a trade-off: the entanglement one
mode shares with everybody else bounds the sum of what it shares with
each subset.  For fully symmetric (permutation-invariant) Gaussian states
every quantity in that trade-off has a closed form, and the leftover --
the residual contangle -- measures genuinely multipartite entanglement.
This package evaluates those closed forms, the alternating-sum residuals
(in extended precision, since the sums cancel catastrophically for large
ensembles), the recursive decomposition into K-party layers, the
molecular coarse-graining, and the teleportation-network fidelity that
makes the residual operationally accessible.
"""

from .config import TOL, Tolerances
from .formulas import (
    ContangleValue,
    PurityTriple,
    asinh_sq,
    bipartite_contangle,
    db_from_r_bar,
    decomposition_term,
    det_reduced,
    localized_purities,
    r_bar_from_db,
)
from .gaussian import (
    CovarianceMatrix,
    SqueezingParams,
    build_pure_symmetric_cm,
    partial_trace,
    purity,
    solve_standard_form,
    symplectic_eigenvalues,
    symplectic_form,
)
from .kernels import SumResult, backend_name, comparison_sum, residual_sum
from .monogamy import (
    ComparisonSequence,
    Decomposition,
    DecompositionTerm,
    MoleculePartition,
    MonotonicityReport,
    PositivityReport,
    SandwichBounds,
    SymmetricState,
    comparison_alternating_sum,
    comparison_gamma_value,
    comparison_value,
    decompose_state,
    gaussian_oracle,
    molecular_residual,
    monotonicity_scan,
    positivity_scan,
    recursive_decomposition,
    residual_contangle,
    residual_contangle_extended,
    sandwich_constants,
    symmetric_closed_form,
    weak_ckw_residual,
)
from .teleportation import (
    CLASSICAL_FIDELITY,
    FidelityPoint,
    fidelity_from_squeezing,
    residual_from_fidelity,
    squeezing_from_fidelity,
)

__version__ = "0.1.0"

__all__ = [
    "TOL",
    "Tolerances",
    "ContangleValue",
    "PurityTriple",
    "asinh_sq",
    "bipartite_contangle",
    "db_from_r_bar",
    "decomposition_term",
    "det_reduced",
    "localized_purities",
    "r_bar_from_db",
    "CovarianceMatrix",
    "SqueezingParams",
    "build_pure_symmetric_cm",
    "partial_trace",
    "purity",
    "solve_standard_form",
    "symplectic_eigenvalues",
    "symplectic_form",
    "SumResult",
    "backend_name",
    "comparison_sum",
    "residual_sum",
    "ComparisonSequence",
    "Decomposition",
    "DecompositionTerm",
    "MoleculePartition",
    "MonotonicityReport",
    "PositivityReport",
    "SandwichBounds",
    "SymmetricState",
    "comparison_alternating_sum",
    "comparison_gamma_value",
    "comparison_value",
    "decompose_state",
    "gaussian_oracle",
    "molecular_residual",
    "monotonicity_scan",
    "positivity_scan",
    "recursive_decomposition",
    "residual_contangle",
    "residual_contangle_extended",
    "sandwich_constants",
    "symmetric_closed_form",
    "weak_ckw_residual",
    "CLASSICAL_FIDELITY",
    "FidelityPoint",
    "fidelity_from_squeezing",
    "residual_from_fidelity",
    "squeezing_from_fidelity",
    "__version__",
]
