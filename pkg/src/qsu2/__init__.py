"""Representations of the quantum algebra su_q(2) in the eigenbasis of the
deformed J_x combination, and a machine-precision verifier for every identity
the construction rests on."""

from .casimir import (
    CasimirChoice,
    NoInvertibleSolutionError,
    PipelineResult,
    RFamily,
    admissible_casimirs,
    build_K,
    fix_R_by_spectrum,
    physical_casimir,
    solve_R_family,
    solve_physical_R,
    verify_R,
)
from .classical_limit import ClassicalTriple, limit_residuals, undeformed_su2
from .heisenberg import (
    ClassicalSolution,
    LadderAnsatz,
    QuantumRealization,
    ladder_shift_residual,
    operator_commutator_residual,
    poisson_residual,
    shift_eq_residual,
)
from .qcore import (
    GuardRailError,
    Spin,
    VerificationError,
    commutator,
    qnumber,
    rel_residual,
)
from .standard_rep import (
    BasisChange,
    DerivedGenerators,
    StandardRep,
    build_standard,
    casimir_value,
    derive_generators,
    s_eigenbasis,
)
from .triangular_rep import (
    SRPair,
    alpha_ratio_residual,
    build_r_closed_form,
    build_r_recursive,
    build_s_diag,
    build_sr,
    chain_coefficient,
    extract_and_check_alphas,
)

__version__ = "0.1.0"

__all__ = [
    "BasisChange",
    "CasimirChoice",
    "ClassicalSolution",
    "ClassicalTriple",
    "DerivedGenerators",
    "GuardRailError",
    "LadderAnsatz",
    "NoInvertibleSolutionError",
    "PipelineResult",
    "QuantumRealization",
    "RFamily",
    "SRPair",
    "Spin",
    "StandardRep",
    "VerificationError",
    "admissible_casimirs",
    "alpha_ratio_residual",
    "build_K",
    "build_r_closed_form",
    "build_r_recursive",
    "build_s_diag",
    "build_sr",
    "build_standard",
    "casimir_value",
    "chain_coefficient",
    "commutator",
    "derive_generators",
    "extract_and_check_alphas",
    "fix_R_by_spectrum",
    "ladder_shift_residual",
    "limit_residuals",
    "operator_commutator_residual",
    "physical_casimir",
    "poisson_residual",
    "qnumber",
    "rel_residual",
    "s_eigenbasis",
    "shift_eq_residual",
    "solve_R_family",
    "solve_physical_R",
    "undeformed_su2",
    "verify_R",
]
