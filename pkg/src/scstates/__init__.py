"""scstates: Schmidt-correlated multipartite quantum states.

Construct k-partite states of the form sum_{m,n} a_mn |m...m><n...n| from
their N x N coefficient matrices, decide full separability, build
entanglement witnesses, classify pure states under SLOCC, compute
entanglement measures, and cross-validate every closed form against an
internal dense brute-force oracle.
"""

__version__ = "0.1.0"

from .errors import (
    EigenConvergenceError,
    NotHermitianError,
    NotPSDError,
    NotUnitTraceError,
    SizeGuardError,
    UnsupportedDimensionError,
    ValidationError,
)
from .measures import (
    ConcurrenceMethod,
    ConcurrenceReport,
    OptimalSeparable,
    RoofResult,
    concurrence,
    concurrence_pure_bipartite,
    concurrence_pure_multipartite,
    negativity,
    optimal_separable,
    relative_entropy,
    roof_optimizer,
)
from .separability import (
    BlochDecomposition,
    PTSpectrum,
    Witness,
    bloch_decomposition,
    build_witness,
    check_corollary2,
    is_fully_separable,
    pt_spectrum,
    realignment_norm,
    witness_expectation,
)
from .serialize import (
    canonical_dumps,
    dumps_state,
    dumps_witness,
    loads_state,
    state_from_dict,
    state_to_dict,
    witness_to_dict,
)
from .slocc import (
    FilterOperator,
    SloccClass,
    SloccKind,
    apply_filter,
    build_filter,
    classify_pure,
)
from .states import (
    Ensemble,
    PureSCState,
    SCState,
    equal_modulus_ensemble,
    ghz,
    new_pure_sc_state,
    new_sc_state,
    pure_to_mixed,
    random_pure_sc_state,
    random_sc_state,
    spectral_ensemble,
    validate_coeff_matrix,
)

__all__ = [
    "__version__",
    # errors
    "ValidationError",
    "NotHermitianError",
    "NotUnitTraceError",
    "NotPSDError",
    "UnsupportedDimensionError",
    "SizeGuardError",
    "EigenConvergenceError",
    # states
    "SCState",
    "PureSCState",
    "Ensemble",
    "new_sc_state",
    "new_pure_sc_state",
    "validate_coeff_matrix",
    "ghz",
    "pure_to_mixed",
    "spectral_ensemble",
    "equal_modulus_ensemble",
    "random_sc_state",
    "random_pure_sc_state",
    # separability
    "PTSpectrum",
    "Witness",
    "BlochDecomposition",
    "pt_spectrum",
    "is_fully_separable",
    "build_witness",
    "witness_expectation",
    "realignment_norm",
    "bloch_decomposition",
    "check_corollary2",
    # measures
    "ConcurrenceMethod",
    "ConcurrenceReport",
    "OptimalSeparable",
    "RoofResult",
    "negativity",
    "concurrence",
    "concurrence_pure_bipartite",
    "concurrence_pure_multipartite",
    "roof_optimizer",
    "relative_entropy",
    "optimal_separable",
    # slocc
    "SloccKind",
    "SloccClass",
    "FilterOperator",
    "classify_pure",
    "build_filter",
    "apply_filter",
    # serialization
    "canonical_dumps",
    "dumps_state",
    "loads_state",
    "state_to_dict",
    "state_from_dict",
    "dumps_witness",
    "witness_to_dict",
]
