"""Classical block designs, projector-family quantum designs, and the
completely positive maps connecting them: classification, counting-identity
checks, generation, exhaustive search, and bit-exact file formats."""

__version__ = "0.1.0"

from .linalg import (
    DEFAULT_TOL,
    ComplexMatrix,
    NatMatrix,
    Tolerance,
    adjoint,
    kron,
    mat_mul,
    min_eigenvalue_hermitian,
    orthonormalize,
    split_by_projector,
    trace,
    transpose,
)
from .classical import (
    ClassicalDesign,
    DesignParams,
    HomPair,
    IdentityCheck,
    InfeasibleParametersError,
    check_identities,
    classify,
    compose_hom,
    designs_isomorphic,
    dual,
    gen_complete,
    gen_projective_plane,
    search_designs,
    tensor,
    to_block,
    verify_hom,
)
from .quantum import (
    MubFamily,
    QuantumDesign,
    QuantumParams,
    check_identities_q,
    classify_quantum,
    mub_generate,
    mub_verify,
    tensor_q,
    to_classical,
    validate,
)
from .cpmaps import (
    Algebra,
    ChoiMatrix,
    CpMap,
    choi,
    classical_to_cp,
    embed_commutative,
    functor_q,
    functor_q_on_hom,
    is_cp,
    is_trace_preserving,
    quantum_design_to_cp,
    superop_from_choi,
    verify_cp_design,
)
from .catalog import FormatError, catalog_expected, catalog_get, catalog_names

__all__ = [
    "__version__",
    "Tolerance",
    "DEFAULT_TOL",
    "NatMatrix",
    "ComplexMatrix",
    "mat_mul",
    "kron",
    "transpose",
    "adjoint",
    "trace",
    "orthonormalize",
    "split_by_projector",
    "min_eigenvalue_hermitian",
    "ClassicalDesign",
    "DesignParams",
    "HomPair",
    "IdentityCheck",
    "InfeasibleParametersError",
    "classify",
    "check_identities",
    "to_block",
    "verify_hom",
    "compose_hom",
    "tensor",
    "dual",
    "gen_projective_plane",
    "gen_complete",
    "search_designs",
    "designs_isomorphic",
    "QuantumDesign",
    "QuantumParams",
    "MubFamily",
    "validate",
    "classify_quantum",
    "check_identities_q",
    "to_classical",
    "tensor_q",
    "mub_generate",
    "mub_verify",
    "Algebra",
    "CpMap",
    "ChoiMatrix",
    "choi",
    "superop_from_choi",
    "is_cp",
    "is_trace_preserving",
    "classical_to_cp",
    "quantum_design_to_cp",
    "functor_q",
    "functor_q_on_hom",
    "embed_commutative",
    "verify_cp_design",
    "FormatError",
    "catalog_get",
    "catalog_names",
    "catalog_expected",
]
