"""Decoherence-free stabilizer codes from Lindblad master equations."""

from .lindblad import (
    DfsReport,
    LindbladModel,
    TraceDriftError,
    Trajectory,
    check_dfs,
    dissipator,
    evolve,
    gamma_op,
    h_ev,
    purity_derivative,
)
from .metrology import (
    HlReport,
    code_membership,
    extreme_eigvecs,
    n_copy_model,
    probe_state,
    qfi,
    run_protocol,
)
from .models import ModelParseError, load_model, load_preset
from .pauli import (
    MAX_QUBITS,
    NotProductError,
    PauliFactor,
    PauliProduct,
    PauliSum,
    compose,
    from_matrix,
    pauli_matrix,
    pauli_product_from_matrix,
)
from .stabilizer import (
    DFS,
    SDFS,
    CodeSpace,
    StabilizerSet,
    Theorem7Report,
    build_stabilizers,
    centralizer_membership,
    joint_plus_one_eigenspace,
    verify_theorem_7,
)
from .vecform import (
    VecVector,
    devectorize,
    in_vec_dual,
    standard_formalism_roundtrip,
    vec_sum,
    vec_symplectic,
    vectorize,
    verify_vec_theorem,
    zeta_vec_equivalence,
)
from .zeta import (
    NotZetaRepresentable,
    ZetaCode,
    ZetaVector,
    check_code_constraints,
    in_zeta_dual,
    symplectic_form,
    verify_theorem_16,
    zeta,
    zeta_inverse,
    zeta_sum,
)

__version__ = "0.1.0"
