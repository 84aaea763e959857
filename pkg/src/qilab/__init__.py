"""qilab: finite-dimensional quantum information toolkit."""

from .tensor import (
    DEFAULT_SIZE_CAP,
    EigDecomposition,
    hermitian_eig,
    is_hermitian,
    partial_trace,
    partial_transpose,
    permutation_operator,
    swap_operator,
    tensor,
    trace_distance,
    trace_norm,
)
from .states import (
    DensityMatrix,
    KrausChannel,
    NaimarkDilation,
    Povm,
    PureState,
    ZeroProbabilityError,
    apply_channel,
    bell_basis,
    bloch_state,
    bloch_vector,
    born_probabilities,
    depolarizing_channel,
    from_ensemble,
    ghz_state,
    maximally_mixed,
    naimark_dilate,
    noisy_epr,
    pauli_rotation,
    phi_plus,
    post_measurement,
    quantum_instrument,
    random_density_matrix,
    random_pure_state,
    random_separable_state,
    random_unitary,
    standard_state,
    tetrahedron_povm,
    unitary_channel,
    w_state,
    werner_antisymmetric,
    werner_symmetric,
)
from .entropy import (
    CompressionReport,
    TypicalSetReport,
    binary_entropy,
    binary_relative_entropy,
    classical_mutual_information,
    classical_pinsker_bound,
    compression_trial,
    information_measures,
    quantum_pinsker_bound,
    shannon_entropy,
    typical_mass_lower_bound,
    typical_set,
    typical_subspace_projector,
    von_neumann_entropy,
)
from .pure import (
    SchmidtDecomposition,
    SloccClass,
    TeleportTranscript,
    classify_three_qubit,
    dilution_rank_bound,
    distillation_yield,
    entanglement_entropy,
    hyperdeterminant,
    largest_marginal_eigenvalues,
    schmidt,
    slocc_apply,
    teleport,
    three_qubit_spectra_compatible,
    three_qubit_state_from_spectra,
    unconditioned_bob_state,
    w_polytope_check,
)
from .separability import (
    DataHidingReport,
    FeasStatus,
    FeasibilityReport,
    MotzkinStrausReport,
    PptVerdict,
    bcy_inequality_check,
    chsh_witness,
    data_hiding_bias,
    data_hiding_bound_matrix,
    eigen_witness,
    flip_witness,
    h_n_ext,
    h_sep_sampled,
    k_extendibility,
    motzkin_straus,
    ppt_check,
    slater_state,
    witness_value,
)
from .chsh import (
    CLASSICAL_OPTIMUM,
    OPTIMAL_ANGLES,
    QUANTUM_OPTIMUM,
    TSIRELSON,
    DeterministicStrategy,
    QuantumStrategy,
    bell_operator,
    bias,
    chsh_classical_optimum,
    chsh_optimize,
    chsh_value,
    optimal_observables,
    optimal_strategy,
)
from .schur import (
    SpectrumEstimate,
    SpinBlock,
    definetti_error_bound,
    estimation_overlap,
    estimation_overlap_exact,
    haar_moment_deviation,
    keyl_werner_estimate,
    sample_spin_outcomes,
    spectrum_estimation_distribution,
    spectrum_tail_bound,
    spin_multiplicity,
    spin_multiplicity_bound,
    spin_multiplicity_recursive,
    spin_projectors,
    symmetric_dimension,
    symmetric_projector,
    symmetric_projector_from_permutations,
    symmetric_purification,
)

__version__ = "0.1.0"
