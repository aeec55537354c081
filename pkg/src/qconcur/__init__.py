"""Two-qubit entanglement measures and a closed-form rank-3 concurrence."""
from .convex_roof import RoofConfig, RoofResult, convex_roof_concurrence, decomposition_from_unitary, random_density
from .measures import (
    amplitude_concurrence,
    binary_entropy,
    complex_concurrence_pure,
    concurrence_pure,
    entanglement_of_formation,
    wootters_concurrence,
)
from .rank3 import (
    CaseLabel,
    TripleMixture,
    case_d_concurrence,
    classify_real_case,
    concurrence_bounds,
    concurrence_squared_rank3,
    pairwise_complex_concurrences,
    quartet_states,
    reduced_symmetric_concurrence,
)
from .states import (
    CoherentPairSpec,
    Decomposition,
    DensityMatrix4,
    PureTwoQubit,
    density_from_decomposition,
    eigendecompose_density,
    entangled_coherent_pure,
    make_density,
    make_pure,
    su2_coherent_qubit,
    su2_coherent_spin_j,
)

__version__ = "0.1.0"
