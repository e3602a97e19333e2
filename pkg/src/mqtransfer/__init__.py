"""Block-scaled transfer of multiple-quantum coherence matrices through XX chains.

The library computes how the coherence-order blocks of a small sender density
matrix arrive, scaled but unmixed, at the far end of a spin-1/2 chain with a
thermal background, and it measures and optimizes the region of sender states
that make this exact. A dense brute-force simulator certifies every analytic
formula at small chain length.
"""

from .chain import (
    AmplitudeSet,
    ChainSpec,
    ModeBasis,
    amplitude_set,
    build_modes,
    endpoint_amplitude,
    endpoint_amplitude_grid,
    endpoint_power_max,
    mode_basis,
    transition_amplitude,
    transition_amplitude_grid,
)
from .errors import (
    ConfigurationError,
    DomainError,
    ResourceError,
    SingularInputError,
    ValidationError,
)
from .one_qubit import (
    Qubit1State,
    lambda0_variant_a,
    lambda0_variant_b,
    lambda1_1q,
    perfect_zero_a1,
    receiver_state_1q,
    state_independent_target,
    state_independent_time,
)
from .optimize import (
    CurvePoint,
    OptProblem,
    OptResult,
    first_window,
    lambda2_landmark,
    optimize,
    optimize_lambda0_one,
    summary_table,
    uniform_curve,
)
from .oracle import build_hamiltonian, evolve_and_trace, thermal_background
from .solvers import (
    FirstOrderSolution,
    ZeroOrderSolution,
    first_order_matrix,
    gauge_fix,
    lambda2,
    solve_first_order,
    solve_zero_order,
    zero_order_system,
)
from .states import (
    RegionReport,
    SenderTemplate,
    assemble_sender,
    boundary_sweep,
    c_max_ray,
    is_physical,
    region_metrics,
)
from .two_qubit import (
    AlphaTable,
    CoherenceBlocks,
    alpha_table,
    decompose_blocks,
    matrix_from_coefficients,
    operator_coefficients,
    random_density,
    receiver_from_sender,
    validate_density,
)

__version__ = "0.1.0"
