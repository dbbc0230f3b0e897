"""wigosc: closed-form phase-space analysis of the quantum harmonic oscillator.

Wigner states and their marginals, conditional kinetic/potential energy
profiles with poles at the scaled Hermite zeros, exact rational coefficient
tables, stationarity/acceleration checks, and an independent quadrature
oracle that validates every closed form.
"""

__version__ = "0.1.0"

from .polyspecial import (  # noqa: E402
    N_MAX,
    ZERO_TOL,
    DegreeOverflowError,
    HermiteZeroSet,
    hermite,
    hermite_derivatives,
    hermite_zeros,
    laguerre,
    laguerre_derivative,
)
from .oscillator import (  # noqa: E402
    OscillatorParams,
    PhaseGrid,
    energy,
    make_params,
    marginal_v,
    marginal_x,
    sample_grid,
    scaled_energy,
    wigner,
    wigner_momentum,
)
from .coeffs import (  # noqa: E402
    CoefficientTable,
    adjacent_moment_sum,
    coefficient_table,
    hermite_square_at_zero,
    laguerre_combination,
    verify_hermite_laguerre_identity,
)
from .moments import (  # noqa: E402
    POLE_GUARD_SIGMA,
    GlobalMoments,
    MomentProfile,
    PoleProximityError,
    energy_profile,
    global_moments,
    pole_set,
    second_moment_flux,
    second_moment_profile,
    v2_conditional,
    v2_via_quantum_potential,
    x2_conditional,
)
from .dynamics import (  # noqa: E402
    D_MAX,
    DENSITY_FLOOR_RATIO,
    NodeProximityError,
    PolynomialPotential,
    ResidualReport,
    ZeroDensityError,
    moyal_acceleration,
    quantum_potential,
    quantum_pressure_check,
    vlasov_residual,
)
from .oracle import (  # noqa: E402
    DEFAULT_NODE_COUNT,
    QuadratureRule,
    VanishingDenominatorError,
    conditional_moment_oracle,
    gauss_hermite_rule,
    global_moment_oracle,
    integrate_gaussian_weighted,
    marginal_oracle,
    trapezoid_rule,
)
from .report import CheckResult, VerificationReport  # noqa: E402
from .verification import VerifyConfig, run_verification  # noqa: E402
