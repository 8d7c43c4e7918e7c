"""Sharp generalized Bohr radii for bounded analytic functions on shifted disks."""

__version__ = "0.1.0"

from ._kernels import active_backend, set_backend
from .bohr import (
    BohrReport,
    ExtremalMargin,
    bohr_sum,
    extremal_margin,
    p_bound_check,
    verify_up_to_radius,
)
from .harness import (
    SuiteConfig,
    SuiteReport,
    brute_force_tail,
    default_config,
    random_bounded_function,
    run_inequality_suite,
    run_sharpness_suite,
)
from .operators import (
    OperatorSpec,
    apply_coefficient_form,
    apply_integral_form,
    gamma_ratio,
    operator_bohr_radius,
    operator_bound,
    pochhammer_ratio,
)
from .radius import (
    NoRootError,
    RadiusQuery,
    RadiusResult,
    gap,
    minimal_root,
    sharpness_window_check,
)
from .series import (
    BlaschkeComposed,
    BoundedFunction,
    CoefficientSeries,
    DomainParams,
    Extremal,
    Raw,
    affine_compose,
    blaschke_coefficients,
    coefficients_of,
    extremal_coefficients,
    lemma_bound_report,
)
from .weights import (
    AlphaCesaro,
    Bernardi,
    BetaCesaro,
    CustomFamily,
    EvenPowers,
    Linear,
    LinearPlusOne,
    OddPowers,
    PowerTail,
    Quadratic,
    WeightFamily,
    make_family,
    phi0,
    phi_k,
    phi_vector,
    tail_sum,
)

__all__ = [name for name in dir() if not name.startswith("_")]
