"""Sharp Fourier extension estimates over finite fields.

Exact convolutions of surface measures, sharp L^2 -> L^{2k} constants and
their maximizers, checked by brute force over small fields.
"""

from .errors import *  # noqa: F401,F403
from .field import FieldSpec, make_field, trace, is_square, sqrt_minus_one, roots_j, dual_element
from .characters import (
    CharacterSpec,
    eval_char,
    character_matrix,
    legendre,
    jacobi,
    gauss_sum,
    weighted_gauss_sum,
    general_gauss_sum,
)
from .geometry import (
    SurfaceSpec,
    PointSet,
    TupleSet,
    enumerate_surface,
    count_conic,
    sphere,
    saddle,
    sigma_set,
    critical_set,
    sphere_line_decomposition,
    saddle_line_decomposition,
    cone_slicing,
)
from .transform import (
    SurfaceFunction,
    GridFunction,
    ConvolutionTable,
    extend,
    inverse_transform,
    forward_transform,
    lp_norm,
    l2_surface_norm,
    convolve_counting,
    convolve_fourier,
    combinatorial_lhs,
)
from .formulas import (
    MaximizerParams,
    PhiPolynomials,
    predicted_parabola_conv,
    predicted_conv,
    sharp_constant,
    sharp_constant_power,
    maximizer_family,
    phi_psi,
    phi_psi_derivative_at_zero,
)
from .sharpness import (
    SearchConfig,
    RatioReport,
    ratio,
    random_ratio_suite,
    perturbation_strictness,
    local_search,
    first_variation_check,
)

__version__ = "0.1.0"
