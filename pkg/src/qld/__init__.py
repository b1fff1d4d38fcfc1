"""Classical and quantum Lagrangian descriptors for the 1-DoF Hamiltonian saddle.

The classical descriptor integrates sqrt|q| + sqrt|p| along the exact saddle
flow over a symmetric time window; the quantum descriptor averages the same
functional over Gaussian fluctuations sampled on the rotated steepest-descent
contour.  Quantum fluctuations broaden the invariant manifolds p = +/- q into
bands of root-mean-square width sqrt(hbar N / (4 T lam)) at mode cutoff N.
"""

from .descriptors import (
    GridSpec,
    LDField,
    QuadratureRule,
    classical_ld_field,
    classical_ld_point,
    default_quadrature,
    default_steps,
    generic_ld_point,
    ld_integrand_generic,
    ld_integrand_saddle,
)
from .dynamics import (
    DivergenceError,
    FlowOverflowError,
    PhasePoint,
    SaddleParams,
    TimeGrid,
    VectorFieldSpec,
    rk4_integrate,
    saddle_energy,
    saddle_field_spec,
    saddle_flow,
    saddle_trajectory,
    saddle_vector_field,
)
from .experiments import (
    DiffFieldConfig,
    GridMismatchError,
    RatioRow,
    WidthScanRow,
    desk_fig1_config,
    difference_field,
    fig1_pipeline,
    fig2_pipeline,
    paper_fig1_config,
    ratio_check,
    width_scan,
)
from .gridio import (
    BadMagicError,
    GridFileError,
    TruncatedPayloadError,
    VersionMismatchError,
    read_grid_file,
    write_csv,
    write_grid_file,
)
from .modes import (
    ModeBasis,
    analytic_width,
    closed_form_transverse_variance,
    fluctuation_action_thimble,
    mode_deriv,
    mode_eval,
    mode_second_deriv,
    mode_variance,
    mode_wavenumber,
    transverse_coeff,
    width_ratio,
)
from .thimble import (
    ComplexPath,
    DegenerateManifoldError,
    ModeSample,
    SamplerConfig,
    build_fluctuation,
    fluctuated_path,
    mc_width_estimate,
    quantum_ld_field,
    quantum_ld_point,
    sample_modes,
    sample_stream,
    transverse_coordinate,
    transverse_fluctuation,
)

__version__ = "0.1.0"
