"""Trans-dimensional involutive MCMC for trace-consuming probabilistic
models: random-walk and Hamiltonian samplers that extend or shrink the
trace dimension on the fly, plus chain diagnostics and a CLI runner."""

from .diagnostics import EmpiricalDist, ess, geometric_pmf, lppd, tvd
from .errors import (
    DimensionCapExceeded,
    GradientUnsupported,
    InitialTraceOutOfSupport,
    InvalidValue,
    InverseUnavailable,
    NoSupportedInstance,
    NpimcmcError,
    PreconditionViolation,
    RejectionBudgetExceeded,
    SliceInvalid,
    SpecValidationError,
    StepCrossesSupportBoundary,
)
from .grad import Dual, grad_U, grad_U_fd, normal_log_pdf, normal_pdf
from .involution import (
    BijectionFamily,
    LeapfrogStepSpec,
    check_projection_commutation,
    direction_wrap,
    leapfrog_slice,
    leapfrog_update,
    leapfrog_updates,
    reversal_fixture,
    swap_involution,
)
from .kernels import (
    AuxKernelFamily,
    entropy_partitioned_kernels,
    entropy_rw_kernel,
    extended_kernel_log_pdf,
    gaussian_iid_kernel,
    gaussian_rw_kernel,
    partitioned_persistent_kernels,
)
from .model import (
    MODEL_REGISTRY,
    Model,
    broken_fixture,
    check_prefix_property,
    conjugate_normal,
    density,
    find_supported_instance,
    geometric,
    geometric_real,
    igmm,
    igmm_synthetic_data,
    make_model,
    random_walk,
)
from .rng import PURPOSES, RngBundle, stream_key
from .sampler import (
    ChainState,
    SamplerConfig,
    StepStats,
    hybrid_npimcmc_step,
    mixture_wrap,
    multistep_npimcmc_step,
    np_hmc,
    np_hmc_persistent,
    np_lookahead_hmc,
    np_mh,
    np_mh_persistent,
    npimcmc_step,
    run_chain,
    uniform_mixture,
)
from .trace_core import (
    EntropyPair,
    EntropyVector,
    State,
    Trace,
    component_log_density,
    drop_prefix,
    entropy_log_density,
    gaussian_log_density,
    project,
)

__version__ = "0.1.0"
