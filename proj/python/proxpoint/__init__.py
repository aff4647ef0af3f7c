"""Projection proximal-point solver for l1-regularized least squares."""

from proxpoint._core import (  # noqa: F401
    Certificate,
    DeconvSpec,
    DimensionError,
    FresnelKernel,
    HologramSpec,
    InnerMethod,
    InnerParams,
    InnerTermination,
    IstaParams,
    IstaResult,
    LinearOperator,
    MuSchedule,
    NormEstimate,
    OperatorKind,
    Problem,
    PppParams,
    RunStatus,
    SolverError,
    SolverTrace,
    SubproblemResult,
    TraceRow,
    certificate,
    damped_ista_step,
    estimate_norm,
    fresnel_kernel,
    gcg_search_direction,
    gcg_step_size,
    ista_run,
    make_circular_conv_1d,
    make_circular_conv_2d,
    make_composition,
    make_dense,
    make_deconvolution_problem,
    make_hat_synthesis,
    make_hologram_problem,
    make_identity,
    make_random_fbi_problem,
    objective,
    oracle_solve,
    project_hyperplane,
    random_particles,
    regularized_objective,
    run_ppp,
    sign_set_projection,
    soft_threshold,
    solve_subproblem,
)

__version__ = "0.1.0"
