"""Random projections for linear programming in standard form."""
from .errors import LpSketchError
from .lp_model import (
    NormalizedLp,
    QualityMetrics,
    StandardFormLp,
    denormalize_solution,
    load_lp,
    normalize,
    quality_metrics,
    save_lp,
)
from .solver import SolveResult, Status, brute_force_optimum, solve, solve_with_budget
from .sketch import (
    DistortionStats,
    Projector,
    ProjectorKind,
    apply,
    derive_seed,
    distortion_stats,
    extended_projector,
    projected_dimension,
    sample_projector,
)
from .project import (
    MembershipResult,
    ProjectedLp,
    a_norm,
    in_cone,
    in_conv_hull,
    preservation_trial,
    project_lp,
    project_lp_with_budget,
)
from .retrieve import (
    Method,
    RetrievalReport,
    dual_lift,
    full_pipeline,
    retrieve_basis_alg2,
    retrieve_pseudoinverse,
    run_pipeline,
)
from .instances import GenConfig, gen_feasible, gen_infeasible

__version__ = "0.1.0"

__all__ = [
    "SolveResult",
    "Status",
    "brute_force_optimum",
    "solve",
    "solve_with_budget",
    "NormalizedLp",
    "QualityMetrics",
    "StandardFormLp",
    "denormalize_solution",
    "load_lp",
    "normalize",
    "quality_metrics",
    "save_lp",
    "DistortionStats",
    "Projector",
    "ProjectorKind",
    "apply",
    "derive_seed",
    "distortion_stats",
    "extended_projector",
    "projected_dimension",
    "sample_projector",
    "MembershipResult",
    "ProjectedLp",
    "a_norm",
    "in_cone",
    "in_conv_hull",
    "preservation_trial",
    "project_lp",
    "project_lp_with_budget",
    "Method",
    "RetrievalReport",
    "dual_lift",
    "full_pipeline",
    "retrieve_basis_alg2",
    "retrieve_pseudoinverse",
    "run_pipeline",
    "LpSketchError",
    "GenConfig",
    "gen_feasible",
    "gen_infeasible",
]
