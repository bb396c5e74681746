"""Exact label recovery on noisy graphs via SDP relaxation and dual certificates."""

from ._backend import BACKEND
from .bounds import RecoveryBounds, combined, eps1, eps2, smoothed_cheeger_bound
from .graph import (
    CutReport,
    Graph,
    cheeger_exact,
    complete,
    cycle,
    erdos_renyi,
    grid,
    is_connected,
    max_degree,
    random_regular,
    smooth,
)
from .observe import (
    NoiseParams,
    Observations,
    alpha,
    generate_observations,
    score_full,
    score_quadratic,
)
from .solve import (
    CertificateReport,
    GramSolution,
    PipelineResult,
    brute_force_max,
    build_certificate,
    recover,
    round_to_labels,
    solve_sdp,
    stage2_select,
)
from .spectral import (
    EigenSystem,
    cheeger_bounds_spectral,
    laplacian,
    lemma1_check,
    rayleigh,
    signed_laplacian,
    symmetric_eigen,
    theorem1_bound,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "CertificateReport",
    "CutReport",
    "EigenSystem",
    "GramSolution",
    "Graph",
    "NoiseParams",
    "Observations",
    "PipelineResult",
    "RecoveryBounds",
    "alpha",
    "brute_force_max",
    "build_certificate",
    "cheeger_bounds_spectral",
    "cheeger_exact",
    "combined",
    "complete",
    "cycle",
    "eps1",
    "eps2",
    "erdos_renyi",
    "generate_observations",
    "grid",
    "is_connected",
    "laplacian",
    "lemma1_check",
    "max_degree",
    "random_regular",
    "rayleigh",
    "recover",
    "round_to_labels",
    "score_full",
    "score_quadratic",
    "signed_laplacian",
    "smooth",
    "smoothed_cheeger_bound",
    "solve_sdp",
    "stage2_select",
    "symmetric_eigen",
    "theorem1_bound",
    "__version__",
]
