"""Attention dynamics on competition networks.

A small laboratory for a two-store attention model (attention plus a
fading boredom memory per node) competing over a similarity network,
its two-variable spectral reduction, and an imitation intervention whose
effect on the dominant eigenvalue has a closed first-order form. The
experiments module reproduces the desk-scale campaigns end to end, and
the command line wraps everything in reproducible, bit-stable runs.
"""

from .dynamics import (
    ModelParams,
    SimConfig,
    TrajectoryRecord,
    fixed_point_reduced,
    simulate_full,
    simulate_reduced,
)
from .errors import ConfigError, DomainError, NumericalError, StructuralError
from .experiments import (
    ScanResult,
    SweepResult,
    SweepRow,
    default_sigma_grid,
    run_noise_sweep,
    run_scan,
    summarize_attention_effect,
)
from .imitation import (
    VERDICT_INDETERMINATE,
    VERDICT_NO,
    VERDICT_YES,
    ImitationOutcome,
    ImitationSpec,
    PerturbationAnalysis,
    analyze_perturbation,
    apply_imitation,
    condition_lhs,
    evaluate_pair,
    perturbation_matrix,
    predict_delta_lambda,
    rank2_spectrum,
    success_condition,
)
from .network import (
    GENERATOR_KINDS,
    CompetitionNetwork,
    FeatureProfile,
    GeneratorSpec,
    build_network,
    cosine_similarity,
    generate,
    load_network,
    network_from_document,
    network_to_document,
    save_network,
    unit_profile,
)
from .output import format_value, write_scan_csv, write_sweep_csv, write_trajectory_csv
from .spectral import (
    SpectralSummary,
    compute_mu,
    dominant_eigenpair,
    eigenvector_centrality,
    spectral_summary,
)

__version__ = "0.1.0"
