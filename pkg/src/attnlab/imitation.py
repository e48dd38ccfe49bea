"""Profile imitation and its first-order spectral consequences.

One node (the imitator) replaces its feature profile with a copy of
another node's (the target), optionally blurred by Gaussian noise and
rescaled to unit norm. Only the imitator's row and column of the weight
matrix change, so the update W_after - W_before has rank 2: its nonzero
eigenvalues form a plus/minus pair with closed-form eigenvectors, and
projecting the update onto the Perron vector gives the first-order shift
of the dominant eigenvalue. The sign of that shift is readable from the
overlap between the positive eigenvector and the Perron vector, which is
what the success condition evaluates.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import sqrt

import numpy as np

from .errors import DomainError, StructuralError
from .network import CompetitionNetwork, FeatureProfile, _readonly, unit_profile
from .spectral import SpectralSummary, _power_iteration, compute_mu, spectral_summary

LEAK_TOL = 1e-15        # allowed magnitude outside the imitator's row/column
CONDITION_TOL = 1e-12   # overlap magnitudes at or below are indeterminate
ISOLATED_TOL = 1e-12    # Perron entries at or below make the condition premise void

VERDICT_YES = "yes"
VERDICT_NO = "no"
VERDICT_INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class ImitationSpec:
    """Who copies whom, how noisily, and how far the blend goes.

    epsilon = 1 applies the full imitation; smaller values move the weights
    only a fraction of the way toward the imitated row, which is what the
    first-order checks use.
    """

    imitator: int
    target: int
    noise_sigma: float = 0.0
    epsilon: float = 1.0

    def __post_init__(self) -> None:
        for name in ("imitator", "target"):
            value = getattr(self, name)
            if int(value) != value or value < 0:
                raise StructuralError(f"{name} must be a nonnegative integer, got {value!r}")
            object.__setattr__(self, name, int(value))
        if self.imitator == self.target:
            raise StructuralError("a node cannot imitate itself")
        if not np.isfinite(self.noise_sigma) or self.noise_sigma < 0.0:
            raise DomainError("noise_sigma must be nonnegative and finite")
        if not 0.0 < self.epsilon <= 1.0:
            raise DomainError("epsilon must lie in (0, 1]")


@dataclass(frozen=True, eq=False)
class PerturbationAnalysis:
    """Closed-form spectrum of one rank-2 weight update.

    strength is the magnitude of the update's two nonzero eigenvalues
    (+strength and -strength). q_plus and q_minus are their unit
    eigenvectors under the sign convention that both have the same entries
    off the imitator and opposite signs at the imitator; both are None for
    a degenerate (zero) update. predicted_delta_lambda is the first-order
    dominant-eigenvalue shift epsilon * v.(P v) for unit-norm Perron v.
    """

    imitator: int
    edge_deltas: np.ndarray  # per-neighbor weight change, zero at the imitator
    strength: float
    q_plus: np.ndarray | None
    q_minus: np.ndarray | None
    predicted_delta_lambda: float
    condition_lhs: float
    verdict: str


@dataclass(frozen=True, eq=False)
class ImitationOutcome:
    """Exact and predicted consequences of one imitation event.

    mu_after is the reduction coefficient of the post-imitation network
    (NaN in the degenerate case where that network has no positive
    eigenvalue), kept so attention predictions can be tabulated without
    rebuilding the network.
    """

    spec: ImitationSpec
    lambda_before: float
    lambda_after: float
    delta_exact: float
    delta_predicted: float
    verdict: str
    centrality_imitator: float
    centrality_target: float
    mu_after: float
    analysis: PerturbationAnalysis


def apply_imitation(
    net: CompetitionNetwork,
    spec: ImitationSpec,
    rng: int | np.random.Generator | None = None,
) -> CompetitionNetwork:
    """Rebuild the imitator's row and column after the profile copy.

    Requires profiles: a raw-matrix network has nothing to imitate. With
    noise_sigma = 0 the copy is exact and no random numbers are drawn.
    The full-imitation result (epsilon = 1) carries the updated profiles;
    a partial blend returns weights only, since blended weights are not
    the cosine similarities of any profile set.
    """
    if net.profiles is None:
        raise StructuralError("imitation needs profiles, not just a weight matrix")
    n = net.n_nodes
    if spec.imitator >= n or spec.target >= n:
        raise StructuralError(f"imitator/target must be node ids below {n}")
    target_comp = net.profiles[spec.target].components
    if spec.noise_sigma == 0.0:
        new_profile = FeatureProfile(spec.imitator, target_comp)
    else:
        gen = rng if isinstance(rng, np.random.Generator) else np.random.default_rng(rng)
        noisy = target_comp + gen.normal(0.0, spec.noise_sigma, target_comp.size)
        new_profile = unit_profile(spec.imitator, noisy)

    comps = net.profile_matrix()
    row = np.clip(comps @ new_profile.components, 0.0, 1.0)
    row[spec.imitator] = 0.0
    if spec.epsilon < 1.0:
        old_row = net.weights[spec.imitator]
        row = np.clip(old_row + spec.epsilon * (row - old_row), 0.0, 1.0)
        row[spec.imitator] = 0.0
        profiles = None
    else:
        profiles = tuple(
            new_profile if i == spec.imitator else prof for i, prof in enumerate(net.profiles)
        )
    weights = np.array(net.weights)
    weights[spec.imitator, :] = row
    weights[:, spec.imitator] = row
    return CompetitionNetwork(weights, profiles, None)


def perturbation_matrix(
    before: CompetitionNetwork, after: CompetitionNetwork, imitator: int
) -> np.ndarray:
    """Weight difference after - before, checked to live on one row/column."""
    if before.n_nodes != after.n_nodes:
        raise StructuralError("networks must have the same node count")
    n = before.n_nodes
    if not 0 <= imitator < n:
        raise StructuralError(f"imitator must be a node id below {n}")
    diff = after.weights - before.weights
    leak = np.array(np.abs(diff))
    leak[imitator, :] = 0.0
    leak[:, imitator] = 0.0
    if np.any(leak > LEAK_TOL):
        worst = np.unravel_index(int(np.argmax(leak)), leak.shape)
        raise StructuralError(f"weights changed outside the imitator's row/column at {worst}")
    return diff


def rank2_spectrum(edge_deltas: np.ndarray, imitator: int):
    """Nonzero eigenpairs of the rank-2 update from its defining row.

    Returns (strength, q_plus, q_minus): eigenvalues are +strength and
    -strength, all remaining eigenvalues are zero. For the eigenvectors,
    the raw closed forms differ off the imitator by an overall sign; the
    returned q_minus is the sign-normalized copy that matches q_plus
    everywhere except the imitator entry. A zero row is degenerate:
    strength 0 and no eigenvectors.
    """
    deltas = np.asarray(edge_deltas, dtype=float)
    n = deltas.size
    if deltas.ndim != 1 or n < 2:
        raise StructuralError("edge_deltas must be a 1-d vector over at least 2 nodes")
    if not 0 <= imitator < n:
        raise StructuralError(f"imitator must be a node id below {n}")
    if deltas[imitator] != 0.0:
        raise StructuralError("edge_deltas must be zero at the imitator itself")
    strength = float(np.linalg.norm(deltas))
    if strength == 0.0:
        return 0.0, None, None
    q_plus = deltas / (strength * sqrt(2.0))
    q_plus[imitator] = 1.0 / sqrt(2.0)
    q_minus = q_plus.copy()
    q_minus[imitator] = -1.0 / sqrt(2.0)
    return strength, _readonly(q_plus), _readonly(q_minus)


def predict_delta_lambda(
    centrality: np.ndarray, perturbation: np.ndarray, epsilon: float = 1.0
) -> float:
    """First-order dominant-eigenvalue shift epsilon * v.(P v), unit-norm v."""
    v = np.asarray(centrality, dtype=float)
    p = np.asarray(perturbation, dtype=float)
    if p.ndim != 2 or p.shape[0] != p.shape[1] or v.shape != (p.shape[0],):
        raise StructuralError("need an (n, n) perturbation and a length-n centrality")
    if abs(float(np.linalg.norm(v)) - 1.0) > 1e-8:
        raise DomainError("centrality must be unit norm for the first-order formula")
    return float(epsilon * (v @ p @ v))


def condition_lhs(q_plus: np.ndarray, centrality: np.ndarray, imitator: int) -> float:
    """Overlap of q_plus and the Perron vector off the imitator entry."""
    return float(q_plus @ centrality - q_plus[imitator] * centrality[imitator])


def success_condition(
    q_plus: np.ndarray | None, centrality: np.ndarray, imitator: int
) -> str:
    """Predicted sign of the eigenvalue shift without computing it.

    Indeterminate when the update is degenerate, when the imitator is
    spectrally isolated (the premise of the sign argument), or when the
    overlap is too small to call.
    """
    if q_plus is None:
        return VERDICT_INDETERMINATE
    if centrality[imitator] <= ISOLATED_TOL:
        return VERDICT_INDETERMINATE
    lhs = condition_lhs(q_plus, centrality, imitator)
    if abs(lhs) <= CONDITION_TOL:
        return VERDICT_INDETERMINATE
    return VERDICT_YES if lhs > 0.0 else VERDICT_NO


def analyze_perturbation(
    perturbation: np.ndarray,
    imitator: int,
    centrality: np.ndarray,
    epsilon: float = 1.0,
) -> PerturbationAnalysis:
    """Assemble the closed-form view of one applied weight update.

    The perturbation is taken as handed in; epsilon only scales the
    first-order prediction, for callers holding the full update but
    applying a fraction of it.
    """
    deltas = np.array(perturbation[imitator], dtype=float)
    strength, q_plus, q_minus = rank2_spectrum(deltas, imitator)
    predicted = predict_delta_lambda(centrality, perturbation, epsilon)
    verdict = success_condition(q_plus, centrality, imitator)
    lhs = 0.0 if q_plus is None else condition_lhs(q_plus, centrality, imitator)
    return PerturbationAnalysis(
        imitator=imitator,
        edge_deltas=_readonly(deltas),
        strength=strength,
        q_plus=q_plus,
        q_minus=q_minus,
        predicted_delta_lambda=predicted,
        condition_lhs=lhs,
        verdict=verdict,
    )


def evaluate_pair(
    net: CompetitionNetwork,
    spec: ImitationSpec,
    rng: int | np.random.Generator | None = None,
    before: SpectralSummary | None = None,
) -> ImitationOutcome:
    """Apply one imitation and compare exact against first-order spectra.

    The pre-imitation summary may be passed in when many pairs share one
    network; the post-imitation eigensolve warm-starts from the Perron
    vector of the original network (nonnegative, so the power-iteration
    overlap argument is unchanged).
    """
    summary = before if before is not None else spectral_summary(net)
    after = apply_imitation(net, spec, rng)
    # the uniform floor keeps the warm start overlapping every candidate
    # dominant direction, even ones the original network did not reach
    warm = summary.centrality + 1e-6
    lambda_after, v_after, _, _ = _power_iteration(after.weights, warm)
    diff = perturbation_matrix(net, after, spec.imitator)
    analysis = analyze_perturbation(diff, spec.imitator, summary.centrality)
    mu_after = compute_mu(after, lambda_after, v_after) if lambda_after > 0.0 else float("nan")
    return ImitationOutcome(
        spec=spec,
        lambda_before=summary.eigenvalue,
        lambda_after=lambda_after,
        delta_exact=lambda_after - summary.eigenvalue,
        delta_predicted=analysis.predicted_delta_lambda,
        verdict=analysis.verdict,
        centrality_imitator=float(summary.centrality[spec.imitator]),
        centrality_target=float(summary.centrality[spec.target]),
        mu_after=mu_after,
        analysis=analysis,
    )
