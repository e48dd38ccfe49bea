"""Spectral structure of a competition network.

The dominant eigenvalue and its Perron vector come from shifted power
iteration. Competition matrices here are symmetric, so left and right
dominant vectors coincide; entries stay nonnegative throughout the
iteration because the matrix, the shift, and the start vector are all
nonnegative.

Two scalings of the Perron vector circulate: the unit-norm copy is the
eigenvector centrality and enters every perturbation formula; the
sum-to-one copy weights node attention into the scalar observable that
the reduced dynamics track.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NumericalError, StructuralError
from .network import CompetitionNetwork

RAYLEIGH_TOL = 1e-12
RESIDUAL_TARGET = 1e-10  # drive well under the 1e-8 contract so v is usable too
MAX_ITERATIONS = 100_000
ISOLATED_TOL = 1e-12
SPECTRAL_SHIFT = 1.0


@dataclass(frozen=True, eq=False)
class SpectralSummary:
    """Everything downstream modules want to know about one network's spectrum."""

    eigenvalue: float
    centrality: np.ndarray          # Perron vector, unit Euclidean norm
    observable_weights: np.ndarray  # Perron vector scaled to sum to 1
    mu: float                       # degree-weighted reduction coefficient
    degrees: np.ndarray             # weighted row sums
    residual: float                 # |W v - eigenvalue v| at termination
    iterations: int

    @property
    def isolated(self) -> np.ndarray:
        """Mask of nodes the dominant mode does not reach."""
        return self.centrality < ISOLATED_TOL


def _power_iteration(weights: np.ndarray, start: np.ndarray | None):
    n = weights.shape[0]
    if start is None:
        vec = np.full(n, 1.0 / np.sqrt(n))
    else:
        vec = np.asarray(start, dtype=float)
        if vec.shape != (n,):
            raise StructuralError(f"start vector has shape {vec.shape}, expected ({n},)")
        if np.any(vec < 0.0) or not np.all(np.isfinite(vec)):
            raise DomainError("start vector must be nonnegative and finite")
        norm = float(np.linalg.norm(vec))
        if norm == 0.0:
            raise DomainError("start vector must be nonzero")
        vec = vec / norm
    # Entries of edge-free nodes are exactly zero in every eigenvector with
    # a positive eigenvalue, and zeros there survive each update, so clear
    # them once instead of letting them decay toward the residual floor.
    dead = ~weights.any(axis=1)
    if dead.all():
        # the zero matrix: eigenvalue 0, the start direction serves
        return 0.0, vec, 0.0, 0
    if dead.any():
        cleared = vec.copy()
        cleared[dead] = 0.0
        norm = float(np.linalg.norm(cleared))
        if norm == 0.0:
            raise DomainError("start vector has no weight on any connected node")
        vec = cleared / norm
    # Iterate on W + cI rather than W itself: the shift cannot move the
    # eigenvectors, it cancels out of the residual, and it breaks the
    # magnitude tie of bipartite subgraphs (eigenvalues +s and -s), where
    # the unshifted iteration never settles on a direction. One matvec per
    # iteration; stagnation of the Rayleigh quotient alone can leave the
    # vector short of the residual contract, so require both.
    rayleigh = np.inf
    image = weights @ vec + SPECTRAL_SHIFT * vec
    for iteration in range(1, MAX_ITERATIONS + 1):
        updated = float(vec @ image)
        residual = float(np.linalg.norm(image - updated * vec))
        if abs(updated - rayleigh) < RAYLEIGH_TOL and residual <= RESIDUAL_TARGET:
            # the clamp only absorbs roundoff: vTWv is nonnegative exactly
            return max(updated - SPECTRAL_SHIFT, 0.0), vec, residual, iteration
        rayleigh = updated
        vec = image / float(np.linalg.norm(image))
        image = weights @ vec + SPECTRAL_SHIFT * vec
    residual = float(np.linalg.norm(image - rayleigh * vec))
    raise NumericalError(
        f"power iteration did not converge in {MAX_ITERATIONS} iterations (residual {residual:.3e})"
    )


def dominant_eigenpair(
    net: CompetitionNetwork, start: np.ndarray | None = None
) -> tuple[float, np.ndarray]:
    """Dominant eigenvalue and unit-norm Perron vector.

    The default start is the all-ones direction, which always overlaps the
    Perron vector of a nonnegative matrix. A caller holding a good guess
    (say, the vector of a nearby network) may pass it to cut iterations;
    any nonnegative nonzero start preserves that overlap argument.
    """
    eigenvalue, vec, _, _ = _power_iteration(net.weights, start)
    return eigenvalue, vec


def eigenvector_centrality(net: CompetitionNetwork) -> np.ndarray:
    """Unit-norm Perron vector; entries are nonnegative."""
    return dominant_eigenpair(net)[1]


def compute_mu(net: CompetitionNetwork, eigenvalue: float, centrality: np.ndarray) -> float:
    """Degree-weighted reduction coefficient v.(D v) / (eigenvalue v.v).

    Invariant under rescaling of v, so either circulating normalization
    works. Requires a positive dominant eigenvalue.
    """
    if not eigenvalue > 0.0:
        raise DomainError("the reduction coefficient needs a positive dominant eigenvalue")
    vec = np.asarray(centrality, dtype=float)
    if vec.shape != (net.n_nodes,):
        raise StructuralError(f"centrality has shape {vec.shape}, expected ({net.n_nodes},)")
    degrees = net.weights.sum(axis=1)
    return float((vec @ (degrees * vec)) / (eigenvalue * (vec @ vec)))


def spectral_summary(net: CompetitionNetwork, start: np.ndarray | None = None) -> SpectralSummary:
    """Run the power iteration once and package every derived quantity."""
    eigenvalue, vec, residual, iterations = _power_iteration(net.weights, start)
    total = float(vec.sum())  # >= 1 for a nonnegative unit vector, so never zero
    mu = compute_mu(net, eigenvalue, vec) if eigenvalue > 0.0 else float("nan")
    return SpectralSummary(
        eigenvalue=eigenvalue,
        centrality=vec,
        observable_weights=vec / total,
        mu=mu,
        degrees=net.weights.sum(axis=1),
        residual=residual,
        iterations=iterations,
    )
