"""Desk-scale experiment drivers.

Two reproducible campaigns: an exhaustive imitation scan over every
ordered pair of one network, and a noise-robustness sweep over families
of random networks. Everything is deterministic given the master seed;
per-case RNG streams are derived with a counter-based scheme over
(kind index, sigma index, instance, imitator, target, repeat), so results
do not depend on thread count or evaluation order, and aggregation walks
cases in a fixed order.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .dynamics import ModelParams, fixed_point_reduced
from .errors import DomainError, StructuralError
from .imitation import ImitationSpec, evaluate_pair
from .network import GENERATOR_KINDS, GeneratorSpec, generate
from .spectral import spectral_summary

SUCCESS_TOL = 1e-12  # eigenvalue gains at or below this count as failures


def default_sigma_grid(sigma_max: float = 1.0, step: float = 0.1) -> tuple[float, ...]:
    """Noise levels 0, step, 2*step, ... up to sigma_max inclusive."""
    if not np.isfinite(sigma_max) or sigma_max < 0.0:
        raise DomainError("sigma_max must be nonnegative and finite")
    if not np.isfinite(step) or step <= 0.0:
        raise DomainError("step must be positive and finite")
    count = int(np.floor(sigma_max / step + 1e-9)) + 1
    # rounding keeps the decimal grid exact (0.3, not 0.30000000000000004)
    return tuple(round(i * step, 10) for i in range(count))


def _resolve_threads(threads: int) -> int:
    if threads < 0:
        raise DomainError("threads must be nonnegative (0 means one per cpu)")
    return threads if threads > 0 else (os.cpu_count() or 1)


def _map_ordered(fn, items, threads: int) -> list:
    workers = _resolve_threads(threads)
    if workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


@dataclass(frozen=True, eq=False)
class ScanResult:
    """All ordered imitation pairs of one network, indexed by centrality rank.

    Matrix entry [i, j] describes the imitator of rank i copying the target
    of rank j (rank 0 is the most central node); diagonals are absent (NaN,
    or the empty verdict), never zero-filled.
    """

    generator: GeneratorSpec
    node_order: np.ndarray    # node ids, descending centrality, ties by id
    centralities: np.ndarray  # unit-norm centrality in rank order
    lambda_before: float
    mu_before: float
    delta_exact: np.ndarray
    delta_predicted: np.ndarray
    lambda_after: np.ndarray
    mu_after: np.ndarray
    verdicts: np.ndarray      # dtype <U13

    @property
    def n_nodes(self) -> int:
        return self.node_order.size


@dataclass(frozen=True)
class SweepRow:
    """Aggregate for one (kind, sigma) cell: pairs counts all evaluated
    cases across instances and repeats."""

    kind: str
    sigma: float
    instances: int
    pairs: int
    successes: int
    success_rate: float


@dataclass(frozen=True, eq=False)
class SweepResult:
    rows: tuple[SweepRow, ...]
    master_seed: int
    n_nodes: int

    def rate(self, kind: str, sigma: float) -> float:
        for row in self.rows:
            if row.kind == kind and row.sigma == sigma:
                return row.success_rate
        raise KeyError(f"no sweep cell for kind={kind!r}, sigma={sigma!r}")

    def rates(self, kind: str) -> list[float]:
        """Success rates for one kind, in the sweep's sigma order."""
        out = [row.success_rate for row in self.rows if row.kind == kind]
        if not out:
            raise KeyError(f"no sweep cells for kind={kind!r}")
        return out


def run_scan(spec: GeneratorSpec, threads: int = 1) -> ScanResult:
    """Exact full imitation (sigma 0, epsilon 1) for every ordered pair."""
    net = generate(spec)
    summary = spectral_summary(net)
    n = net.n_nodes
    order = np.argsort(-summary.centrality, kind="stable")
    delta_exact = np.full((n, n), np.nan)
    delta_predicted = np.full((n, n), np.nan)
    lambda_after = np.full((n, n), np.nan)
    mu_after = np.full((n, n), np.nan)
    verdicts = np.full((n, n), "", dtype="<U13")

    def run_row(imitator_rank: int):
        imitator = int(order[imitator_rank])
        outcomes = []
        for target_rank in range(n):
            if target_rank == imitator_rank:
                outcomes.append(None)
                continue
            pair = ImitationSpec(imitator=imitator, target=int(order[target_rank]))
            outcomes.append(evaluate_pair(net, pair, before=summary))
        return outcomes

    for imitator_rank, outcomes in enumerate(_map_ordered(run_row, range(n), threads)):
        for target_rank, outcome in enumerate(outcomes):
            if outcome is None:
                continue
            delta_exact[imitator_rank, target_rank] = outcome.delta_exact
            delta_predicted[imitator_rank, target_rank] = outcome.delta_predicted
            lambda_after[imitator_rank, target_rank] = outcome.lambda_after
            mu_after[imitator_rank, target_rank] = outcome.mu_after
            verdicts[imitator_rank, target_rank] = outcome.verdict
    return ScanResult(
        generator=spec,
        node_order=order,
        centralities=summary.centrality[order],
        lambda_before=summary.eigenvalue,
        mu_before=summary.mu,
        delta_exact=delta_exact,
        delta_predicted=delta_predicted,
        lambda_after=lambda_after,
        mu_after=mu_after,
        verdicts=verdicts,
    )


def summarize_attention_effect(
    scan: ScanResult, params: ModelParams, mu_before: float | None = None
) -> list[dict]:
    """One row per ordered pair with steady-attention predictions attached.

    A_before comes from the scanned network's spectrum; A_after uses the
    post-imitation eigenvalue together with the reduction coefficient
    recomputed on the post-imitation network. Rows walk ranks in order.
    """
    _, K, zeta = params.shared_values()
    mu0 = scan.mu_before if mu_before is None else mu_before
    a_before, _ = fixed_point_reduced(scan.lambda_before, mu0, params)
    rows = []
    n = scan.n_nodes
    for imitator_rank in range(n):
        for target_rank in range(n):
            if imitator_rank == target_rank:
                continue
            lam_after = float(scan.lambda_after[imitator_rank, target_rank])
            mu_after = float(scan.mu_after[imitator_rank, target_rank])
            denom = 1.0 + zeta * mu_after * lam_after
            a_after = K * zeta / denom if denom > 0.0 else float("nan")
            rows.append(
                {
                    "imitator_id": int(scan.node_order[imitator_rank]),
                    "target_id": int(scan.node_order[target_rank]),
                    "imitator_rank": imitator_rank,
                    "target_rank": target_rank,
                    "imitator_centrality": float(scan.centralities[imitator_rank]),
                    "target_centrality": float(scan.centralities[target_rank]),
                    "lambda_before": scan.lambda_before,
                    "lambda_after": lam_after,
                    "delta_exact": float(scan.delta_exact[imitator_rank, target_rank]),
                    "delta_predicted": float(scan.delta_predicted[imitator_rank, target_rank]),
                    "condition": str(scan.verdicts[imitator_rank, target_rank]),
                    "A_before": a_before,
                    "A_after": a_after,
                    "attention_change_rel": (a_after - a_before) / a_before,
                }
            )
    return rows


def _instance_seed(master_seed: int, kind_index: int, instance: int) -> int:
    seq = np.random.SeedSequence([master_seed, kind_index, instance])
    return int(seq.generate_state(1, np.uint64)[0])


def _case_rng(master_seed, kind_index, sigma_index, instance, imitator, target, repeat):
    seq = np.random.SeedSequence(
        [master_seed, kind_index, sigma_index, instance, imitator, target, repeat]
    )
    return np.random.default_rng(seq)


def run_noise_sweep(
    kinds: Sequence[str],
    sigmas: Sequence[float],
    instances: int,
    *,
    n_nodes: int = 30,
    feature_dim: int = 100,
    dense_fraction: float = 0.3,
    master_seed: int = 0,
    repeats: int = 1,
    threads: int = 1,
) -> SweepResult:
    """Noisy full imitation over every ordered pair of every instance.

    A case succeeds when the exact dominant eigenvalue rises by more than
    SUCCESS_TOL; exact ties count as failures. Each case draws its noise
    from its own counter-derived stream, and the networks themselves are
    derived from (master seed, kind, instance), so the same instance is
    reused across the whole sigma grid.
    """
    kinds = tuple(kinds)
    sigmas = tuple(float(s) for s in sigmas)
    if not kinds:
        raise StructuralError("kinds must not be empty")
    for kind in kinds:
        if kind not in GENERATOR_KINDS:
            raise DomainError(f"unknown generator kind {kind!r}")
    if len(set(kinds)) != len(kinds):
        raise StructuralError("kinds must not repeat")
    if not sigmas:
        raise StructuralError("sigmas must not be empty")
    if any(not np.isfinite(s) or s < 0.0 for s in sigmas):
        raise DomainError("sigmas must be nonnegative and finite")
    if instances < 1 or repeats < 1:
        raise DomainError("instances and repeats must be at least 1")
    if master_seed < 0:
        raise DomainError("master_seed must be nonnegative")

    def run_instance(task):
        kind, instance = task
        kind_index = GENERATOR_KINDS.index(kind)
        spec = GeneratorSpec(
            kind=kind,
            n_nodes=n_nodes,
            feature_dim=feature_dim,
            dense_fraction=dense_fraction,
            seed=_instance_seed(master_seed, kind_index, instance),
        )
        net = generate(spec)
        summary = spectral_summary(net)
        counts = [0] * len(sigmas)
        for sigma_index, sigma in enumerate(sigmas):
            for imitator in range(n_nodes):
                for target in range(n_nodes):
                    if imitator == target:
                        continue
                    for repeat in range(repeats):
                        rng = _case_rng(
                            master_seed, kind_index, sigma_index, instance, imitator, target, repeat
                        )
                        pair = ImitationSpec(imitator=imitator, target=target, noise_sigma=sigma)
                        outcome = evaluate_pair(net, pair, rng=rng, before=summary)
                        if outcome.delta_exact > SUCCESS_TOL:
                            counts[sigma_index] += 1
        return counts

    tasks = [(kind, instance) for kind in kinds for instance in range(instances)]
    per_instance = _map_ordered(run_instance, tasks, threads)
    cases_per_cell = instances * n_nodes * (n_nodes - 1) * repeats
    rows = []
    for k, kind in enumerate(kinds):
        totals = [0] * len(sigmas)
        for instance in range(instances):
            counts = per_instance[k * instances + instance]
            for sigma_index in range(len(sigmas)):
                totals[sigma_index] += counts[sigma_index]
        for sigma_index, sigma in enumerate(sigmas):
            rows.append(
                SweepRow(
                    kind=kind,
                    sigma=sigma,
                    instances=instances,
                    pairs=cases_per_cell,
                    successes=totals[sigma_index],
                    success_rate=totals[sigma_index] / cases_per_cell,
                )
            )
    return SweepResult(rows=tuple(rows), master_seed=master_seed, n_nodes=n_nodes)
