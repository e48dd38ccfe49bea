"""Dominant eigenpair, centrality, and the reduction coefficient."""

import numpy as np
import pytest

from attnlab import (
    CompetitionNetwork,
    DomainError,
    GeneratorSpec,
    StructuralError,
    compute_mu,
    dominant_eigenpair,
    eigenvector_centrality,
    generate,
    spectral_summary,
)
from oracle import dominant_pair


def uniform_complete(n, w):
    return CompetitionNetwork(np.full((n, n), w) - w * np.eye(n))


def test_two_node_pair_is_exact():
    value, vector = dominant_eigenpair(CompetitionNetwork(np.array([[0.0, 0.7], [0.7, 0.0]])))
    assert abs(value - 0.7) < 1e-12
    assert np.allclose(vector, [1.0, 1.0] / np.sqrt(2.0), atol=1e-12)


def test_uniform_complete_spectrum():
    for n, w in ((4, 0.3), (7, 0.9)):
        net = uniform_complete(n, w)
        summary = spectral_summary(net)
        assert abs(summary.eigenvalue - w * (n - 1)) < 1e-12 * n
        assert np.allclose(summary.centrality, np.full(n, 1.0 / np.sqrt(n)), atol=1e-12)
        assert np.allclose(summary.observable_weights, np.full(n, 1.0 / n), atol=1e-12)
        # every degree equals the eigenvalue, so the coefficient collapses to 1
        assert abs(summary.mu - 1.0) < 1e-13


def test_matches_jacobi_oracle():
    rng = np.random.default_rng(17)
    kinds = ("sparse", "dense", "heterogeneous")
    for trial in range(20):
        n = int(rng.integers(3, 9))
        spec = GeneratorSpec(kinds[trial % 3], n_nodes=n, feature_dim=15, seed=int(rng.integers(1 << 30)))
        net = generate(spec)
        value, vector = dominant_eigenpair(net)
        ref_value, ref_vector = dominant_pair(net.weights)
        assert abs(value - ref_value) <= 1e-8 * max(1.0, abs(ref_value))
        assert min(
            np.linalg.norm(vector - ref_vector), np.linalg.norm(vector + ref_vector)
        ) <= 1e-8


def test_residual_contract():
    for seed in range(5):
        net = generate(GeneratorSpec("heterogeneous", n_nodes=25, feature_dim=30, seed=seed))
        summary = spectral_summary(net)
        direct = np.linalg.norm(net.weights @ summary.centrality - summary.eigenvalue * summary.centrality)
        assert direct <= 1e-8
        assert summary.residual <= 1e-10
        assert summary.iterations >= 1


def test_eigenvalue_scales_with_weights():
    net = generate(GeneratorSpec("dense", n_nodes=10, feature_dim=20, seed=6))
    value, vector = dominant_eigenpair(net)
    scaled = CompetitionNetwork(net.weights * 0.5)
    value_scaled, vector_scaled = dominant_eigenpair(scaled)
    assert abs(value_scaled - 0.5 * value) <= 1e-10
    assert np.linalg.norm(vector_scaled - vector) <= 1e-8


def test_rayleigh_row_sum_bounds():
    for seed in (0, 1, 2):
        net = generate(GeneratorSpec("sparse", n_nodes=15, feature_dim=25, seed=seed))
        value, _ = dominant_eigenpair(net)
        sums = net.weights.sum(axis=1)
        assert sums.min() - 1e-12 <= value <= sums.max() + 1e-12


def test_mu_does_not_depend_on_centrality_scale():
    net = generate(GeneratorSpec("dense", n_nodes=8, feature_dim=16, seed=2))
    value, vector = dominant_eigenpair(net)
    assert compute_mu(net, value, vector) == compute_mu(net, value, 2.0 * vector)


def test_mu_rejects_nonpositive_eigenvalue():
    net = CompetitionNetwork(np.zeros((3, 3)))
    with pytest.raises(DomainError):
        compute_mu(net, 0.0, np.ones(3) / np.sqrt(3.0))


def test_zero_matrix_keeps_start_direction():
    net = CompetitionNetwork(np.zeros((2, 2)))
    value, vector = dominant_eigenpair(net)
    assert abs(value) <= 1e-15
    assert np.allclose(vector, [1.0, 1.0] / np.sqrt(2.0), atol=1e-15)
    summary = spectral_summary(net)
    assert np.isnan(summary.mu)
    assert not summary.isolated.any()


def test_start_vector_validation():
    net = uniform_complete(3, 0.5)
    with pytest.raises(StructuralError):
        dominant_eigenpair(net, np.ones(4))
    with pytest.raises(DomainError):
        dominant_eigenpair(net, np.array([1.0, -1.0, 1.0]))
    with pytest.raises(DomainError):
        dominant_eigenpair(net, np.zeros(3))
    # a valid warm start changes nothing about the answer
    value, vector = dominant_eigenpair(net, np.array([0.9, 1.1, 1.0]))
    assert abs(value - 1.0) < 1e-12
    assert np.allclose(vector, np.full(3, 1.0 / np.sqrt(3.0)), atol=1e-10)


def test_isolated_node_is_flagged():
    # node 2 has no edges at all, so the dominant mode cannot reach it
    w = np.zeros((3, 3))
    w[0, 1] = w[1, 0] = 0.8
    summary = spectral_summary(CompetitionNetwork(w))
    assert abs(summary.eigenvalue - 0.8) < 1e-12
    assert list(summary.isolated) == [False, False, True]


def test_centrality_shortcut_matches_summary():
    net = generate(GeneratorSpec("heterogeneous", n_nodes=9, feature_dim=14, seed=12))
    assert np.array_equal(eigenvector_centrality(net), spectral_summary(net).centrality)
