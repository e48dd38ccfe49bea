"""Imitation events and the closed-form view of their weight updates."""

import numpy as np
import pytest

from attnlab import (
    CompetitionNetwork,
    DomainError,
    GeneratorSpec,
    ImitationSpec,
    StructuralError,
    VERDICT_INDETERMINATE,
    VERDICT_NO,
    VERDICT_YES,
    analyze_perturbation,
    apply_imitation,
    build_network,
    condition_lhs,
    dominant_eigenpair,
    evaluate_pair,
    generate,
    perturbation_matrix,
    rank2_spectrum,
    spectral_summary,
    unit_profile,
)


def test_spec_validation():
    with pytest.raises(StructuralError):
        ImitationSpec(imitator=2, target=2)
    with pytest.raises(StructuralError):
        ImitationSpec(imitator=-1, target=0)
    with pytest.raises(DomainError):
        ImitationSpec(imitator=0, target=1, noise_sigma=-0.5)
    with pytest.raises(DomainError):
        ImitationSpec(imitator=0, target=1, epsilon=0.0)
    with pytest.raises(DomainError):
        ImitationSpec(imitator=0, target=1, epsilon=1.5)


def test_rank2_spectrum_hand_computed():
    # deltas (0, 3, 4): strength 5, off-imitator direction (0, 0.6, 0.8)
    strength, q_plus, q_minus = rank2_spectrum(np.array([0.0, 3.0, 4.0]), 0)
    assert strength == 5.0
    root = 1.0 / np.sqrt(2.0)
    assert np.allclose(q_plus, [root, 0.6 * root, 0.8 * root], atol=1e-15)
    assert np.allclose(q_minus, [-root, 0.6 * root, 0.8 * root], atol=1e-15)
    strength, _, _ = rank2_spectrum(np.array([0.3, 0.0, 0.4]), 1)
    assert abs(strength - 0.5) < 1e-15


def test_rank2_spectrum_degenerate_and_invalid():
    strength, q_plus, q_minus = rank2_spectrum(np.zeros(4), 2)
    assert strength == 0.0 and q_plus is None and q_minus is None
    with pytest.raises(StructuralError):
        rank2_spectrum(np.array([1.0, 1.0]), 0)  # nonzero at the imitator


def test_rank2_vectors_are_eigenvectors():
    rng = np.random.default_rng(3)
    for _ in range(10):
        n = int(rng.integers(3, 12))
        imitator = int(rng.integers(n))
        deltas = rng.normal(size=n)
        deltas[imitator] = 0.0
        strength, q_plus, q_minus = rank2_spectrum(deltas, imitator)
        basis = np.zeros(n)
        basis[imitator] = 1.0
        p_matrix = np.outer(deltas, basis) + np.outer(basis, deltas)
        assert np.allclose(p_matrix @ q_plus, strength * q_plus, atol=1e-12)
        assert np.allclose(p_matrix @ q_minus, -strength * q_minus, atol=1e-12)
        assert abs(np.linalg.norm(q_plus) - 1.0) < 1e-12
        assert abs(np.linalg.norm(q_minus) - 1.0) < 1e-12
        assert abs(q_plus @ q_minus) < 1e-12


def test_exact_copy_two_nodes():
    net = build_network([unit_profile(0, [1.0, 0.0]), unit_profile(1, [0.6, 0.8])])
    after = apply_imitation(net, ImitationSpec(imitator=0, target=1))
    # the imitator now carries the target's profile, so their tie is cosine 1
    assert after.weights[0, 1] == 1.0
    assert np.array_equal(after.profiles[0].components, net.profiles[1].components)
    assert after.generator is None
    # repeating the copy changes nothing further
    again = apply_imitation(after, ImitationSpec(imitator=0, target=1))
    assert np.array_equal(again.weights, after.weights)


def test_imitation_changes_only_one_row_and_column():
    net = generate(GeneratorSpec("heterogeneous", n_nodes=9, feature_dim=25, seed=5))
    after = apply_imitation(net, ImitationSpec(imitator=3, target=7))
    mask = np.ones((9, 9), dtype=bool)
    mask[3, :] = False
    mask[:, 3] = False
    assert np.array_equal(after.weights[mask], net.weights[mask])
    assert after.weights[3, 3] == 0.0
    # untouched profiles are carried over as the same objects
    assert after.profiles[7] is net.profiles[7]


def test_noisy_copy_is_unit_norm_and_seeded():
    net = generate(GeneratorSpec("sparse", n_nodes=8, feature_dim=30, seed=11))
    spec = ImitationSpec(imitator=2, target=5, noise_sigma=0.4)
    one = apply_imitation(net, spec, rng=123)
    two = apply_imitation(net, spec, rng=123)
    other = apply_imitation(net, spec, rng=124)
    assert np.array_equal(one.weights, two.weights)
    assert not np.array_equal(one.weights, other.weights)
    assert abs(np.linalg.norm(one.profiles[2].components) - 1.0) < 1e-12
    assert not np.array_equal(one.profiles[2].components, net.profiles[5].components)


def test_imitation_requires_profiles_and_valid_ids():
    bare = CompetitionNetwork(np.array([[0.0, 0.5], [0.5, 0.0]]))
    with pytest.raises(StructuralError):
        apply_imitation(bare, ImitationSpec(imitator=0, target=1))
    net = generate(GeneratorSpec("dense", n_nodes=4, feature_dim=10, seed=0))
    with pytest.raises(StructuralError):
        apply_imitation(net, ImitationSpec(imitator=0, target=9))


def test_partial_imitation_blends_weights():
    net = generate(GeneratorSpec("dense", n_nodes=6, feature_dim=15, seed=7))
    full = apply_imitation(net, ImitationSpec(imitator=1, target=4))
    half = apply_imitation(net, ImitationSpec(imitator=1, target=4, epsilon=0.5))
    blended = net.weights[1] + 0.5 * (full.weights[1] - net.weights[1])
    assert np.allclose(half.weights[1], blended, atol=1e-15)
    # a blended row no longer matches any profile, so profiles are dropped
    assert half.profiles is None
    assert full.profiles is not None


def test_perturbation_matrix_and_leak_guard():
    net = generate(GeneratorSpec("sparse", n_nodes=7, feature_dim=20, seed=9))
    after = apply_imitation(net, ImitationSpec(imitator=2, target=0))
    diff = perturbation_matrix(net, after, 2)
    assert np.allclose(diff, after.weights - net.weights, atol=0.0)
    with pytest.raises(StructuralError):
        perturbation_matrix(net, after, 3)  # change sits outside row/column 3


def test_first_order_identity():
    # v.(P v) collapses to strength * ((q+ . v)^2 - (q- . v)^2)
    rng = np.random.default_rng(21)
    for seed in range(8):
        net = generate(GeneratorSpec("heterogeneous", n_nodes=10, feature_dim=30, seed=seed))
        _, v = dominant_eigenpair(net)
        pair = ImitationSpec(imitator=int(rng.integers(10)), target=int(rng.integers(10)) or 1)
        if pair.imitator == pair.target:
            continue
        after = apply_imitation(net, pair)
        diff = perturbation_matrix(net, after, pair.imitator)
        analysis = analyze_perturbation(diff, pair.imitator, v)
        direct = float(v @ diff @ v)
        assert abs(analysis.predicted_delta_lambda - direct) < 1e-10
        if analysis.q_plus is not None:
            split = analysis.strength * (
                float(analysis.q_plus @ v) ** 2 - float(analysis.q_minus @ v) ** 2
            )
            assert abs(direct - split) < 1e-10


def test_verdict_follows_condition_sign():
    net = generate(GeneratorSpec("sparse", n_nodes=12, feature_dim=40, seed=3))
    summary = spectral_summary(net)
    seen = set()
    for imitator in range(12):
        for target in range(12):
            if imitator == target:
                continue
            outcome = evaluate_pair(net, ImitationSpec(imitator=imitator, target=target), before=summary)
            seen.add(outcome.verdict)
            if outcome.verdict == VERDICT_YES:
                assert outcome.analysis.condition_lhs > 0.0
                assert outcome.delta_predicted > 0.0
            elif outcome.verdict == VERDICT_NO:
                assert outcome.analysis.condition_lhs < 0.0
                assert outcome.delta_predicted < 0.0
    assert VERDICT_YES in seen and VERDICT_NO in seen


def test_degenerate_copy_is_indeterminate():
    # two identical profiles: copying one is a no-op, so nothing can be said
    comps = np.random.default_rng(0).normal(size=10)
    net = build_network(
        [unit_profile(0, comps), unit_profile(1, comps), unit_profile(2, np.roll(comps, 1))]
    )
    outcome = evaluate_pair(net, ImitationSpec(imitator=0, target=1))
    assert outcome.verdict == VERDICT_INDETERMINATE
    assert outcome.analysis.strength == 0.0
    assert outcome.delta_exact == pytest.approx(0.0, abs=1e-12)


def test_evaluate_pair_reports_consistent_fields():
    net = generate(GeneratorSpec("dense", n_nodes=8, feature_dim=20, seed=13))
    summary = spectral_summary(net)
    outcome = evaluate_pair(net, ImitationSpec(imitator=6, target=1), before=summary)
    assert outcome.lambda_before == summary.eigenvalue
    assert outcome.delta_exact == outcome.lambda_after - outcome.lambda_before
    assert outcome.centrality_imitator == summary.centrality[6]
    assert outcome.centrality_target == summary.centrality[1]
    # the post-imitation eigenvalue is real and positive here, so mu is too
    assert np.isfinite(outcome.mu_after)
    after = apply_imitation(net, ImitationSpec(imitator=6, target=1))
    direct, _ = dominant_eigenpair(after)
    assert abs(outcome.lambda_after - direct) < 1e-9


def test_condition_lhs_excludes_imitator_entry():
    q_plus = np.array([1.0, 0.6, 0.8]) / np.sqrt(2.0)
    q_plus[1:] /= np.linalg.norm([0.6, 0.8])
    centrality = np.array([0.9, 0.1, 0.4])
    lhs = condition_lhs(q_plus, centrality, 0)
    assert abs(lhs - (q_plus[1] * 0.1 + q_plus[2] * 0.4)) < 1e-15
