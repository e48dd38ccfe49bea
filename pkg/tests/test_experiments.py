"""Whole-network scans, the noise sweep, and attention summaries."""

import numpy as np
import pytest

from attnlab import (
    DomainError,
    GeneratorSpec,
    ModelParams,
    StructuralError,
    default_sigma_grid,
    fixed_point_reduced,
    run_noise_sweep,
    run_scan,
    summarize_attention_effect,
)


def test_default_sigma_grid():
    grid = default_sigma_grid()
    assert grid == tuple(round(0.1 * i, 10) for i in range(11))
    assert default_sigma_grid(0.5, 0.25) == (0.0, 0.25, 0.5)
    with pytest.raises(DomainError):
        default_sigma_grid(-1.0)
    with pytest.raises(DomainError):
        default_sigma_grid(1.0, 0.0)


@pytest.fixture(scope="module")
def small_scan():
    return run_scan(GeneratorSpec("heterogeneous", n_nodes=8, feature_dim=25, seed=4))


def test_scan_layout(small_scan):
    scan = small_scan
    n = scan.n_nodes
    assert n == 8
    assert sorted(scan.node_order.tolist()) == list(range(n))
    assert np.all(np.diff(scan.centralities) <= 0.0)
    for matrix in (scan.delta_exact, scan.delta_predicted, scan.lambda_after, scan.mu_after):
        assert matrix.shape == (n, n)
        assert np.all(np.isnan(np.diag(matrix)))
    off = ~np.eye(n, dtype=bool)
    assert np.all(np.isfinite(scan.delta_exact[off]))
    assert np.all(np.diag(scan.verdicts) == "")
    assert set(scan.verdicts[off]) <= {"yes", "no", "indeterminate"}
    assert scan.lambda_before > 0.0 and np.isfinite(scan.mu_before)
    # rank/entry consistency: lambda_after minus lambda_before is the delta
    assert np.allclose(
        scan.lambda_after[off] - scan.lambda_before, scan.delta_exact[off], atol=1e-12
    )


def test_scan_is_thread_invariant(small_scan):
    threaded = run_scan(GeneratorSpec("heterogeneous", n_nodes=8, feature_dim=25, seed=4), threads=3)
    assert np.array_equal(threaded.node_order, small_scan.node_order)
    assert np.array_equal(threaded.delta_exact, small_scan.delta_exact, equal_nan=True)
    assert np.array_equal(threaded.mu_after, small_scan.mu_after, equal_nan=True)
    assert np.array_equal(threaded.verdicts, small_scan.verdicts)


def test_summarize_attention_effect(small_scan):
    params = ModelParams()
    rows = summarize_attention_effect(small_scan, params)
    n = small_scan.n_nodes
    assert len(rows) == n * (n - 1)
    a_before, _ = fixed_point_reduced(small_scan.lambda_before, small_scan.mu_before, params)
    for row in rows[:20]:
        assert row["A_before"] == a_before
        direct, _ = fixed_point_reduced(row["lambda_after"], small_scan.mu_after[row["imitator_rank"], row["target_rank"]], params)
        assert row["A_after"] == pytest.approx(direct, abs=1e-15)
        assert row["attention_change_rel"] == pytest.approx(
            (row["A_after"] - a_before) / a_before, abs=1e-15
        )
    # identical spectra mean identical rest points, whatever the pair did
    same = [r for r in rows if r["delta_exact"] == 0.0]
    for row in same:
        assert row["A_after"] == pytest.approx(a_before, rel=1e-9)


def test_summarize_rejects_per_node_params(small_scan):
    with pytest.raises(StructuralError):
        summarize_attention_effect(small_scan, ModelParams(zeta=np.array([0.5] * 8)))


def test_low_low_pair_barely_moves_the_spectrum():
    scan = run_scan(GeneratorSpec("heterogeneous", n_nodes=15, feature_dim=40, seed=0))
    n = scan.n_nodes
    magnitudes = np.abs(scan.delta_exact)
    assert magnitudes[n - 1, n - 2] < np.nanmedian(magnitudes)


def test_sweep_counts_and_bounds():
    result = run_noise_sweep(
        ("sparse",), (0.0, 0.5), instances=2, n_nodes=6, feature_dim=12, master_seed=3
    )
    assert result.n_nodes == 6
    assert len(result.rows) == 2
    for row in result.rows:
        assert row.kind == "sparse"
        assert row.instances == 2
        assert row.pairs == 2 * 6 * 5
        assert 0 <= row.successes <= row.pairs
        assert row.success_rate == row.successes / row.pairs
    assert result.rates("sparse") == [result.rate("sparse", 0.0), result.rate("sparse", 0.5)]
    with pytest.raises(KeyError):
        result.rate("dense", 0.0)


def test_sweep_validation():
    with pytest.raises(StructuralError):
        run_noise_sweep((), (0.0,), instances=1)
    with pytest.raises(StructuralError):
        run_noise_sweep(("sparse", "sparse"), (0.0,), instances=1)
    with pytest.raises(DomainError):
        run_noise_sweep(("ring",), (0.0,), instances=1)
    with pytest.raises(StructuralError):
        run_noise_sweep(("sparse",), (), instances=1)
    with pytest.raises(DomainError):
        run_noise_sweep(("sparse",), (-0.1,), instances=1)
    with pytest.raises(DomainError):
        run_noise_sweep(("sparse",), (0.0,), instances=0)


def test_sweep_is_thread_and_order_invariant():
    kwargs = dict(instances=2, n_nodes=6, feature_dim=12, master_seed=9)
    serial = run_noise_sweep(("sparse", "dense"), (0.0, 0.3), **kwargs)
    threaded = run_noise_sweep(("sparse", "dense"), (0.0, 0.3), threads=4, **kwargs)
    assert serial.rows == threaded.rows
    # each (kind, instance) cell is seeded independently, so dropping a kind
    # leaves the other kind's counts untouched
    alone = run_noise_sweep(("dense",), (0.0, 0.3), **kwargs)
    assert [r for r in serial.rows if r.kind == "dense"] == list(alone.rows)


def test_sweep_repeats_scale_pair_counts():
    result = run_noise_sweep(
        ("dense",), (0.2,), instances=1, n_nodes=5, feature_dim=10, master_seed=1, repeats=3
    )
    assert result.rows[0].pairs == 5 * 4 * 3
