"""Scan every ordered imitation pair on one network.

Who should copy whom? The scan applies every exact copy once, records
the eigenvalue shift, and the attention summary converts shifts into
steady-state attention changes. Rows and columns are ordered by
centrality rank, so strategy patterns show up as column structure.
"""

import numpy as np

from attnlab import (
    GeneratorSpec,
    ModelParams,
    run_scan,
    summarize_attention_effect,
)

spec = GeneratorSpec("heterogeneous", n_nodes=20, feature_dim=100, seed=1)
scan = run_scan(spec, threads=4)
n = 20

order = [int(i) for i in scan.node_order]
print(f"network: {spec.kind}, {n} nodes, eigenvalue {scan.lambda_before:.4f}")
print(f"node order by centrality: {order[:6]} ... {order[-3:]}")
print()

gain = scan.delta_exact
print("mean eigenvalue shift by target rank (most central target first):")
by_target = np.nanmean(gain, axis=0)
print("  " + " ".join(f"{v:+.3f}" for v in by_target[:8]) + " ...")
print("mean eigenvalue shift by imitator rank:")
by_imitator = np.nanmean(gain, axis=1)
print("  " + " ".join(f"{v:+.3f}" for v in by_imitator[:8]) + " ...")
print()

off = ~np.eye(n, dtype=bool)
up = np.mean(gain[off] > 0.0)
down = np.mean(gain[off] < 0.0)
print(f"share of pairs raising the eigenvalue:  {up:.3f}")
print(f"share of pairs lowering the eigenvalue: {down:.3f}")
verdicts, counts = np.unique(scan.verdicts[off], return_counts=True)
print(f"first-order verdicts: {dict(zip(map(str, verdicts), map(int, counts)))}")
print()

rows = summarize_attention_effect(scan, ModelParams())
best = max(rows, key=lambda r: r["attention_change_rel"])
worst = min(rows, key=lambda r: r["attention_change_rel"])
print("steady attention shifts (positive means everyone holds attention longer):")
print(f"  best  pair: imitator rank {best['imitator_rank']} copying rank {best['target_rank']}"
      f"  -> {best['attention_change_rel']:+.4f}")
print(f"  worst pair: imitator rank {worst['imitator_rank']} copying rank {worst['target_rank']}"
      f"  -> {worst['attention_change_rel']:+.4f}")
