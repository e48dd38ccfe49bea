"""Generate the three network kinds and look at their spectra."""

import numpy as np

from attnlab import GeneratorSpec, generate, spectral_summary

for kind in ("sparse", "dense", "heterogeneous"):
    net = generate(GeneratorSpec(kind, n_nodes=30, feature_dim=100, seed=0))
    off = ~np.eye(30, dtype=bool)
    weights = net.weights[off]
    summary = spectral_summary(net)
    top = [int(i) for i in np.argsort(summary.centrality)[::-1][:3]]
    print(f"--- {kind} ---")
    print(f"zero off-diagonal share: {np.mean(weights == 0.0):.2f}")
    print(f"mean nonzero weight:     {weights[weights > 0].mean():.3f}")
    print(f"dominant eigenvalue:     {summary.eigenvalue:.4f}")
    print(f"degree/eigenvalue ratio mu: {summary.mu:.4f}")
    print(f"most central nodes:      {top}")
    print(f"solver iterations:       {summary.iterations}, residual {summary.residual:.1e}")
    print()

# a uniform complete network is the exactly solvable reference point:
# every eigenvector entry is equal and mu is exactly 1
from attnlab import CompetitionNetwork

n, w = 10, 0.4
uniform = CompetitionNetwork(np.full((n, n), w) - w * np.eye(n))
summary = spectral_summary(uniform)
print(f"uniform complete n={n}, w={w}: eigenvalue {summary.eigenvalue:.6f}"
      f" (= w(n-1) = {w * (n - 1):.6f}), mu = {summary.mu:.12f}")
