"""Competition networks derived from feature profiles.

Each node carries a unit-norm feature vector. The competition weight
between two nodes is the positive part of the cosine similarity of their
profiles: dissimilar nodes do not compete, and a node never competes with
itself. Three generator families cover the network kinds used by the
experiments: 'sparse' draws profile components uniformly from [-1, 1],
'dense' from [0, 1], and 'heterogeneous' mixes both, giving a configurable
fraction of nodes the dense range.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import ConfigError, DomainError, StructuralError

NETWORK_SCHEMA = "network-v1"
GENERATOR_KINDS = ("sparse", "dense", "heterogeneous")

UNIT_NORM_TOL = 1e-12
ZERO_NORM_TOL = 1e-12


def _readonly(values, dtype=float) -> np.ndarray:
    out = np.array(values, dtype=dtype)
    out.flags.writeable = False
    return out


@dataclass(frozen=True, eq=False)
class FeatureProfile:
    """A node's feature vector; unit Euclidean norm is enforced at construction."""

    node_id: int
    components: np.ndarray

    def __post_init__(self) -> None:
        if int(self.node_id) != self.node_id or self.node_id < 0:
            raise StructuralError(f"node_id must be a nonnegative integer, got {self.node_id!r}")
        comp = np.asarray(self.components, dtype=float)
        if comp.ndim != 1 or comp.size < 1:
            raise StructuralError("components must be a 1-d vector with at least one entry")
        if not np.all(np.isfinite(comp)):
            raise DomainError("profile components must be finite")
        norm = float(np.linalg.norm(comp))
        if abs(norm - 1.0) > UNIT_NORM_TOL:
            raise DomainError(f"profile norm must be 1 within {UNIT_NORM_TOL}, got {norm!r}")
        object.__setattr__(self, "node_id", int(self.node_id))
        object.__setattr__(self, "components", _readonly(comp))


def unit_profile(node_id: int, components) -> FeatureProfile:
    """Scale a raw vector to unit norm and wrap it. Near-zero vectors are rejected."""
    comp = np.asarray(components, dtype=float)
    norm = float(np.linalg.norm(comp))
    if norm < ZERO_NORM_TOL:
        raise DomainError("cannot normalize a zero (or near-zero) feature vector")
    return FeatureProfile(node_id, comp / norm)


def cosine_similarity(a, b) -> float:
    """Cosine of the angle between two non-zero vectors of equal length."""
    va = np.asarray(a, dtype=float)
    vb = np.asarray(b, dtype=float)
    if va.ndim != 1 or vb.ndim != 1 or va.size != vb.size:
        raise StructuralError("cosine similarity needs two 1-d vectors of equal length")
    na = float(np.linalg.norm(va))
    nb = float(np.linalg.norm(vb))
    if na < ZERO_NORM_TOL or nb < ZERO_NORM_TOL:
        raise DomainError("cosine similarity is undefined for zero vectors")
    # the clip only absorbs floating-point spill past the mathematical range
    return float(np.clip(np.dot(va, vb) / (na * nb), -1.0, 1.0))


@dataclass(frozen=True)
class GeneratorSpec:
    """Recipe for a random network: kind, size, feature dimension, seed.

    dense_fraction only matters for the heterogeneous kind but is validated
    for all so a spec can be reused across kinds.
    """

    kind: str
    n_nodes: int = 30
    feature_dim: int = 100
    dense_fraction: float = 0.3
    seed: int = 0

    def __post_init__(self) -> None:
        if self.kind not in GENERATOR_KINDS:
            raise DomainError(f"unknown generator kind {self.kind!r}, expected one of {GENERATOR_KINDS}")
        if self.n_nodes < 2:
            raise DomainError("n_nodes must be at least 2")
        if self.feature_dim < 1:
            raise DomainError("feature_dim must be at least 1")
        if not 0.0 < self.dense_fraction < 1.0:
            raise DomainError("dense_fraction must lie strictly between 0 and 1")
        if not 0 <= self.seed < 2**64:
            raise DomainError("seed must fit in an unsigned 64-bit integer")


@dataclass(frozen=True, eq=False)
class CompetitionNetwork:
    """Symmetric nonnegative competition weights, optionally with the
    profiles that generated them. Immutable: arrays are stored read-only.

    Weights loaded from a raw matrix (profiles=None) support everything
    except operations that must recompute similarities.
    """

    weights: np.ndarray
    profiles: tuple[FeatureProfile, ...] | None = None
    generator: GeneratorSpec | None = None

    def __post_init__(self) -> None:
        w = np.asarray(self.weights, dtype=float)
        if w.ndim != 2 or w.shape[0] != w.shape[1]:
            raise StructuralError(f"weights must be a square matrix, got shape {w.shape}")
        n = w.shape[0]
        if n < 2:
            raise StructuralError("a competition network needs at least 2 nodes")
        if not np.all(np.isfinite(w)):
            raise DomainError("weights must be finite")
        if not np.array_equal(w, w.T):
            raise StructuralError("weights must be exactly symmetric")
        if np.any(np.diag(w) != 0.0):
            raise StructuralError("self-competition is excluded: the diagonal must be zero")
        if np.any(w < 0.0) or np.any(w > 1.0):
            raise DomainError("weights must lie in [0, 1]")
        object.__setattr__(self, "weights", _readonly(w))
        if self.profiles is not None:
            profs = tuple(self.profiles)
            if len(profs) != n:
                raise StructuralError(f"got {len(profs)} profiles for {n} nodes")
            for i, prof in enumerate(profs):
                if prof.node_id != i:
                    raise StructuralError("profiles must be listed in node_id order 0..n-1")
            if len({prof.components.size for prof in profs}) != 1:
                raise StructuralError("all profiles must share one feature dimension")
            object.__setattr__(self, "profiles", profs)

    @property
    def n_nodes(self) -> int:
        return self.weights.shape[0]

    @property
    def feature_dim(self) -> int | None:
        return None if self.profiles is None else self.profiles[0].components.size

    def profile_matrix(self) -> np.ndarray:
        """All profile components stacked into an (n_nodes, feature_dim) array."""
        if self.profiles is None:
            raise StructuralError("this network carries no profiles")
        return np.stack([prof.components for prof in self.profiles])


def build_network(
    profiles: Iterable[FeatureProfile],
    generator: GeneratorSpec | None = None,
) -> CompetitionNetwork:
    """Clamped-cosine weights from a profile list.

    The matrix is exactly symmetric by construction (each unordered pair is
    computed once and mirrored); the upper clip at 1 only absorbs
    floating-point spill, since cosines of unit vectors cannot exceed 1.
    """
    profs = tuple(profiles)
    n = len(profs)
    if n < 2:
        raise StructuralError("a competition network needs at least 2 profiles")
    comps = np.stack([prof.components for prof in profs])
    sims = np.clip(comps @ comps.T, 0.0, 1.0)
    w = np.zeros((n, n))
    upper = np.triu_indices(n, k=1)
    w[upper] = sims[upper]
    w.T[upper] = sims[upper]
    return CompetitionNetwork(w, profs, generator)


def generate(spec: GeneratorSpec) -> CompetitionNetwork:
    """Draw profiles for the requested kind and build the network.

    The same spec always yields the same network. The (vanishingly unlikely)
    zero-norm draw is redrawn from the continuing stream, so determinism
    survives even that.
    """
    rng = np.random.default_rng(spec.seed)
    if spec.kind == "dense":
        n_dense = spec.n_nodes
    elif spec.kind == "sparse":
        n_dense = 0
    else:
        # keep at least one node of each family; lowest ids take the dense range
        n_dense = min(max(round(spec.dense_fraction * spec.n_nodes), 1), spec.n_nodes - 1)
    profiles = []
    for i in range(spec.n_nodes):
        low = 0.0 if i < n_dense else -1.0
        comp = rng.uniform(low, 1.0, spec.feature_dim)
        while float(np.linalg.norm(comp)) < ZERO_NORM_TOL:
            comp = rng.uniform(low, 1.0, spec.feature_dim)
        profiles.append(unit_profile(i, comp))
    return build_network(profiles, generator=spec)


def network_to_document(net: CompetitionNetwork) -> dict:
    """One JSON-ready document holding everything needed to rebuild the network."""
    gen = None
    if net.generator is not None:
        gen = {
            "kind": net.generator.kind,
            "n_nodes": net.generator.n_nodes,
            "feature_dim": net.generator.feature_dim,
            "dense_fraction": net.generator.dense_fraction,
            "seed": net.generator.seed,
        }
    return {
        "schema": NETWORK_SCHEMA,
        "n_nodes": net.n_nodes,
        "feature_dim": net.feature_dim,
        "generator": gen,
        "profiles": None if net.profiles is None else [p.components.tolist() for p in net.profiles],
        "weights": net.weights.tolist(),
    }


def _require(doc: dict, field: str, kinds: tuple[type, ...]):
    if field not in doc:
        raise ConfigError(f"network document is missing the {field!r} field")
    value = doc[field]
    if not isinstance(value, kinds):
        raise ConfigError(f"network document field {field!r} has the wrong type")
    return value


def network_from_document(doc: dict) -> CompetitionNetwork:
    """Rebuild a network from its document form; field problems name the field."""
    if not isinstance(doc, dict):
        raise ConfigError("network document must be a mapping")
    if doc.get("schema") != NETWORK_SCHEMA:
        raise ConfigError(f"unsupported network document schema {doc.get('schema')!r}")
    n_nodes = _require(doc, "n_nodes", (int,))
    rows = _require(doc, "weights", (list,))
    try:
        weights = np.array(rows, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"network document field 'weights' is not numeric: {exc}") from None
    if weights.shape != (n_nodes, n_nodes):
        raise ConfigError(
            f"network document field 'weights' has shape {weights.shape}, expected ({n_nodes}, {n_nodes})"
        )
    profiles = None
    if doc.get("profiles") is not None:
        raw = _require(doc, "profiles", (list,))
        if len(raw) != n_nodes:
            raise ConfigError(f"network document holds {len(raw)} profiles for {n_nodes} nodes")
        try:
            profiles = tuple(FeatureProfile(i, np.asarray(p, dtype=float)) for i, p in enumerate(raw))
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"network document field 'profiles' is malformed: {exc}") from None
    generator = None
    if doc.get("generator") is not None:
        gen = _require(doc, "generator", (dict,))
        try:
            generator = GeneratorSpec(
                kind=gen["kind"],
                n_nodes=gen["n_nodes"],
                feature_dim=gen["feature_dim"],
                dense_fraction=gen["dense_fraction"],
                seed=gen["seed"],
            )
        except KeyError as exc:
            raise ConfigError(f"network document generator is missing the {exc.args[0]!r} field") from None
    return CompetitionNetwork(weights, profiles, generator)


def save_network(net: CompetitionNetwork, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        json.dump(network_to_document(net), handle, indent=2)
        handle.write("\n")


def load_network(path: str | os.PathLike) -> CompetitionNetwork:
    with open(path, "r", encoding="utf-8") as handle:
        text = handle.read()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return network_from_document(doc)
