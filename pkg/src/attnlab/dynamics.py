"""Attention and boredom dynamics on a competition network.

Per node i, attention a_i grows logistically at rate r_i toward capacity
K_i, crowded by the node's own boredom store b_i plus the attention of
competing nodes:

    da_i/dt = r_i a_i (1 - (b_i + sum_j w_ij a_j) / K_i)
    db_i/dt = a_i - zeta_i b_i

The boredom store is the exponentially fading memory of the node's own
past attention with forgetting rate zeta_i; the ODE form above is its
differential equivalent and is what the integrator advances.

The spectral reduction compresses the full system to two variables, the
observable A (attention weighted by the sum-to-one Perron vector) and its
boredom counterpart B:

    dA/dt = r A (1 - B/K) - lam r mu A^2 / K
    dB/dt = A - zeta B

with lam the dominant eigenvalue and mu the reduction coefficient from
the spectral module. The interaction term carries a negative sign:
competition can only suppress the observable. Its resting point is
A = K zeta / (1 + zeta mu lam), B = K / (1 + zeta mu lam).

Integration is classical fixed-step RK4 throughout; no adaptive stepping,
so equal configurations yield bit-equal trajectories.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NumericalError, StructuralError
from .network import CompetitionNetwork, _readonly
from .spectral import dominant_eigenpair

DIVERGENCE_LIMIT = 1e12


def _positive(name: str, value) -> None:
    arr = np.asarray(value, dtype=float)
    if not np.all(np.isfinite(arr)) or not np.all(arr > 0.0):
        raise DomainError(f"{name} must be positive and finite")


@dataclass(frozen=True)
class ModelParams:
    """Growth rate r, capacity K and boredom forgetting rate zeta.

    Scalars mean every node shares the value; a 1-d array gives per-node
    values and must match the node count at simulation time.
    """

    r: float | np.ndarray = 1.0
    K: float | np.ndarray = 1.0
    zeta: float | np.ndarray = 0.5

    def __post_init__(self) -> None:
        for name in ("r", "K", "zeta"):
            value = getattr(self, name)
            _positive(name, value)
            if isinstance(value, np.ndarray):
                if value.ndim != 1:
                    raise StructuralError(f"per-node {name} must be a 1-d array")
                object.__setattr__(self, name, _readonly(value))
            else:
                object.__setattr__(self, name, float(value))

    @property
    def is_shared(self) -> bool:
        return not any(isinstance(getattr(self, name), np.ndarray) for name in ("r", "K", "zeta"))

    def shared_values(self) -> tuple[float, float, float]:
        if not self.is_shared:
            raise StructuralError("this operation needs shared (scalar) parameters")
        return float(self.r), float(self.K), float(self.zeta)

    def as_arrays(self, n_nodes: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        out = []
        for name in ("r", "K", "zeta"):
            value = getattr(self, name)
            if isinstance(value, np.ndarray):
                if value.shape != (n_nodes,):
                    raise StructuralError(
                        f"per-node {name} has shape {value.shape}, expected ({n_nodes},)"
                    )
                out.append(np.asarray(value, dtype=float))
            else:
                out.append(np.full(n_nodes, float(value)))
        return out[0], out[1], out[2]


@dataclass(frozen=True)
class SimConfig:
    """Fixed-step integrator settings.

    steady_floor is an absolute attention level used by the steady-state
    detector: a node sitting below the floor whose change over the window
    is also below the floor counts as converged. The relative-change rule
    alone never terminates for a node decaying geometrically toward zero,
    because its per-window relative change is constant.
    """

    dt: float = 0.01
    t_max: float = 500.0
    steady_window: float = 10.0
    steady_tol: float = 1e-8
    a0: float = 0.01
    b0: float = 0.0
    steady_floor: float = 1e-10

    def __post_init__(self) -> None:
        _positive("dt", self.dt)
        _positive("t_max", self.t_max)
        _positive("steady_window", self.steady_window)
        _positive("steady_tol", self.steady_tol)
        _positive("a0", self.a0)
        if self.dt > self.t_max:
            raise DomainError("dt must not exceed t_max")
        if self.b0 < 0.0 or not np.isfinite(self.b0):
            raise DomainError("b0 must be nonnegative and finite")
        if self.steady_floor < 0.0 or not np.isfinite(self.steady_floor):
            raise DomainError("steady_floor must be nonnegative and finite")


@dataclass(frozen=True, eq=False)
class TrajectoryRecord:
    """Time series out of the integrator.

    Full runs store one column per node; reduced runs store the (A, B)
    pair as a single pseudo-node, so the observable column equals the
    attention column there.
    """

    times: np.ndarray       # (T,)
    attention: np.ndarray   # (T, n)
    boredom: np.ndarray     # (T, n)
    observable: np.ndarray  # (T,)
    steady_reached: bool
    steady_attention: np.ndarray | None  # attention row at detection time

    @property
    def n_nodes(self) -> int:
        return self.attention.shape[1]


def _integrate(deriv, y0: np.ndarray, n_watch: int, cfg: SimConfig):
    """Advance dy/dt = deriv(y) with classical RK4 at fixed dt.

    The first n_watch components are the attention block: they drive the
    divergence guard and the steady-state window test. Integration stops
    early once every watched component is steady across the window.
    """
    n_steps = int(round(cfg.t_max / cfg.dt))
    window = int(round(cfg.steady_window / cfg.dt))
    dt = cfg.dt
    states = np.empty((n_steps + 1, y0.size))
    states[0] = y0
    y = y0
    steady_reached = False
    last = n_steps
    for step in range(1, n_steps + 1):
        k1 = deriv(y)
        k2 = deriv(y + (0.5 * dt) * k1)
        k3 = deriv(y + (0.5 * dt) * k2)
        k4 = deriv(y + dt * k3)
        y = y + (dt / 6.0) * (k1 + 2.0 * (k2 + k3) + k4)
        states[step] = y
        watched = y[:n_watch]
        bad = ~np.isfinite(watched) | (np.abs(watched) > DIVERGENCE_LIMIT)
        if np.any(bad):
            node = int(np.argmax(bad))
            raise NumericalError(f"attention diverged at node {node}, t={step * dt:.6g}")
        if window >= 1 and step >= window:
            previous = states[step - window, :n_watch]
            change = np.abs(watched - previous)
            steady = change <= cfg.steady_tol * np.abs(watched)
            steady |= (np.abs(watched) <= cfg.steady_floor) & (change <= cfg.steady_floor)
            if bool(np.all(steady)):
                steady_reached = True
                last = step
                break
    times = np.arange(last + 1) * dt
    return times, states[: last + 1], steady_reached


def simulate_full(
    net: CompetitionNetwork,
    params: ModelParams | None = None,
    cfg: SimConfig | None = None,
) -> TrajectoryRecord:
    """Integrate the per-node system from the uniform initial condition."""
    params = params or ModelParams()
    cfg = cfg or SimConfig()
    n = net.n_nodes
    weights = net.weights
    r, K, zeta = params.as_arrays(n)
    y0 = np.concatenate([np.full(n, cfg.a0), np.full(n, cfg.b0)])

    def deriv(y: np.ndarray) -> np.ndarray:
        a = y[:n]
        b = y[n:]
        crowding = b + weights @ a
        da = r * a * (1.0 - crowding / K)
        db = a - zeta * b
        return np.concatenate([da, db])

    times, states, steady = _integrate(deriv, y0, n, cfg)
    attention = states[:, :n]
    boredom = states[:, n:]
    _, perron = dominant_eigenpair(net)
    observable = attention @ (perron / perron.sum())
    return TrajectoryRecord(
        times=times,
        attention=attention,
        boredom=boredom,
        observable=observable,
        steady_reached=steady,
        steady_attention=attention[-1].copy() if steady else None,
    )


def simulate_reduced(
    eigenvalue: float,
    mu: float,
    params: ModelParams | None = None,
    cfg: SimConfig | None = None,
) -> TrajectoryRecord:
    """Integrate the 2-variable reduced system; parameters must be shared."""
    params = params or ModelParams()
    cfg = cfg or SimConfig()
    if not np.isfinite(eigenvalue) or not np.isfinite(mu):
        raise DomainError("eigenvalue and mu must be finite")
    r, K, zeta = params.shared_values()
    y0 = np.array([cfg.a0, cfg.b0])

    def deriv(y: np.ndarray) -> np.ndarray:
        big_a, big_b = y
        da = r * big_a * (1.0 - big_b / K) - eigenvalue * r * mu * big_a * big_a / K
        db = big_a - zeta * big_b
        return np.array([da, db])

    times, states, steady = _integrate(deriv, y0, 1, cfg)
    attention = states[:, :1]
    return TrajectoryRecord(
        times=times,
        attention=attention,
        boredom=states[:, 1:],
        observable=attention[:, 0],
        steady_reached=steady,
        steady_attention=attention[-1].copy() if steady else None,
    )


def fixed_point_reduced(
    eigenvalue: float, mu: float, params: ModelParams | None = None
) -> tuple[float, float]:
    """Closed-form resting point of the reduced system.

    The growth rate only sets the approach speed, so it does not appear.
    """
    params = params or ModelParams()
    if not np.isfinite(eigenvalue) or not np.isfinite(mu):
        raise DomainError("eigenvalue and mu must be finite")
    _, K, zeta = params.shared_values()
    denom = 1.0 + zeta * mu * eigenvalue
    if denom <= 0.0:
        raise DomainError(f"no admissible resting point: 1 + zeta*mu*eigenvalue = {denom!r} <= 0")
    return K * zeta / denom, K / denom
