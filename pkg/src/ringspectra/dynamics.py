"""Time-domain verification: Kronecker closed loop and fixed-step integration.

Each agent is the companion realization of a(s) with input matrix B and
output row K holding the b coefficients; the network closed loop is
I_N (x) A - r L (x) BK.  A classical fourth-order fixed-step integrator
records the pairwise disagreement at every step, and a verdict compares
the final disagreement against the initial one.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .consensus import FrequencyVariable
from .errors import DomainError

SHRINK_TOL = 1e-6
GROW_TOL = 1e2
DIVERGENCE_LIMIT = 1e12


@dataclass(frozen=True)
class AgentModel:
    """Companion-form realization of one agent: x^(d) drives through the
    last state, couplings enter through K = (b_0 ... b_q 0 ... 0)."""

    a: tuple[float, ...]
    b: tuple[float, ...]

    @classmethod
    def from_frequency_variable(cls, fv: FrequencyVariable) -> "AgentModel":
        return cls(fv.a, fv.b)

    @property
    def d(self) -> int:
        return len(self.a) - 1

    @property
    def A(self) -> np.ndarray:
        d = self.d
        A = np.zeros((d, d))
        A[:-1, 1:] = np.eye(d - 1)
        A[-1, :] = [-c for c in self.a[:-1]]
        return A

    @property
    def B(self) -> np.ndarray:
        B = np.zeros((self.d, 1))
        B[-1, 0] = 1.0
        return B

    @property
    def K(self) -> np.ndarray:
        K = np.zeros((1, self.d))
        K[0, : len(self.b)] = self.b
        return K


def build_closed_loop(model: AgentModel, laplacian, r: float = 1.0) -> np.ndarray:
    """I_N (x) A - r L (x) (B K), the (N*d) x (N*d) closed-loop matrix."""
    L = np.asarray(laplacian, dtype=float)
    if L.ndim != 2 or L.shape[0] != L.shape[1]:
        raise DomainError(f"Laplacian must be square, got shape {L.shape}")
    N = L.shape[0]
    BK = model.B @ model.K
    return np.kron(np.eye(N), model.A) - float(r) * np.kron(L, BK)


@dataclass(frozen=True)
class Trajectory:
    """Integration record: times, stacked states, per-step disagreement."""

    times: np.ndarray
    states: np.ndarray
    disagreement: np.ndarray
    diverged: bool = False
    seed: int | None = field(default=None)

    @property
    def initial_disagreement(self) -> float:
        return float(self.disagreement[0])

    @property
    def final_disagreement(self) -> float:
        return float(self.disagreement[-1])


def _max_pairwise_disagreement(xi: np.ndarray, agent_dim: int) -> float:
    """max over agent pairs of the Euclidean norm of their full state difference."""
    states = xi.reshape(-1, agent_dim)
    diff = states[:, None, :] - states[None, :, :]
    return float(np.sqrt((diff ** 2).sum(axis=2)).max())


def random_initial_state(size: int, seed: int) -> np.ndarray:
    """Uniform [-1, 1] per state entry from a recorded seed."""
    rng = np.random.default_rng(seed)
    return rng.uniform(-1.0, 1.0, size)


def worst_mode_initial_state(system, agent_dim: int, tol: float = 1e-9) -> np.ndarray:
    """Real initial state aligned with the least-damped non-consensus mode.

    Eigenvectors of the closed loop whose agents are already identical
    (disagreement below tol after unit normalization) belong to the
    consensus subspace and are skipped.
    """
    M = np.asarray(system, dtype=float)
    values, vectors = np.linalg.eig(M)
    order = np.argsort(-values.real)
    for idx in order:
        v = vectors[:, idx]
        v = v / np.linalg.norm(v)
        candidate = v.real if np.linalg.norm(v.real) > np.linalg.norm(v.imag) else v.imag
        norm = np.linalg.norm(candidate)
        if norm < tol:
            continue
        candidate = candidate / norm
        if _max_pairwise_disagreement(candidate, agent_dim) > tol:
            return candidate / np.abs(candidate).max()
    raise DomainError("closed loop has no non-consensus mode to excite")


def integrate(system, xi0, T: float = 60.0, h: float = 1e-3,
              agent_dim: int = 1, seed: int | None = None,
              divergence_limit: float = DIVERGENCE_LIMIT) -> Trajectory:
    """Classical fourth-order fixed-step integration of xi' = M xi.

    Disagreement is recorded at every step; the run stops early and is
    flagged diverged once the state norm exceeds divergence_limit.
    """
    if h <= 0:
        raise DomainError(f"step size must be positive, got {h}")
    if T < h:
        raise DomainError(f"horizon {T} is shorter than one step {h}")
    M = np.asarray(system, dtype=float)
    xi = np.asarray(xi0, dtype=float).copy()
    if xi.shape != (M.shape[0],):
        raise DomainError(f"state size {xi.shape} does not match system {M.shape}")
    if M.shape[0] % agent_dim != 0:
        raise DomainError("state size is not a multiple of the agent dimension")

    steps = int(round(T / h))
    times = [0.0]
    states = [xi.copy()]
    gaps = [_max_pairwise_disagreement(xi, agent_dim)]
    diverged = False
    for k in range(1, steps + 1):
        k1 = M @ xi
        k2 = M @ (xi + 0.5 * h * k1)
        k3 = M @ (xi + 0.5 * h * k2)
        k4 = M @ (xi + h * k3)
        xi = xi + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        times.append(k * h)
        states.append(xi.copy())
        gaps.append(_max_pairwise_disagreement(xi, agent_dim))
        if np.linalg.norm(xi) > divergence_limit:
            diverged = True
            break
    return Trajectory(times=np.asarray(times), states=np.asarray(states),
                      disagreement=np.asarray(gaps), diverged=diverged, seed=seed)


def verdict(traj: Trajectory, shrink_tol: float = SHRINK_TOL,
            grow_tol: float = GROW_TOL) -> str:
    """'consensus' | 'no-consensus' | 'inconclusive' from the disagreement ratio."""
    if traj.diverged:
        return "no-consensus"
    initial = traj.initial_disagreement
    final = traj.final_disagreement
    if initial == 0.0:
        return "consensus" if final <= shrink_tol else "no-consensus"
    ratio = final / initial
    if ratio <= shrink_tol:
        return "consensus"
    if ratio >= grow_tol:
        return "no-consensus"
    return "inconclusive"
