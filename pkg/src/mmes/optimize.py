"""Numerical minimization of the average balanced purity over pure states.

States are parameterized by an unconstrained complex vector x and evaluated
at x / |x|. Purity is quartic in the amplitudes, so F(x) = f(x) / |x|^4 and
on the unit sphere grad F = grad f - 4 f x, which is already tangent.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from mmes.core import PureState, balanced_bipartitions, pme, pme_lower_bound


@dataclass
class OptimizerConfig:
    restarts: int | None = None  # None: 50 for n <= 4, 200 otherwise
    max_iterations: int = 5000
    step: float = 1.0
    armijo: float = 1e-4
    tolerance: float = 1e-10
    patience: int = 100
    seed: int = 0
    anneal_steps: int = 0  # > 0 enables a simulated-annealing pass per restart
    anneal_temperature: float = 1e-2
    anneal_cooling: float = 0.995
    anneal_width: float = 0.05

    def __post_init__(self):
        if self.restarts is not None and self.restarts < 1:
            raise ValueError("restarts must be positive")
        if self.max_iterations < 1 or self.patience < 1:
            raise ValueError("iteration counts must be positive")
        if self.tolerance <= 0:
            raise ValueError("tolerance must be positive")

    def restarts_for(self, n: int) -> int:
        if self.restarts is not None:
            return self.restarts
        return 50 if n <= 4 else 200


class _Objective:
    def __init__(self, n: int):
        self.n = n
        self.perms = []
        for part in balanced_bipartitions(n):
            axes = [m - 1 for m in part.members]
            order = axes + [q for q in range(n) if q not in axes]
            self.perms.append((order, list(np.argsort(order)), 2 ** len(axes)))

    def value_grad(self, x: np.ndarray) -> tuple[float, np.ndarray]:
        """f(x) and its real gradient packed as a complex vector (d/dRe + i d/dIm)."""
        psi = x.reshape((2,) * self.n)
        f = 0.0
        g = np.zeros_like(psi)
        for order, inverse, rows in self.perms:
            m = np.transpose(psi, order).reshape(rows, -1)
            rho = m @ m.conj().T
            f += np.vdot(rho, rho).real
            g += np.transpose((2.0 * rho @ m).reshape((2,) * self.n), inverse)
        k = len(self.perms)
        return f / k, 2.0 * g.reshape(-1) / k


def pme_gradient(state: PureState) -> np.ndarray:
    """Gradient of pme(x / |x|) at x = state, as d/dRe + i d/dIm."""
    x = state.amplitudes
    f, g = _Objective(state.n).value_grad(x)
    return g - 4.0 * f * x


def gradient_check(state: PureState, epsilon: float = 1e-6) -> float:
    """Largest deviation of :func:`pme_gradient` from central differences of pme(x / |x|)."""
    if not 1e-8 <= epsilon <= 1e-4:
        raise ValueError("epsilon must lie in [1e-8, 1e-4]")
    x = np.array(state.amplitudes)
    n = state.n

    def objective(y):
        return pme(PureState(n, y / np.linalg.norm(y)))

    analytic = pme_gradient(state)
    worst = 0.0
    for i in range(x.size):
        for unit, part in ((1.0, analytic[i].real), (1j, analytic[i].imag)):
            up, down = x.copy(), x.copy()
            up[i] += unit * epsilon
            down[i] -= unit * epsilon
            fd = (objective(up) - objective(down)) / (2 * epsilon)
            worst = max(worst, abs(fd - part))
    return worst


def _descend(obj: _Objective, x, cfg: OptimizerConfig, trace, it0: int):
    f, g = obj.value_grad(x)
    g = g - 4.0 * f * x
    step = cfg.step
    history = [f]
    it = it0
    for _ in range(cfg.max_iterations):
        gg = np.vdot(g, g).real
        if gg < 1e-28:
            break
        while True:
            y = x - step * g
            y /= np.linalg.norm(y)
            fy, gy = obj.value_grad(y)
            if fy <= f - cfg.armijo * step * gg:
                break
            step *= 0.5
            if step < 1e-14:
                return x, f, it
        it += 1
        x, f, g = y, fy, gy - 4.0 * fy * y
        step = min(2.0 * step, 1e3)
        trace.append((it, f))
        history.append(f)
        if len(history) > cfg.patience and history[-cfg.patience - 1] - f < cfg.tolerance:
            break
    return x, f, it


def _anneal(obj: _Objective, x, f, cfg: OptimizerConfig, rng: np.random.Generator):
    """Metropolis walk on the unit sphere; returns the best point visited."""
    best_x, best_f = x, f
    temp = cfg.anneal_temperature
    for _ in range(cfg.anneal_steps):
        y = x + cfg.anneal_width * (rng.normal(size=x.size) + 1j * rng.normal(size=x.size))
        y /= np.linalg.norm(y)
        fy, _ = obj.value_grad(y)
        if fy < f or rng.random() < np.exp(-(fy - f) / temp):
            x, f = y, fy
            if f < best_f:
                best_x, best_f = x, f
        temp *= cfg.anneal_cooling
    return best_x, best_f


def _restart(n: int, cfg: OptimizerConfig, seed_seq: np.random.SeedSequence):
    rng = np.random.default_rng(seed_seq)
    obj = _Objective(n)
    x = rng.normal(size=2**n) + 1j * rng.normal(size=2**n)
    x /= np.linalg.norm(x)
    trace: list[tuple[int, float]] = []
    x, f, it = _descend(obj, x, cfg, trace, 0)
    if cfg.anneal_steps > 0 and f > pme_lower_bound(n) + 1e-9:
        y, fy = _anneal(obj, x, f, cfg, rng)
        y, fy, _ = _descend(obj, y, cfg, [], it)
        if fy < f:
            x, f = y, fy
            trace.append((it + 1, f))
    return x, f, trace


def minimize_pme(n: int, config: OptimizerConfig | None = None):
    """Multi-restart projected gradient descent on pme.

    Returns ``(best_state, best_value, trace)`` where the trace lists
    ``(iteration, value)`` for the accepted steps of the winning restart.
    """
    if not 2 <= n <= 6:
        raise ValueError("minimize_pme supports 2 <= n <= 6")
    cfg = config or OptimizerConfig()
    seeds = np.random.SeedSequence(cfg.seed).spawn(cfg.restarts_for(n))
    best = None
    for seq in seeds:
        x, f, trace = _restart(n, cfg, seq)
        if best is None or f < best[1]:
            best = (x, f, trace)
    x, _, trace = best
    state = PureState(n, x / np.linalg.norm(x))
    return state, pme(state), trace
