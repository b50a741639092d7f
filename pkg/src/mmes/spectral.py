"""Dense Hermitian diagonalization, degeneracy clusters and level positions.

Levels are counted as distinct eigenvalue clusters, not with multiplicity:
the "second excited state" is level index 2 whatever the ground multiplicity.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from mmes.core import PureState
from mmes.pauli import PauliOperator, apply

DEGENERACY_TOL = 1e-8
MAX_DIM = 4096


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    clusters: tuple[tuple[int, ...], ...]

    @property
    def width(self) -> float:
        return float(self.eigenvalues[-1] - self.eigenvalues[0])

    @property
    def n_levels(self) -> int:
        return len(self.clusters)

    def level_of(self, i: int) -> int:
        for level, members in enumerate(self.clusters):
            if i in members:
                return level
        raise IndexError(i)


def degeneracy_clusters(eigs, tol: float = DEGENERACY_TOL) -> tuple[tuple[int, ...], ...]:
    """Group ascending eigenvalues whose consecutive gaps are below tol * max(1, width)."""
    e = np.asarray(eigs, dtype=float)
    if e.size == 0:
        return ()
    if np.any(np.diff(e) < -1e-12):
        raise ValueError("eigenvalues must be ascending")
    cut = tol * max(1.0, e[-1] - e[0])
    clusters, current = [], [0]
    for i in range(1, e.size):
        if e[i] - e[i - 1] < cut:
            current.append(i)
        else:
            clusters.append(tuple(current))
            current = [i]
    clusters.append(tuple(current))
    return tuple(clusters)


def eigh(matrix, tol: float = DEGENERACY_TOL) -> Spectrum:
    """Full eigendecomposition. Real symmetric input keeps real eigenvectors."""
    h = np.asarray(matrix)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {h.shape}")
    if h.shape[0] > MAX_DIM:
        raise ValueError(f"dimension {h.shape[0]} exceeds {MAX_DIM}")
    if np.max(np.abs(h - h.conj().T), initial=0.0) > 1e-9:
        raise ValueError("matrix is not Hermitian")
    if np.iscomplexobj(h) and np.max(np.abs(h.imag), initial=0.0) == 0.0:
        h = h.real
    w, v = np.linalg.eigh(h)
    return Spectrum(w, v.astype(complex), degeneracy_clusters(w, tol))


def operator_norm_bound(op: PauliOperator) -> float:
    return sum(abs(t.coefficient) for t in op.terms)


def eigenstate_check(op: PauliOperator, state: PureState) -> tuple[float, float]:
    """(<psi|H|psi>, ||H psi - <H> psi||)."""
    hpsi = apply(op, state)
    value = float(np.vdot(state.amplitudes, hpsi).real)
    residual = float(np.linalg.norm(hpsi - value * state.amplitudes))
    return value, residual


def is_eigenstate(op: PauliOperator, state: PureState, rtol: float = 1e-9) -> bool:
    _, res = eigenstate_check(op, state)
    return res <= rtol * max(1.0, operator_norm_bound(op))


def level_position(spec: Spectrum, value: float, tol: float = 1e-7) -> tuple[int, float, bool]:
    """(level index, index / (levels - 1), degenerate) of the eigenvalue nearest ``value``."""
    e = spec.eigenvalues
    i = int(np.argmin(np.abs(e - value)))
    if abs(e[i] - value) > tol * max(1.0, spec.width):
        raise ValueError(f"no eigenvalue within tolerance of {value:.12g}")
    level = spec.level_of(i)
    top = spec.n_levels - 1
    return level, (level / top if top else 0.0), len(spec.clusters[level]) > 1


def batch_level_positions(eigs: np.ndarray, values: np.ndarray, tol: float = DEGENERACY_TOL):
    """Vectorized :func:`level_position` over a stack of ascending spectra.

    Returns (level index, normalized position, degenerate, mismatch) arrays;
    ``mismatch`` is the distance from each target to its nearest eigenvalue.
    """
    eigs = np.asarray(eigs, dtype=float)
    width = eigs[:, -1] - eigs[:, 0]
    cut = tol * np.maximum(1.0, width)
    breaks = np.diff(eigs, axis=1) >= cut[:, None]
    labels = np.concatenate([np.zeros((eigs.shape[0], 1), int), np.cumsum(breaks, axis=1)], axis=1)
    nearest = np.argmin(np.abs(eigs - values[:, None]), axis=1)
    rows = np.arange(eigs.shape[0])
    level = labels[rows, nearest]
    top = labels[:, -1]
    size = np.sum(labels == level[:, None], axis=1)
    normalized = np.divide(level, top, out=np.zeros(level.shape), where=top > 0)
    mismatch = np.abs(eigs[rows, nearest] - values)
    return level, normalized, size > 1, mismatch
