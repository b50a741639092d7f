"""Local Hamiltonians admitting a given state as an eigenstate.

H = sum_k c_k T_k has |phi> as an eigenstate iff (1 - |phi><phi|) H |phi> = 0,
which is real-linear in the couplings c; the admissible couplings are the
null space of the stacked real and imaginary parts of that map.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from mmes.core import PureState
from mmes.pauli import PauliOperator, PauliTerm, apply, format_hamiltonian, sum_matrix
from mmes.spectral import batch_level_positions, eigenstate_check, operator_norm_bound

SVD_CUTOFF = 1e-9
RESIDUAL_TOL = 1e-8
CHUNK = 1000


@dataclass(frozen=True)
class StabilizerBasis:
    state: PureState
    candidates: tuple[PauliTerm, ...]
    basis: np.ndarray  # (dimension, len(candidates)), orthonormal rows

    @property
    def dimension(self) -> int:
        return self.basis.shape[0]

    def operator(self, coeffs) -> PauliOperator:
        """sum_k coeffs[k] T_k over the candidate terms."""
        n = self.state.n
        return PauliOperator(n, (PauliTerm(t.letters, c * t.coefficient)
                                 for t, c in zip(self.candidates, coeffs) if c != 0.0))

    def operators(self) -> list[PauliOperator]:
        return [self.operator(v) for v in self.basis]

    def family(self) -> "CouplingFamily":
        return CouplingFamily(self.state, tuple(self.operators()))


@dataclass(frozen=True)
class CouplingFamily:
    """H(c) = sum_d c_d G_d with each generator G_d admitting ``state`` as an eigenstate."""

    state: PureState
    generators: tuple[PauliOperator, ...]

    @property
    def dimension(self) -> int:
        return len(self.generators)


def _constraint_matrix(state: PureState, candidates: Sequence[PauliTerm]) -> np.ndarray:
    psi = state.amplitudes
    cols = []
    for t in candidates:
        v = apply(PauliOperator(state.n, [t]), state)
        cols.append(v - np.vdot(psi, v) * psi)
    a = np.array(cols).T
    return np.vstack([a.real, a.imag])


def stabilizer_search(state: PureState, candidates: Sequence[PauliTerm], tol: float = SVD_CUTOFF) -> StabilizerBasis:
    if not candidates:
        raise ValueError("no candidate terms")
    if any(t.n != state.n for t in candidates):
        raise ValueError("candidate terms do not match the state size")
    a = _constraint_matrix(state, candidates)
    _, s, vh = np.linalg.svd(a, full_matrices=True)
    # |T_k psi| = |c_k| sets the scale when every column is numerically zero
    scale = max(s[0] if s.size else 0.0, max(abs(t.coefficient) for t in candidates))
    cut = tol * scale
    rank = int(np.sum(s > cut))
    basis = vh[rank:].copy()
    # sign convention: largest-magnitude entry of each vector is positive
    for row in basis:
        j = np.argmax(np.abs(row))
        if row[j] < 0:
            row *= -1
    basis[np.abs(basis) < 1e-15] = 0.0
    return StabilizerBasis(state, tuple(candidates), basis)


class BasisVerificationError(ValueError):
    def __init__(self, index: int, residual: float):
        super().__init__(f"basis vector {index} is not a stabilizer (residual {residual:.3g})")
        self.index = index
        self.residual = residual


@dataclass
class BasisReport:
    residuals: list[float]
    eigenvalues: list[float]
    orthonormality_error: float
    texts: list[str] = field(repr=False)


def verify_basis(sb: StabilizerBasis, tol: float = RESIDUAL_TOL) -> BasisReport:
    residuals, values, texts = [], [], []
    for i, vec in enumerate(sb.basis):
        op = sb.operator(vec)
        value, res = eigenstate_check(op, sb.state)
        if res > tol:
            raise BasisVerificationError(i, res)
        residuals.append(res)
        values.append(value)
        texts.append(format_hamiltonian(op))
    gram = sb.basis @ sb.basis.T
    ortho = float(np.max(np.abs(gram - np.eye(sb.dimension)), initial=0.0))
    if ortho > tol:
        raise ValueError(f"basis is not orthonormal (error {ortho:.3g})")
    return BasisReport(residuals, values, ortho, texts)


# -- random coupling experiments ----------------------------------------------------

@dataclass
class SamplingReport:
    seed: int
    samples: int
    mean_normalized_position: float
    min_level_index: int
    max_level_index: int
    degenerate_fraction: float
    level_counts: dict[int, int]
    log: dict[str, np.ndarray] | None = field(default=None, repr=False)

    @property
    def nondegenerate(self) -> int:
        return sum(self.level_counts.values())

    CSV_HEADER = "seed,samples,mean_pos,min_level,degen_frac"

    def csv_row(self) -> str:
        return (f"{self.seed},{self.samples},{self.mean_normalized_position:.12g},"
                f"{self.min_level_index},{self.degenerate_fraction:.12g}")


def _as_family(family) -> CouplingFamily:
    if isinstance(family, StabilizerBasis):
        return family.family()
    return family


def _prepare(family: CouplingFamily):
    state = family.state
    psi = state.amplitudes
    mats = np.array([sum_matrix(g) for g in family.generators])
    gpsi = mats @ psi
    means = (gpsi @ psi.conj()).real
    resid = gpsi - means[:, None] * psi
    norms = np.array([operator_norm_bound(g) for g in family.generators])
    return mats, means, resid, norms


def _sample_chunk(prepared, coeffs: np.ndarray, tol: float):
    mats, means, resid, norms = prepared
    h = np.einsum("sd,dij->sij", coeffs, mats)
    target = coeffs @ means
    res = np.linalg.norm(coeffs @ resid, axis=1)
    bound = np.abs(coeffs) @ norms
    bad = np.nonzero(res > RESIDUAL_TOL * np.maximum(1.0, bound))[0]
    if bad.size:
        raise ValueError(f"sampled Hamiltonian does not keep the state (residual {res[bad[0]]:.3g})")
    eigs = np.linalg.eigvalsh(h)
    level, normalized, degenerate, _ = batch_level_positions(eigs, target, tol)
    return level, normalized, degenerate


def _chunk_coefficients(seed: int, n_samples: int, dim: int, low: float, high: float):
    n_chunks = -(-n_samples // CHUNK)
    streams = np.random.SeedSequence(seed).spawn(n_chunks)
    for c, ss in enumerate(streams):
        size = min(CHUNK, n_samples - c * CHUNK)
        yield np.random.default_rng(ss).uniform(low, high, (size, dim))


def _run(family, n_samples: int, seed: int, tol: float, workers: int, low: float, high: float):
    family = _as_family(family)
    if family.dimension < 1:
        raise ValueError("coupling family is empty")
    prepared = _prepare(family)
    chunks = list(_chunk_coefficients(seed, n_samples, family.dimension, low, high))
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(lambda c: _sample_chunk(prepared, c, tol), chunks))
    else:
        parts = [_sample_chunk(prepared, c, tol) for c in chunks]
    coeffs = np.concatenate(chunks) if chunks else np.zeros((0, family.dimension))
    level, normalized, degenerate = (np.concatenate(x) for x in zip(*parts))
    return coeffs, level, normalized, degenerate


def random_coupling_experiment(family, n_samples: int, seed: int, tol: float = 1e-8,
                               workers: int = 1, keep_log: bool = False,
                               low: float = -1.0, high: float = 1.0) -> SamplingReport:
    """Draw couplings uniformly in [low, high]^d and locate the state's level.

    ``family`` is a :class:`StabilizerBasis` (sampled over its basis operators)
    or a :class:`CouplingFamily`. Samples where the state's level is degenerate
    are counted but left out of the position statistics. Coefficients come from
    independent per-chunk streams spawned from ``seed``, so results do not depend
    on ``workers``.
    """
    coeffs, level, normalized, degenerate = _run(family, n_samples, seed, tol, workers, low, high)
    ok = ~degenerate
    levels, counts = np.unique(level[ok], return_counts=True)
    log = None
    if keep_log:
        log = {"coefficients": coeffs, "level": level, "normalized": normalized, "degenerate": degenerate}
    return SamplingReport(
        seed=seed,
        samples=n_samples,
        mean_normalized_position=float(normalized[ok].mean()) if ok.any() else float("nan"),
        min_level_index=int(level[ok].min()) if ok.any() else -1,
        max_level_index=int(level[ok].max()) if ok.any() else -1,
        degenerate_fraction=float(degenerate.mean()) if n_samples else 0.0,
        level_counts={int(a): int(b) for a, b in zip(levels, counts)},
        log=log,
    )


@dataclass
class NogoReport:
    samples: int
    ground_nondegenerate: int
    ground_degenerate: int
    excited: int

    CSV_HEADER = "samples,ground_nondegenerate,ground_degenerate,excited"

    def csv_row(self) -> str:
        return f"{self.samples},{self.ground_nondegenerate},{self.ground_degenerate},{self.excited}"


def nogo_probe(family, n_samples: int, seed: int, tol: float = 1e-8,
               low: float = -1.0, high: float = 1.0) -> NogoReport:
    """Count samples where the state is a non-degenerate ground state, a degenerate
    ground state, or an excited state."""
    _, level, _, degenerate = _run(family, n_samples, seed, tol, 1, low, high)
    ground = level == 0
    return NogoReport(
        samples=n_samples,
        ground_nondegenerate=int(np.sum(ground & ~degenerate)),
        ground_degenerate=int(np.sum(ground & degenerate)),
        excited=int(np.sum(~ground)),
    )
