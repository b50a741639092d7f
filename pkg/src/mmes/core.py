"""Pure qubit registers, partial traces, purity and the average balanced purity.

Basis convention: the computational index is read MSB-first, so qubit 1 is
the most significant bit, and sigma^z|0> = |0>, sigma^z|1> = -|1>.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb

import numpy as np

MAX_QUBITS = 12
NORM_TOL = 1e-9


@dataclass(frozen=True)
class PureState:
    n: int
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        if not 1 <= self.n <= MAX_QUBITS:
            raise ValueError(f"qubit count must be in 1..{MAX_QUBITS}, got {self.n}")
        amps = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if amps.shape != (2**self.n,):
            raise ValueError(f"expected {2**self.n} amplitudes, got {amps.size}")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dim(self) -> int:
        return 2**self.n

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def overlap(self, other: "PureState") -> complex:
        """<self|other>."""
        return complex(np.vdot(self.amplitudes, other.amplitudes))


@dataclass(frozen=True)
class Bipartition:
    n: int
    members: tuple[int, ...]

    def __post_init__(self):
        members = tuple(int(m) for m in self.members)
        if len(set(members)) != len(members):
            raise ValueError(f"repeated qubit index in {members}")
        if not 1 <= len(members) <= self.n - 1:
            raise ValueError(f"party size must be in 1..{self.n - 1}, got {len(members)}")
        if any(m < 1 or m > self.n for m in members):
            raise ValueError(f"qubit indices must lie in 1..{self.n}: {members}")
        object.__setattr__(self, "members", members)

    @property
    def complement(self) -> tuple[int, ...]:
        return tuple(q for q in range(1, self.n + 1) if q not in self.members)

    @property
    def balanced(self) -> bool:
        return len(self.members) == self.n // 2

    def __str__(self):
        return "{" + ",".join(map(str, self.members)) + "}"


@dataclass(frozen=True)
class DensityMatrix:
    entries: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]


def basis_state(n: int, k: int) -> PureState:
    if not 0 <= k < 2**n:
        raise ValueError(f"basis index {k} out of range for {n} qubits")
    amps = np.zeros(2**n, dtype=complex)
    amps[k] = 1.0
    return PureState(n, amps)


def state_from_amplitudes(n: int, raw, normalize: bool = False) -> PureState:
    amps = np.asarray(raw, dtype=complex).reshape(-1)
    if amps.size != 2**n:
        raise ValueError(f"expected {2**n} amplitudes, got {amps.size}")
    norm = np.linalg.norm(amps)
    if normalize:
        if norm <= 1e-12:
            raise ValueError("cannot normalize a zero vector")
        amps = amps / norm
    elif abs(norm - 1.0) > NORM_TOL:
        raise ValueError(f"state is not normalized (norm {norm:.12g})")
    return PureState(n, amps)


def _split(state: PureState, members) -> np.ndarray:
    """Amplitudes as a (2^|A|, 2^|rest|) matrix, party A on the rows."""
    axes = [m - 1 for m in members]
    rest = [q for q in range(state.n) if q not in axes]
    psi = state.amplitudes.reshape((2,) * state.n)
    return np.transpose(psi, axes + rest).reshape(2 ** len(axes), -1)


def reduced_density(state: PureState, part: Bipartition) -> DensityMatrix:
    if part.n != state.n:
        raise ValueError(f"bipartition is on {part.n} qubits, state on {state.n}")
    m = _split(state, part.members)
    return DensityMatrix(m @ m.conj().T)


def purity(rho: DensityMatrix) -> float:
    # Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho
    return float(np.vdot(rho.entries, rho.entries).real)


def balanced_bipartitions(n: int) -> list[Bipartition]:
    if n < 2:
        raise ValueError("need at least 2 qubits for a bipartition")
    return [Bipartition(n, c) for c in itertools.combinations(range(1, n + 1), n // 2)]


def purity_table(state: PureState) -> dict[Bipartition, float]:
    return {p: purity(reduced_density(state, p)) for p in balanced_bipartitions(state.n)}


def pme(state: PureState) -> float:
    """Average purity over all balanced bipartitions (potential of multipartite entanglement)."""
    table = purity_table(state)
    return sum(table.values()) / comb(state.n, state.n // 2)


def pme_lower_bound(n: int) -> float:
    return 2.0 ** -(n // 2)


def is_perfect_mmes(state: PureState, tol: float = 1e-10) -> bool:
    floor = pme_lower_bound(state.n)
    return all(abs(v - floor) <= tol for v in purity_table(state).values())


# -- state file format ------------------------------------------------------

def parse_state(text: str) -> PureState:
    """Parse the text state format.

    Either ``n <count>`` followed by 2^n lines of ``<re> <im>``, or a single
    line ``named <name>`` resolved through :func:`mmes.models.named_state`.
    """
    lines = [ln.strip() for ln in text.splitlines()]
    while lines and not lines[-1]:
        lines.pop()
    if not lines:
        raise ValueError("empty state file")
    head = lines[0].split()
    if len(head) != 2:
        raise ValueError(f"bad header line: {lines[0]!r}")
    if head[0] == "named":
        if len(lines) != 1:
            raise ValueError("trailing content after named state")
        from mmes.models import named_state

        return named_state(head[1])
    if head[0] != "n":
        raise ValueError(f"bad header line: {lines[0]!r}")
    try:
        n = int(head[1])
    except ValueError:
        raise ValueError(f"bad qubit count: {head[1]!r}") from None
    if not 1 <= n <= MAX_QUBITS:
        raise ValueError(f"qubit count out of range: {n}")
    body = lines[1:]
    if len(body) != 2**n:
        raise ValueError(f"expected {2**n} amplitude lines, got {len(body)}")
    amps = np.empty(2**n, dtype=complex)
    for i, ln in enumerate(body):
        parts = ln.split()
        if len(parts) != 2:
            raise ValueError(f"line {i + 2}: expected '<re> <im>', got {ln!r}")
        try:
            amps[i] = complex(float(parts[0]), float(parts[1]))
        except ValueError:
            raise ValueError(f"line {i + 2}: not a number: {ln!r}") from None
    return state_from_amplitudes(n, amps)


def format_state(state: PureState) -> str:
    rows = [f"n {state.n}"]
    rows += [f"{a.real:.17g} {a.imag:.17g}" for a in state.amplitudes]
    return "\n".join(rows) + "\n"
