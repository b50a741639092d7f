"""Real-weighted Pauli-string operators on n qubits.

A Pauli string acts on a computational basis state |b> as a signed bit flip,
P|b> = phase(b) |b ^ xmask>, which is how every routine here touches
amplitudes; dense matrices are only built on request.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from mmes.core import MAX_QUBITS, PureState

LETTERS = "IXYZ"
DROP_TOL = 1e-12


@dataclass(frozen=True)
class PauliTerm:
    letters: str
    coefficient: float = 1.0

    def __post_init__(self):
        if not self.letters or set(self.letters) - set(LETTERS):
            raise ValueError(f"bad Pauli letters {self.letters!r}")
        c = float(self.coefficient)
        if not np.isfinite(c):
            raise ValueError("coefficient must be finite")
        object.__setattr__(self, "coefficient", c)

    @classmethod
    def from_sites(cls, n: int, sites: Mapping[int, str], coefficient: float = 1.0):
        """Build from a 1-based {site: letter} map, e.g. ``{4: "X", 1: "Z"}``."""
        letters = ["I"] * n
        for site, letter in sites.items():
            if not 1 <= site <= n:
                raise ValueError(f"site {site} outside 1..{n}")
            letters[site - 1] = letter
        return cls("".join(letters), coefficient)

    @property
    def n(self) -> int:
        return len(self.letters)

    @property
    def weight(self) -> int:
        return sum(c != "I" for c in self.letters)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i + 1 for i, c in enumerate(self.letters) if c != "I")

    def label(self) -> str:
        """Site-indexed text such as ``X1 Z2``; identity is ``I``."""
        s = " ".join(f"{c}{i + 1}" for i, c in enumerate(self.letters) if c != "I")
        return s or "I"


class PauliOperator:
    """Canonical sum of Pauli terms: unique letter patterns, sorted, no zeros."""

    def __init__(self, n: int, terms: Iterable[PauliTerm] = ()):
        self.n = n
        acc: dict[str, float] = {}
        for t in terms:
            if t.n != n:
                raise ValueError(f"term {t.letters} has {t.n} sites, operator has {n}")
            acc[t.letters] = acc.get(t.letters, 0.0) + t.coefficient
        self.terms = tuple(PauliTerm(k, v) for k, v in sorted(acc.items()) if v != 0.0)

    @classmethod
    def from_dict(cls, n: int, coeffs: Mapping[str, float]):
        return cls(n, (PauliTerm(k, v) for k, v in coeffs.items()))

    def as_dict(self) -> dict[str, float]:
        return {t.letters: t.coefficient for t in self.terms}

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def __eq__(self, other):
        return isinstance(other, PauliOperator) and self.n == other.n and self.terms == other.terms

    def __add__(self, other: "PauliOperator") -> "PauliOperator":
        if other.n != self.n:
            raise ValueError("operators act on different qubit counts")
        return PauliOperator(self.n, self.terms + other.terms)

    def __neg__(self):
        return self * -1.0

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar: float) -> "PauliOperator":
        return PauliOperator(self.n, (PauliTerm(t.letters, scalar * t.coefficient) for t in self.terms))

    __rmul__ = __mul__

    def __repr__(self):
        return f"PauliOperator(n={self.n}, {format_hamiltonian(self).strip()!r})"

    def max_weight(self) -> int:
        return max((t.weight for t in self.terms), default=0)

    def restrict(self, weights: Iterable[int]) -> "PauliOperator":
        keep = set(weights)
        return PauliOperator(self.n, (t for t in self.terms if t.weight in keep))

    def close_to(self, other: "PauliOperator", tol: float = 1e-10) -> bool:
        a, b = self.as_dict(), other.as_dict()
        return all(abs(a.get(k, 0.0) - b.get(k, 0.0)) <= tol for k in set(a) | set(b))


# -- bit-level action ---------------------------------------------------------

def _masks(letters: str) -> tuple[int, int, int]:
    """(flip mask, sign mask, number of Y letters); qubit 1 is the MSB."""
    n = len(letters)
    xmask = zmask = 0
    ny = 0
    for i, c in enumerate(letters):
        bit = 1 << (n - 1 - i)
        if c in "XY":
            xmask |= bit
        if c in "YZ":
            zmask |= bit
        ny += c == "Y"
    return xmask, zmask, ny


def _parity(values: np.ndarray) -> np.ndarray:
    v = values.copy()
    shift = 1
    while shift < 32:
        v ^= v >> shift
        shift <<= 1
    return v & 1


def _phases(letters: str, idx: np.ndarray) -> tuple[int, np.ndarray]:
    xmask, zmask, ny = _masks(letters)
    signs = 1 - 2 * _parity(idx & zmask)
    return xmask, (1j) ** ny * signs


def _check_size(n: int):
    if n > MAX_QUBITS:
        raise ValueError(f"{n} qubits exceeds the dense limit of {MAX_QUBITS}")


def term_matrix(term: PauliTerm) -> np.ndarray:
    _check_size(term.n)
    dim = 2**term.n
    idx = np.arange(dim)
    xmask, ph = _phases(term.letters, idx)
    m = np.zeros((dim, dim), dtype=complex)
    m[idx ^ xmask, idx] = term.coefficient * ph
    return m


def sum_matrix(op: PauliOperator) -> np.ndarray:
    _check_size(op.n)
    dim = 2**op.n
    idx = np.arange(dim)
    m = np.zeros((dim, dim), dtype=complex)
    for t in op.terms:
        xmask, ph = _phases(t.letters, idx)
        m[idx ^ xmask, idx] += t.coefficient * ph
    return m


def apply(op: PauliOperator, state: PureState) -> np.ndarray:
    """H|psi> without materializing H."""
    if op.n != state.n:
        raise ValueError(f"operator on {op.n} qubits, state on {state.n}")
    psi = state.amplitudes
    idx = np.arange(psi.size)
    out = np.zeros_like(psi)
    for t in op.terms:
        xmask, ph = _phases(t.letters, idx)
        out += t.coefficient * (ph * psi)[idx ^ xmask]
    return out


def expectation(op: PauliOperator, state: PureState) -> float:
    return float(np.vdot(state.amplitudes, apply(op, state)).real)


# -- decomposition ------------------------------------------------------------

def _walsh_hadamard(v: np.ndarray, n: int) -> np.ndarray:
    """out[z] = sum_b (-1)^{popcount(b & z)} v[b]."""
    a = v.reshape((2,) * n).astype(complex)
    for ax in range(n):
        a0 = np.take(a, 0, axis=ax)
        a1 = np.take(a, 1, axis=ax)
        a = np.stack([a0 + a1, a0 - a1], axis=ax)
    return a.reshape(-1)


def _letters_from_masks(x: int, z: int, n: int) -> str:
    out = []
    for i in range(n):
        bit = 1 << (n - 1 - i)
        out.append(_BITS_TO_LETTER[bool(x & bit), bool(z & bit)])
    return "".join(out)


_BITS_TO_LETTER = {(False, False): "I", (True, False): "X", (True, True): "Y", (False, True): "Z"}


def decompose(matrix: np.ndarray, n: int, tol: float = DROP_TOL) -> PauliOperator:
    """Expand a Hermitian matrix as sum_P c_P sigma_P with c_P = Tr(sigma_P M) / 2^n."""
    m = np.asarray(matrix, dtype=complex)
    dim = 2**n
    if m.shape != (dim, dim):
        raise ValueError(f"expected a {dim}x{dim} matrix, got {m.shape}")
    if np.max(np.abs(m - m.conj().T), initial=0.0) > 1e-9:
        raise ValueError("matrix is not Hermitian")
    idx = np.arange(dim)
    coeffs = {}
    for x in range(dim):
        # Tr(sigma_P M) = i^{nY} sum_b (-1)^{b.z} M[b, b^x]
        wh = _walsh_hadamard(m[idx, idx ^ x], n)
        for z in np.nonzero(np.abs(wh) > tol * dim)[0]:
            ny = bin(x & int(z)).count("1")
            c = (1j) ** ny * wh[z] / dim
            if abs(c.real) > tol:
                coeffs[_letters_from_masks(x, int(z), n)] = float(c.real)
    return PauliOperator.from_dict(n, coeffs)


def projector(state: PureState) -> PauliOperator:
    """Pauli expansion of |phi><phi|."""
    if state.n > 8:
        raise ValueError("projector expansion is limited to 8 qubits")
    psi = state.amplitudes
    return decompose(np.outer(psi, psi.conj()), state.n)


# -- locality -------------------------------------------------------------------

@dataclass(frozen=True)
class Topology:
    kind: str
    n: int

    def __post_init__(self):
        if self.kind not in ("ring", "chain", "complete"):
            raise ValueError(f"unknown topology {self.kind!r}")

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        n = self.n
        if self.kind == "complete":
            return tuple(itertools.combinations(range(1, n + 1), 2))
        edges = [(i, i + 1) for i in range(1, n)]
        if self.kind == "ring" and n > 2:
            edges.append((n, 1))
        return tuple(edges)

    def adjacent(self, i: int, j: int) -> bool:
        return (i, j) in self.edges or (j, i) in self.edges


def is_local(term: PauliTerm, topo: Topology) -> bool:
    if term.n != topo.n:
        raise ValueError("term and topology sizes differ")
    sites = term.support
    if len(sites) <= 1:
        return True
    return len(sites) == 2 and topo.adjacent(*sites)


def candidate_local_terms(n: int, topo: Topology) -> list[PauliTerm]:
    """All single-site fields, then all nine two-site couplings per edge."""
    if n < 2:
        raise ValueError("need at least 2 qubits")
    if topo.n != n:
        raise ValueError("topology size differs from n")
    out = [PauliTerm.from_sites(n, {i: a}) for i in range(1, n + 1) for a in "XYZ"]
    for i, j in topo.edges:
        out += [PauliTerm.from_sites(n, {i: a, j: b}) for a in "XYZ" for b in "XYZ"]
    return out


# -- text format ----------------------------------------------------------------

_FACTOR = re.compile(r"^([XYZ])(\d+)$")


def parse_hamiltonian(text: str, n: int | None = None) -> PauliOperator:
    """Parse ``<coefficient> <letter><site>...`` lines (``<coefficient> I`` for identity).

    The qubit count is the largest site mentioned unless ``n`` is given.
    """
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            coef = float(parts[0])
        except ValueError:
            raise ValueError(f"line {lineno}: bad coefficient {parts[0]!r}") from None
        factors = parts[1:]
        if not factors:
            raise ValueError(f"line {lineno}: missing operator")
        sites: dict[int, str] = {}
        if factors != ["I"]:
            for f in factors:
                mt = _FACTOR.match(f)
                if not mt:
                    raise ValueError(f"line {lineno}: bad factor {f!r}")
                site = int(mt.group(2))
                if site < 1 or site in sites:
                    raise ValueError(f"line {lineno}: bad or repeated site in {f!r}")
                sites[site] = mt.group(1)
        rows.append((coef, sites))
    top = max((max(s, default=1) for _, s in rows), default=1)
    if n is None:
        n = top
    elif top > n:
        raise ValueError(f"site {top} exceeds qubit count {n}")
    return PauliOperator(n, (PauliTerm.from_sites(n, s, c) for c, s in rows))


def format_hamiltonian(op: PauliOperator) -> str:
    return "".join(f"{t.coefficient:.17g} {t.label()}\n" for t in op.terms)
