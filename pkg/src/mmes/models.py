"""Named states and Hamiltonians: the GHZ octet, the uniform 4- and 5-qubit
MMES, the general two-body Hamiltonian on three qubits and the two
(J, k) families whose eigenvalues 3J and 2J belong to an MMES.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations

import numpy as np

from mmes.core import PureState, basis_state, pme, state_from_amplitudes
from mmes.pauli import PauliOperator, PauliTerm, Topology, candidate_local_terms, projector, sum_matrix
from mmes.spectral import eigh, level_position

ZETA4 = (1, 1, 1, 1, 1, 1, -1, -1, 1, -1, 1, -1, -1, 1, 1, -1)
ZETA5 = (1, 1, 1, 1, 1, -1, -1, 1, 1, -1, -1, 1, 1, 1, 1, 1, 1, 1,
         -1, -1, 1, -1, 1, -1, -1, 1, -1, 1, -1, -1, 1, 1)

# GHZ pairs |a> +- |~a>; the fourth pair uses |100>, completing an orthonormal basis
GHZ_PAIRS = ((0b000, 0b111), (0b001, 0b110), (0b010, 0b101), (0b011, 0b100))


def ghz(i: int, sign: int = +1) -> PureState:
    """|G_i^{+-}> for i in 1..4."""
    if not 1 <= i <= 4:
        raise ValueError("GHZ index must be 1..4")
    a, b = GHZ_PAIRS[i - 1]
    amps = np.zeros(8, dtype=complex)
    amps[a] = 1.0
    amps[b] = 1.0 if sign > 0 else -1.0
    return state_from_amplitudes(3, amps, normalize=True)


def ghz_basis() -> list[PureState]:
    """[G1+, G1-, G2+, G2-, G3+, G3-, G4+, G4-]."""
    return [ghz(i, s) for i in range(1, 5) for s in (+1, -1)]


def m4() -> PureState:
    return state_from_amplitudes(4, np.array(ZETA4) / 4.0)


def m5() -> PureState:
    return state_from_amplitudes(5, np.array(ZETA5) / (4.0 * np.sqrt(2.0)))


def ghz_projector_parts(i: int) -> tuple[PauliOperator, PauliOperator]:
    """(Q_i, C_i) with P_i^+- = Q_i +- C_i; Q_i has weight <= 2, C_i weight 3."""
    p = projector(ghz(i, +1))
    return p.restrict({0, 1, 2}), p.restrict({3})


# -- general two-body Hamiltonian on three qubits ---------------------------------

def _pairs():
    return [(i, j) for i in range(1, 4) for j in range(i + 1, 4)]


@dataclass
class H2Params:
    """Couplings of the most general two-body three-qubit Hamiltonian.

    ``J[a]`` holds J^a_ij at [i-1, j-1] for i < j; ``K``, ``X``, ``Y`` are
    ordered (i != j) and multiply s_i^x s_j^y, s_i^x s_j^z and s_i^y s_j^z;
    ``h`` is a (site, axis) array of fields.
    """

    J: dict[str, np.ndarray] = field(default_factory=lambda: {a: np.zeros((3, 3)) for a in "xyz"})
    K: np.ndarray = field(default_factory=lambda: np.zeros((3, 3)))
    X: np.ndarray = field(default_factory=lambda: np.zeros((3, 3)))
    Y: np.ndarray = field(default_factory=lambda: np.zeros((3, 3)))
    h: np.ndarray = field(default_factory=lambda: np.zeros((3, 3)))

    def terms(self) -> list[PauliTerm]:
        out = []
        for s in range(1, 4):
            for ax, a in enumerate("XYZ"):
                out.append(PauliTerm.from_sites(3, {s: a}, self.h[s - 1, ax]))
        for i, j in _pairs():
            for a in "xyz":
                out.append(PauliTerm.from_sites(3, {i: a.upper(), j: a.upper()}, self.J[a][i - 1, j - 1]))
        for i, j in permutations(range(1, 4), 2):
            out.append(PauliTerm.from_sites(3, {i: "X", j: "Y"}, self.K[i - 1, j - 1]))
            out.append(PauliTerm.from_sites(3, {i: "X", j: "Z"}, self.X[i - 1, j - 1]))
            out.append(PauliTerm.from_sites(3, {i: "Y", j: "Z"}, self.Y[i - 1, j - 1]))
        return out

    @classmethod
    def from_operator(cls, op: PauliOperator) -> "H2Params":
        """Inverse of :func:`h2_general`; rejects identity and weight-3 content."""
        if op.n != 3:
            raise ValueError("H2Params describes three qubits")
        p = cls()
        for t in op.terms:
            sites = t.support
            letters = [t.letters[s - 1] for s in sites]
            if len(sites) == 1:
                p.h[sites[0] - 1, "XYZ".index(letters[0])] = t.coefficient
                continue
            if len(sites) != 2:
                raise ValueError(f"term {t.label()} is not a one- or two-body term")
            (i, j), (a, b) = sites, letters
            if a == b:
                p.J[a.lower()][i - 1, j - 1] = t.coefficient
                continue
            # orient so the first letter precedes the second in x < y < z
            if "XYZ".index(a) > "XYZ".index(b):
                i, j, a, b = j, i, b, a
            table = {("X", "Y"): p.K, ("X", "Z"): p.X, ("Y", "Z"): p.Y}[a, b]
            table[i - 1, j - 1] = t.coefficient
        return p

    def to_vector(self) -> np.ndarray:
        """Coefficients in :func:`candidate_local_terms` order for the complete graph."""
        coeffs = h2_general(self).as_dict()
        cands = candidate_local_terms(3, Topology("complete", 3))
        return np.array([coeffs.get(t.letters, 0.0) for t in cands])

    @classmethod
    def random(cls, rng: np.random.Generator, scale: float = 1.0) -> "H2Params":
        p = cls()
        for a in "xyz":
            p.J[a] = np.triu(rng.uniform(-scale, scale, (3, 3)), 1)
        off = ~np.eye(3, dtype=bool)
        for name in "KXY":
            getattr(p, name)[off] = rng.uniform(-scale, scale, 6)
        p.h[:] = rng.uniform(-scale, scale, (3, 3))
        return p

    @classmethod
    def random_g1(cls, rng: np.random.Generator, scale: float = 1.0) -> "H2Params":
        """Random couplings satisfying :func:`g1_constraints` (23 free numbers)."""
        p = cls.random(rng, scale)
        for M in (p.X, p.Y):
            # zero row sums: fix the last off-diagonal entry of each row
            for i in range(3):
                j = 2 if i != 2 else 1
                M[i, j] = 0.0
                M[i, j] = -M[i].sum()
        p.h[2, 2] = -p.h[0, 2] - p.h[1, 2]
        for s, (i, j) in zip(range(3), [(1, 2), (0, 2), (0, 1)]):
            p.h[s, 0] = p.J["y"][i, j] - p.J["x"][i, j]
            p.h[s, 1] = p.K[i, j] + p.K[j, i]
        return p


def h2_general(params: H2Params) -> PauliOperator:
    return PauliOperator(3, params.terms())


def g1_constraints(params: H2Params) -> np.ndarray:
    """Residuals of the 13 linear conditions making G1+ an eigenstate.

    The y-field on site 2 is tied to K_13 + K_31, by symmetry with sites 1 and 3.
    """
    p = params
    r = [p.h[:, 2].sum()]
    r += [p.X[i].sum() - p.X[i, i] for i in range(3)]
    r += [p.Y[i].sum() - p.Y[i, i] for i in range(3)]
    for s, (i, j) in zip(range(3), [(1, 2), (0, 2), (0, 1)]):
        r.append(p.h[s, 0] - (p.J["y"][i, j] - p.J["x"][i, j]))
        r.append(p.h[s, 1] - (p.K[i, j] + p.K[j, i]))
    return np.array(r)


def check_g1_conditions(params: H2Params, tol: float = 1e-10) -> bool:
    return bool(np.all(np.abs(g1_constraints(params)) <= tol))


# -- (J, k) families ------------------------------------------------------------------

def hjk3(J: float, k: float) -> PauliOperator:
    """J sum Z_i Z_{i+1} + k sum (X_i X_{i+1} - X_i) on a three-site ring."""
    terms = []
    for i in range(1, 4):
        j = i % 3 + 1
        terms.append(PauliTerm.from_sites(3, {i: "Z", j: "Z"}, J))
        terms.append(PauliTerm.from_sites(3, {i: "X", j: "X"}, k))
        terms.append(PauliTerm.from_sites(3, {i: "X"}, -k))
    return PauliOperator(3, terms)


def hjk4(J: float, k: float) -> PauliOperator:
    """J (X4 Z1 + X3 Z2) + k (X1 Z4 + X2 Z3 + X2 Z1 + X1 Z2 - sum Z_i)."""
    s = PauliTerm.from_sites
    terms = [s(4, {4: "X", 1: "Z"}, J), s(4, {3: "X", 2: "Z"}, J),
             s(4, {1: "X", 4: "Z"}, k), s(4, {2: "X", 3: "Z"}, k),
             s(4, {2: "X", 1: "Z"}, k), s(4, {1: "X", 2: "Z"}, k)]
    terms += [s(4, {i: "Z"}, -k) for i in range(1, 5)]
    return PauliOperator(4, terms)


@dataclass(frozen=True)
class GroundFacts:
    ground_energy: float
    gs_pme: float
    ghz_level: int
    ground_degenerate: bool
    ghz_degenerate: bool


def hjk3_ground_facts(J: float, k: float) -> GroundFacts:
    """Ground energy, ground-state pme and the level index of the GHZ eigenvalue 3J.

    The matrix is real, so a degenerate ground level is represented by a real
    eigenvector; ``ground_degenerate`` flags that case.
    """
    spec = eigh(sum_matrix(hjk3(J, k)))
    gs = PureState(3, spec.eigenvectors[:, 0])
    level, _, degenerate = level_position(spec, 3 * J)
    return GroundFacts(
        ground_energy=float(spec.eigenvalues[0]),
        gs_pme=pme(gs),
        ghz_level=level,
        ground_degenerate=len(spec.clusters[0]) > 1,
        ghz_degenerate=degenerate,
    )


# -- registry ---------------------------------------------------------------------------

def named_state(name: str) -> PureState:
    """``ghz3``, ``g<i>plus`` / ``g<i>minus`` (i = 1..4), ``m4``, ``m5``, ``zero<n>``."""
    key = name.strip().lower()
    if key in ("ghz3", "g1plus"):
        return ghz(1, +1)
    if key == "m4":
        return m4()
    if key == "m5":
        return m5()
    if len(key) >= 5 and key[0] == "g" and key[1] in "1234" and key[2:] in ("plus", "minus"):
        return ghz(int(key[1]), +1 if key[2:] == "plus" else -1)
    if key.startswith("zero") and key[4:].isdigit():
        return basis_state(int(key[4:]), 0)
    raise ValueError(f"unknown named state {name!r}")


def named_hamiltonian(spec: str) -> PauliOperator:
    """``hjk3:J,k`` or ``hjk4:J,k``."""
    name, _, args = spec.partition(":")
    builders = {"hjk3": hjk3, "hjk4": hjk4}
    if name not in builders:
        raise ValueError(f"unknown named Hamiltonian {spec!r}")
    try:
        J, k = (float(v) for v in args.split(","))
    except ValueError:
        raise ValueError(f"expected {name}:J,k, got {spec!r}") from None
    return builders[name](J, k)
