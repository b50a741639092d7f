"""Multipartite entanglement of small qubit registers and local Hamiltonians
whose eigenstates are maximally multipartite entangled states."""

from mmes.core import (
    Bipartition,
    DensityMatrix,
    PureState,
    balanced_bipartitions,
    basis_state,
    is_perfect_mmes,
    pme,
    purity,
    purity_table,
    reduced_density,
    state_from_amplitudes,
)
from mmes.pauli import PauliOperator, PauliTerm, Topology, decompose, projector

__version__ = "0.1.0"
