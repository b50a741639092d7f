"""Dimensions of the local Hamiltonian spaces that keep each MMES an eigenstate."""
from mmes.models import ghz, m4, m5
from mmes.pauli import Topology, candidate_local_terms
from mmes.search import stabilizer_search, verify_basis

CASES = [("g1plus", ghz(1)), ("m4", m4()), ("m5", m5())]

if __name__ == "__main__":
    print("state,topology,candidates,dimension,max_residual")
    for name, state in CASES:
        for kind in ("chain", "ring", "complete"):
            cands = candidate_local_terms(state.n, Topology(kind, state.n))
            sb = stabilizer_search(state, cands)
            rep = verify_basis(sb)
            worst = max(rep.residuals, default=0.0)
            print(f"{name},{kind},{len(cands)},{sb.dimension},{worst:.1e}")
