import numpy as np
import pytest

from mmes.core import PureState, basis_state
from mmes.models import H2Params, check_g1_conditions, ghz, hjk4, m4
from mmes.pauli import PauliOperator, PauliTerm, Topology, candidate_local_terms
from mmes.search import (
    BasisVerificationError,
    CouplingFamily,
    StabilizerBasis,
    nogo_probe,
    random_coupling_experiment,
    stabilizer_search,
    verify_basis,
)


@pytest.fixture(scope="module")
def g1_basis():
    return stabilizer_search(ghz(1), candidate_local_terms(3, Topology("complete", 3)))


@pytest.fixture(scope="module")
def m4_basis():
    return stabilizer_search(m4(), candidate_local_terms(4, Topology("ring", 4)))


def test_product_state_fields():
    sb = stabilizer_search(basis_state(2, 0), [PauliTerm("ZI"), PauliTerm("IZ"), PauliTerm("XI")])
    assert sb.dimension == 2
    assert np.allclose(sb.basis[:, 2], 0)


def test_g1_dimension(g1_basis):
    assert g1_basis.dimension == 23


def test_g1_basis_verifies(g1_basis):
    report = verify_basis(g1_basis)
    assert len(report.residuals) == 23
    assert max(report.residuals) <= 1e-8
    assert report.orthonormality_error < 1e-10
    assert all(text.strip() for text in report.texts)


def test_g1_basis_satisfies_conditions(g1_basis):
    for op in g1_basis.operators():
        assert check_g1_conditions(H2Params.from_operator(op))


def test_m4_dimensions():
    dims = {kind: stabilizer_search(m4(), candidate_local_terms(4, Topology(kind, 4))).dimension
            for kind in ("ring", "chain")}
    assert dims == {"ring": 24, "chain": 19}


def test_corrupted_basis_rejected(g1_basis):
    bad = g1_basis.basis.copy()
    bad[5] = np.eye(1, bad.shape[1], 0)[0]  # a bare X1 field
    corrupted = StabilizerBasis(g1_basis.state, g1_basis.candidates, bad)
    with pytest.raises(BasisVerificationError) as err:
        verify_basis(corrupted)
    assert err.value.index == 5


def test_empty_basis_verifies():
    sb = stabilizer_search(ghz(1), [PauliTerm("XII")])
    assert sb.dimension == 0
    assert verify_basis(sb).residuals == []


def test_search_rejects_bad_input():
    with pytest.raises(ValueError):
        stabilizer_search(ghz(1), [])
    with pytest.raises(ValueError):
        stabilizer_search(ghz(1), [PauliTerm("ZZ")])


def test_appending_terms(g1_basis):
    cands = list(g1_basis.candidates)
    # a non-stabilizing term whose residual is new to the span leaves the dimension unchanged
    for letters in ("YYY", "XXY"):
        assert stabilizer_search(ghz(1), [PauliTerm(letters)]).dimension == 0
        assert stabilizer_search(ghz(1), cands + [PauliTerm(letters)]).dimension == 23
    # ZZZ maps GHZ+ to GHZ-, as Z1 does, so Z1 - ZZZ is a new stabilizer
    assert stabilizer_search(ghz(1), cands + [PauliTerm("ZZZ")]).dimension == 24
    # Z1 Z2 stabilizes GHZ; independent of X1 alone
    assert stabilizer_search(ghz(1), [PauliTerm("XII")]).dimension == 0
    assert stabilizer_search(ghz(1), [PauliTerm("XII"), PauliTerm("ZZI")]).dimension == 1
    # ZZ on a third pair is independent of the other two
    two = [PauliTerm("ZZI"), PauliTerm("IZZ")]
    assert stabilizer_search(ghz(1), two + [PauliTerm("ZIZ")]).dimension == 3


def test_scale_and_phase_invariance(rng, m4_basis):
    phased = PureState(4, np.exp(0.7j) * m4().amplitudes)
    scaled = [PauliTerm(t.letters, -3.5) for t in m4_basis.candidates]
    assert stabilizer_search(phased, m4_basis.candidates).dimension == 24
    assert stabilizer_search(m4(), scaled).dimension == 24


def test_sampling_deterministic_across_workers():
    fam = CouplingFamily(m4(), (hjk4(1, 0), hjk4(0, 1)))
    a = random_coupling_experiment(fam, 3500, seed=11)
    b = random_coupling_experiment(fam, 3500, seed=11, workers=3)
    assert a == b
    c = random_coupling_experiment(fam, 3500, seed=12)
    assert c.mean_normalized_position != a.mean_normalized_position


def test_sampling_report_consistent(m4_basis):
    rep = random_coupling_experiment(m4_basis, 2000, seed=5, keep_log=True)
    assert rep.samples == 2000
    degenerate = int(rep.log["degenerate"].sum())
    assert rep.nondegenerate + degenerate == 2000
    assert rep.degenerate_fraction == degenerate / 2000
    assert 0 <= rep.mean_normalized_position <= 1
    assert rep.min_level_index >= 1
    assert rep.csv_row().startswith("5,2000,")


def test_sampling_aborts_on_corrupted_family():
    fam = CouplingFamily(m4(), (hjk4(1, 0), PauliOperator(4, [PauliTerm("XIII")])))
    with pytest.raises(ValueError):
        random_coupling_experiment(fam, 10, seed=0)


def test_nogo_product_state():
    fam = CouplingFamily(basis_state(2, 0), (PauliOperator.from_dict(2, {"ZI": -1, "IZ": -1}),))
    rep = nogo_probe(fam, 200, seed=0, low=0.1, high=1.0)
    assert rep.ground_nondegenerate == 200


def test_nogo_g1_and_m4(g1_basis, m4_basis):
    for sb in (g1_basis, m4_basis):
        rep = nogo_probe(sb, 1000, seed=3)
        assert rep.ground_nondegenerate == 0
        assert rep.ground_nondegenerate + rep.ground_degenerate + rep.excited == 1000
