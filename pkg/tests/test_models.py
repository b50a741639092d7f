import numpy as np
import pytest

from mmes.core import is_perfect_mmes, pme, purity_table
from mmes.models import (
    H2Params,
    check_g1_conditions,
    g1_constraints,
    ghz,
    ghz_basis,
    ghz_projector_parts,
    h2_general,
    hjk3,
    hjk3_ground_facts,
    hjk4,
    m4,
    m5,
    named_hamiltonian,
    named_state,
)
from mmes.pauli import expectation, sum_matrix
from mmes.spectral import eigenstate_check, eigh, is_eigenstate, level_position


def test_ghz_basis_orthonormal():
    basis = ghz_basis()
    assert len(basis) == 8
    gram = np.array([[a.overlap(b) for b in basis] for a in basis])
    np.testing.assert_allclose(gram, np.eye(8), atol=1e-15)
    np.testing.assert_allclose(ghz(1).amplitudes[[0, 7]], [2**-0.5] * 2)
    assert ghz(4).amplitudes[0b100] != 0
    for s in basis:
        assert abs(pme(s) - 0.5) < 1e-12


def test_ghz_projector_parts_structure():
    for i in range(1, 5):
        q, c = ghz_projector_parts(i)
        assert q.max_weight() <= 2
        assert all(t.weight == 3 for t in c)
        for sign in (+1, -1):
            psi = ghz(i, sign).amplitudes
            np.testing.assert_allclose(sum_matrix(q + sign * c), np.outer(psi, psi), atol=1e-12)


def test_h2_general_examples():
    assert len(h2_general(H2Params())) == 0
    p = H2Params()
    p.J["z"][0, 1] = 1.0
    assert h2_general(p).as_dict() == {"ZZI": 1.0}
    assert len(h2_general(H2Params.random(np.random.default_rng(0)))) == 36


def test_h2_params_operator_round_trip(rng):
    for _ in range(20):
        p = H2Params.random(rng)
        assert h2_general(H2Params.from_operator(h2_general(p))) == h2_general(p)


def test_check_g1_conditions_examples():
    assert check_g1_conditions(H2Params())
    p = H2Params()
    p.J["y"][1, 2] = 1.0
    p.h[0, 0] = 1.0
    assert check_g1_conditions(p)
    q = H2Params()
    q.h[0, 2] = 1.0
    assert not check_g1_conditions(q)
    assert len(g1_constraints(q)) == 13


def test_g1_conditions_imply_eigenstate(rng):
    for _ in range(200):
        p = H2Params.random_g1(rng)
        assert check_g1_conditions(p)
        assert eigenstate_check(h2_general(p), ghz(1))[1] <= 1e-10


def test_violated_conditions_break_eigenstate(rng):
    for _ in range(200):
        p = H2Params.random_g1(rng)
        # push one constrained number off its constraint
        which = rng.integers(4)
        if which == 0:
            p.h[1, 2] += 0.3
        elif which == 1:
            p.X[0, 1] += 0.3
        elif which == 2:
            p.h[2, 0] += 0.3
        else:
            p.h[1, 1] += 0.3
        assert not check_g1_conditions(p)
        assert not is_eigenstate(h2_general(p), ghz(1))


def test_nogo_three_qubits(rng):
    for _ in range(1000):
        op = h2_general(H2Params.random_g1(rng))
        spec = eigh(sum_matrix(op))
        level, _, degenerate = level_position(spec, eigenstate_check(op, ghz(1))[0])
        assert level >= 1 or degenerate


def test_expectation_equality_unconstrained(rng):
    for _ in range(1000):
        op = h2_general(H2Params.random(rng))
        for i in range(1, 5):
            assert abs(expectation(op, ghz(i, +1)) - expectation(op, ghz(i, -1))) < 1e-10


def test_hjk3_examples():
    assert hjk3(1, 0).as_dict() == {"ZZI": 1.0, "IZZ": 1.0, "ZIZ": 1.0}
    value, res = eigenstate_check(hjk3(1, 1), ghz(1))
    assert abs(value - 3) < 1e-12 and res < 1e-10
    assert abs(eigh(sum_matrix(hjk3(1, 1))).eigenvalues[0] + 3) < 1e-12


def test_hjk3_ground_facts_examples():
    f = hjk3_ground_facts(1, 1)
    assert abs(f.ground_energy + 3) < 1e-12
    assert abs(f.gs_pme - 2 / 3) < 1e-9
    assert hjk3_ground_facts(-1, -1).ghz_level == 1
    f = hjk3_ground_facts(-1, 1)
    assert abs(f.ground_energy - (1 - 2 * np.sqrt(7))) < 1e-12
    assert f.gs_pme <= 0.556 + 1e-3
    assert f.ghz_level == 1 and not f.ghz_degenerate and not f.ground_degenerate


def test_hjk3_nondegeneracy_iff_quarter_grid():
    grid = np.arange(-8, 9) / 4
    for J in grid:
        for k in grid:
            spec = eigh(sum_matrix(hjk3(J, k)))
            degenerate = level_position(spec, 3 * J)[2]
            expected = J == 0 or k == 0 or J == -k / 2
            assert degenerate == expected, (J, k)


def test_m4():
    s = m4()
    assert abs(s.norm() - 1) < 1e-15
    assert np.all(np.abs(np.abs(s.amplitudes) - 0.25) < 1e-15)
    assert abs(pme(s) - 1 / 3) < 1e-12


def test_hjk4_eigenvalue(rng):
    for _ in range(100):
        J, k = rng.uniform(-1, 1, 2)
        value, res = eigenstate_check(hjk4(J, k), m4())
        assert abs(value - 2 * J) < 1e-10 and res <= 1e-10


def test_hjk4_term_reading():
    d = hjk4(2.0, 3.0).as_dict()
    assert d["ZIIX"] == 2.0 and d["IZXI"] == 2.0
    assert d["XIIZ"] == 3.0 and d["ZXII"] == 3.0 and d["XZII"] == 3.0 and d["IXZI"] == 3.0
    assert d["IIIZ"] == -3.0 and len(d) == 10


@pytest.mark.parametrize("ratio", [np.sqrt(1.5), -np.sqrt(1.5), np.sqrt(3), -np.sqrt(3)])
def test_hjk4_degeneracy_lines(ratio):
    k = 0.6
    spec = eigh(sum_matrix(hjk4(ratio * k, k)))
    assert level_position(spec, 2 * ratio * k)[2]


def test_hjk4_never_ground(rng):
    for _ in range(500):
        J, k = rng.uniform(-1, 1, 2)
        spec = eigh(sum_matrix(hjk4(J, k)))
        assert level_position(spec, 2 * J)[0] >= 1


def test_m5():
    s = m5()
    assert abs(s.norm() - 1) < 1e-15
    assert is_perfect_mmes(s, 1e-10)
    assert all(abs(v - 0.25) < 1e-12 for v in purity_table(s).values())


def test_registry():
    np.testing.assert_array_equal(named_state("ghz3").amplitudes, named_state("g1plus").amplitudes)
    np.testing.assert_allclose(named_state("g3minus").amplitudes, ghz(3, -1).amplitudes)
    assert named_state("zero3").amplitudes[0] == 1
    assert named_hamiltonian("hjk4:0.5,-1") == hjk4(0.5, -1)
    for bad in ("m6", "g5plus"):
        with pytest.raises(ValueError):
            named_state(bad)
    for bad in ("hjk5:1,1", "hjk3:1", "hjk3:a,b"):
        with pytest.raises(ValueError):
            named_hamiltonian(bad)
