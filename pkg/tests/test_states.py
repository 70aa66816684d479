import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings

from lquprotect.channels import apply_product, gad_qubit
from lquprotect.errors import DimensionMismatch
from lquprotect.states import (DensityMatrix, bell_qubit, fidelity, nonsym_qubit,
                               nonsym_qutrit, product_state, random_density_matrix, validate)

from conftest import seeds, state_from_seed, unitary_from_seed


@pytest.mark.parametrize("make", [bell_qubit, nonsym_qubit, nonsym_qutrit])
def test_named_states_valid(make):
    rho = make()
    rep = validate(rho, tol=1e-12)
    assert rep.ok, rep.violations
    assert abs(np.trace(rho.matrix) - 1) < 1e-12


def test_bell_is_pure():
    rho = bell_qubit().matrix
    assert np.trace(rho @ rho).real == pytest.approx(1.0, abs=1e-14)
    assert rho[0, 3] == pytest.approx(0.5)


def test_nonsym_qubit_spectrum():
    w = np.linalg.eigvalsh(nonsym_qubit().matrix)
    assert np.allclose(w, [1 / 8, 1 / 8, 1 / 8, 5 / 8], atol=1e-14)


def test_nonsym_qubit_basis_layout():
    # |01> -> index 1, |10> -> index 2, |11> -> index 3
    rho = nonsym_qubit().matrix
    assert rho[1, 1].real == pytest.approx(0.5 * 0.5 + 1 / 8)
    assert rho[2, 2].real == pytest.approx(0.5 * 0.25 + 1 / 8)
    assert rho[0, 0].real == pytest.approx(1 / 8)


def test_nonsym_qutrit_spectrum():
    w = np.linalg.eigvalsh(nonsym_qutrit().matrix)
    assert np.allclose(w[:8], 1 / 18, atol=1e-14)
    assert w[8] == pytest.approx(0.5 + 1 / 18, abs=1e-14)


def test_validate_flags_problems():
    bad_trace = DensityMatrix(0.9 * bell_qubit().matrix, 2, 2)
    rep = validate(bad_trace)
    assert not rep.ok and any("trace" in v for v in rep.violations)
    neg = DensityMatrix(np.diag([0.6, 0.5, 0.0, -0.1]), 2, 2)
    rep = validate(neg)
    assert any("positivity" in v for v in rep.violations)
    assert rep.min_eigenvalue == pytest.approx(-0.1)
    non_herm = np.zeros((4, 4), complex)
    non_herm[0, 0] = 1
    non_herm[0, 1] = 0.3
    assert any("hermiticity" in v for v in validate(DensityMatrix(non_herm, 2, 2)).violations)


def test_shape_must_match_dims():
    with pytest.raises(DimensionMismatch):
        DensityMatrix(np.eye(4) / 4, 2, 3)


def test_json_round_trip(rng):
    rho = random_density_matrix(2, 3, rng)
    back = DensityMatrix.from_json(rho.to_json())
    assert (back.dim_a, back.dim_b) == (2, 3)
    assert np.array_equal(back.matrix, rho.matrix)


def test_fidelity_examples():
    rho = bell_qubit()
    assert fidelity(rho, rho) == pytest.approx(1.0, abs=1e-12)
    zero = np.diag([1.0, 0.0])
    one = np.diag([0.0, 1.0])
    assert fidelity(zero, one) == pytest.approx(0.0, abs=1e-14)


def test_fidelity_bell_after_gad():
    ch = gad_qubit(0.5, 0.5)
    out = apply_product(ch, ch, bell_qubit())
    assert fidelity(bell_qubit(), out) == pytest.approx(0.56, abs=0.005)


def test_fidelity_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        fidelity(np.eye(2) / 2, np.eye(4) / 4)


def _fidelity_nested(rho_i, rho_f):
    s = scipy.linalg.sqrtm(rho_f)
    return np.trace(scipy.linalg.sqrtm(s @ rho_i @ s)).real ** 2


@given(seeds)
@settings(max_examples=40, deadline=None)
def test_fidelity_matches_nested_form(seed):
    a = state_from_seed(seed, 2, 3)
    b = state_from_seed(seed + 1, 2, 3)
    assert fidelity(a, b) == pytest.approx(_fidelity_nested(a.matrix, b.matrix), abs=1e-9)


@given(seeds)
@settings(max_examples=40, deadline=None)
def test_fidelity_symmetric_and_unitarily_invariant(seed):
    a = state_from_seed(seed, 3, 3, rank=2)
    b = state_from_seed(seed ^ 0x5A5A, 3, 3)
    f = fidelity(a, b)
    assert 0.0 <= f <= 1.0
    assert abs(f - fidelity(b, a)) < 1e-9
    u = unitary_from_seed(seed, 9)
    ua = u @ a.matrix @ u.conj().T
    ub = u @ b.matrix @ u.conj().T
    assert abs(fidelity(ua, ub) - f) < 1e-9


def test_fidelity_commuting_states(rng):
    p = rng.random(6)
    p /= p.sum()
    q = rng.random(6)
    q /= q.sum()
    expected = np.sum(np.sqrt(p * q)) ** 2
    assert abs(fidelity(np.diag(p), np.diag(q)) - expected) < 1e-10


def test_product_state_layout():
    rho = product_state(np.diag([1.0, 0.0]), np.diag([0.0, 1.0]))
    assert rho.matrix[1, 1] == 1
