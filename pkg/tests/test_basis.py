import itertools

import numpy as np
import pytest

from lquprotect.basis import structure_constants_g, su_generators
from lquprotect.errors import InvalidDimension

PAULI_Z = np.diag([1, -1])
PAULI_X = np.array([[0, 1], [1, 0]])
PAULI_Y = np.array([[0, -1j], [1j, 0]])


def test_su2_is_pauli_z_x_y():
    # i(|0><1| - |1><0|) is -sigma_y; the sign is irrelevant for LQU
    g = su_generators(2)
    assert np.array_equal(g[0], PAULI_Z)
    assert np.array_equal(g[1], PAULI_X)
    assert np.array_equal(g[2], -PAULI_Y)


def test_su3_diagonal_generators():
    g = su_generators(3)
    assert g.shape == (8, 3, 3)
    assert np.allclose(g[0], np.diag([1, -1, 0]))
    assert np.allclose(g[1], np.diag([1, 1, -2]) / np.sqrt(3))
    # symmetric (0,1), (0,2), (1,2) then antisymmetric in the same order
    assert g[2][0, 1] == 1 and g[3][0, 2] == 1 and g[4][1, 2] == 1
    assert g[5][0, 1] == 1j and g[5][1, 0] == -1j
    assert g[7][1, 2] == 1j


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_generators_hermitian_traceless_orthogonal(d):
    g = su_generators(d)
    assert len(g) == d * d - 1
    for lam in g:
        assert np.max(np.abs(lam - lam.conj().T)) < 1e-12
        assert abs(np.trace(lam)) < 1e-12
    gram = np.einsum("iab,jba->ij", g, g)
    assert np.max(np.abs(gram - 2 * np.eye(d * d - 1))) < 1e-12


def test_trace_products_by_direct_loop_d3():
    g = su_generators(3)
    gram = np.array([[np.trace(a @ b) for b in g] for a in g])
    assert np.allclose(gram, 2 * np.eye(8), atol=1e-12)


@pytest.mark.parametrize("d", [2, 3, 4])
def test_completeness(d, rng):
    a = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    h = a + a.conj().T
    h -= np.trace(h) / d * np.eye(d)
    g = su_generators(d)
    coef = 0.5 * np.einsum("iab,ba->i", g, h)
    assert np.max(np.abs(np.einsum("i,iab->ab", coef, g) - h)) < 1e-10


def test_invalid_dimension():
    with pytest.raises(InvalidDimension):
        su_generators(1)
    with pytest.raises(InvalidDimension):
        structure_constants_g(0)


def test_g_vanishes_for_qubits():
    assert np.array_equal(structure_constants_g(2), np.zeros((3, 3, 3)))


def test_g_d3_hand_value():
    # {l1, l1} = 2 diag(1,1,0); quarter trace against diag(1,1,-2)/sqrt(3)
    assert structure_constants_g(3)[0, 0, 1] == pytest.approx(1 / np.sqrt(3), abs=1e-12)


@pytest.mark.parametrize("d", [3, 4])
def test_g_fully_symmetric(d):
    g = structure_constants_g(d)
    for perm in itertools.permutations(range(3)):
        assert np.max(np.abs(g - g.transpose(perm))) < 1e-12


@pytest.mark.parametrize("d", [2, 3])
def test_anticommutator_expansion(d):
    lam = su_generators(d)
    g = structure_constants_g(d)
    n = len(lam)
    for i in range(n):
        for j in range(n):
            lhs = lam[i] @ lam[j] + lam[j] @ lam[i]
            rhs = (4 / d) * (i == j) * np.eye(d) + 2 * np.einsum("k,kab->ab", g[i, j], lam)
            assert np.max(np.abs(lhs - rhs)) < 1e-10


def test_generators_read_only():
    with pytest.raises(ValueError):
        su_generators(3)[0, 0, 0] = 5
