"""SU(d) generators and their symmetric structure constants."""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations

import numpy as np

from .errors import InvalidDimension


def _check_dim(d: int) -> int:
    if int(d) != d or d < 2:
        raise InvalidDimension(f"dimension must be an integer >= 2, got {d!r}")
    return int(d)


@lru_cache(maxsize=None)
def _generators(d: int) -> np.ndarray:
    gens = []
    for j in range(1, d):
        diag = np.zeros(d)
        diag[:j] = 1.0
        diag[j] = -j
        gens.append(np.sqrt(2.0 / (j * (j + 1))) * np.diag(diag).astype(complex))
    pairs = list(combinations(range(d), 2))
    for k, m in pairs:
        g = np.zeros((d, d), dtype=complex)
        g[k, m] = g[m, k] = 1.0
        gens.append(g)
    for k, m in pairs:
        g = np.zeros((d, d), dtype=complex)
        g[k, m] = 1j
        g[m, k] = -1j
        gens.append(g)
    out = np.array(gens)
    out.setflags(write=False)
    return out


def su_generators(d: int) -> np.ndarray:
    """The ``d**2 - 1`` generators of SU(d), normalized to Tr(l_i l_j) = 2 delta_ij.

    Returned as a read-only array of shape ``(d**2 - 1, d, d)``. Ordering is
    diagonal generators first, then the symmetric off-diagonal family, then
    the antisymmetric one; both off-diagonal families run over index pairs
    ``k < m`` in lexicographic order. For ``d = 2`` this gives
    ``(sigma_z, sigma_x, sigma_y)``.
    """
    return _generators(_check_dim(d))


@lru_cache(maxsize=None)
def _structure_g(d: int) -> np.ndarray:
    lam = _generators(d)
    anti = np.einsum("iab,jbc->ijac", lam, lam)
    anti = anti + anti.transpose(1, 0, 2, 3)
    g = 0.25 * np.einsum("ijab,kba->ijk", anti, lam)
    residue = float(np.max(np.abs(g.imag))) if g.size else 0.0
    if residue > 1e-12:
        raise ArithmeticError(f"structure constants have imaginary residue {residue:.2e}")
    out = np.ascontiguousarray(g.real)
    out.setflags(write=False)
    return out


def structure_constants_g(d: int) -> np.ndarray:
    """Symmetric structure constants g_ijk = Tr({l_i, l_j} l_k) / 4, dense."""
    return _structure_g(_check_dim(d))
