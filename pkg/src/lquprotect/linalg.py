"""Dense complex-matrix helpers.

Everything here works on plain ``numpy.ndarray`` values and returns new
arrays; nothing is mutated in place.
"""
from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .errors import ConvergenceFailure, NotHermitian, NotPSD

HERMITIAN_TOL = 1e-10
PSD_TOL = 1e-10
DEGENERACY_TOL = 1e-10


class EigenDecomposition(NamedTuple):
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def dag(a: np.ndarray) -> np.ndarray:
    return np.conj(np.asarray(a)).T


def trace(a: np.ndarray) -> complex:
    return np.trace(a)


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product with the left factor as the major block index."""
    return np.kron(a, b)


def hermiticity_deviation(h: np.ndarray) -> float:
    h = np.asarray(h)
    return float(np.max(np.abs(h - dag(h)))) if h.size else 0.0


def _check_square(h: np.ndarray) -> np.ndarray:
    h = np.asarray(h, dtype=complex)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise NotHermitian(f"expected a square matrix, got shape {h.shape}")
    if not np.all(np.isfinite(h)):
        raise NotHermitian("matrix has non-finite entries")
    return h


def _fix_phases(vecs: np.ndarray) -> np.ndarray:
    # make the first non-negligible component of each column real positive
    vecs = vecs.copy()
    for k in range(vecs.shape[1]):
        col = vecs[:, k]
        idx = np.flatnonzero(np.abs(col) > 1e-12)
        if idx.size:
            c = col[idx[0]]
            vecs[:, k] = col * (np.abs(c) / c)
    return vecs


def eig_hermitian(h: np.ndarray, *, tol: float = HERMITIAN_TOL,
                  degeneracy_tol: float = DEGENERACY_TOL) -> EigenDecomposition:
    """Full eigendecomposition of a Hermitian matrix.

    Eigenvalues come back ascending. Each eigenvector is phase-fixed so its
    first nonzero component is real and positive; eigenvalues equal within
    ``degeneracy_tol`` are further ordered lexicographically by their
    eigenvector entries, which makes the output reproducible.
    """
    h = _check_square(h)
    dev = hermiticity_deviation(h)
    if dev > tol:
        raise NotHermitian(f"max |H - H^dagger| = {dev:.3e} exceeds {tol:.1e}")
    h = 0.5 * (h + dag(h))
    try:
        w, v = np.linalg.eigh(h)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(str(exc)) from exc
    v = _fix_phases(v)

    order = list(range(len(w)))
    start = 0
    while start < len(w):
        stop = start + 1
        while stop < len(w) and w[stop] - w[start] <= degeneracy_tol:
            stop += 1
        if stop - start > 1:
            block = order[start:stop]
            block.sort(key=lambda k: tuple(
                x for z in v[:, k] for x in (round(z.real, 12), round(z.imag, 12))))
            order[start:stop] = block
        start = stop
    return EigenDecomposition(w[order], v[:, order])


def sqrt_psd(h: np.ndarray, *, tol: float = PSD_TOL) -> np.ndarray:
    """Principal square root of a positive-semidefinite Hermitian matrix.

    Eigenvalues in ``[-tol, 0)`` are treated as round-off and clamped to zero,
    as are positive ones below the eigensolver's own resolution
    (``n * eps * max|w|``); the square root would otherwise amplify that
    noise to ~1e-8.
    """
    w, v = eig_hermitian(h)
    if w.size and w[0] < -tol:
        raise NotPSD(f"minimum eigenvalue {w[0]:.3e} below -{tol:.1e}")
    floor = len(w) * np.finfo(float).eps * (np.max(np.abs(w)) if w.size else 0.0)
    root = np.sqrt(np.where(w > floor, w, 0.0))
    return (v * root) @ dag(v)


def random_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary from the QR decomposition of a Ginibre matrix."""
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    diag = np.diagonal(r)
    return q * (diag / np.abs(diag))
