"""Local quantum uncertainty: closed forms, skew information and a brute-force oracle."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.optimize import minimize_scalar

from .basis import structure_constants_g, su_generators
from .errors import DimensionMismatch, InvalidSpectrum, NotHermitian, UnsupportedDimension
from .linalg import dag, eig_hermitian, hermiticity_deviation, random_unitary, sqrt_psd
from .states import DensityMatrix

SUPPORTED_DIMS = (2, 3)
DEGENERACY_GAP_TOL = 1e-8
REFINE_TOL = 1e-9

_PAULI = np.array([
    [[0, 1], [1, 0]],
    [[0, -1j], [1j, 0]],
    [[1, 0], [0, -1]],
], dtype=complex)


@dataclass(frozen=True, eq=False)
class LquResult:
    value: float
    w_matrix: np.ndarray
    lambda_max: float
    top_eigvec: np.ndarray
    optimal_observable: np.ndarray
    degeneracy_gap: float
    degenerate_flag: bool

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "lambda_max": self.lambda_max,
            "top_eigvec": self.top_eigvec.tolist(),
            "w_matrix": self.w_matrix.tolist(),
            "degeneracy_gap": self.degeneracy_gap,
            "degenerate_flag": self.degenerate_flag,
        }


def _local_ops(basis: np.ndarray, dim_b: int) -> np.ndarray:
    eye = np.eye(dim_b)
    return np.array([np.kron(b, eye) for b in basis])


@lru_cache(maxsize=None)
def _cached_local_ops(kind: str, dim_a: int, dim_b: int) -> np.ndarray:
    basis = _PAULI if kind == "pauli" else su_generators(dim_a)
    ops = _local_ops(basis, dim_b)
    ops.setflags(write=False)
    return ops


def _correlation_matrix(sqrt_rho: np.ndarray, ops: np.ndarray) -> np.ndarray:
    b = sqrt_rho @ ops
    w = np.einsum("iab,jba->ij", b, b)
    w = w.real
    return 0.5 * (w + w.T)


def w_matrix_qubit(rho: DensityMatrix, sqrt_rho: np.ndarray | None = None) -> np.ndarray:
    """W_ij = Tr{sqrt(rho) (s_i x I) sqrt(rho) (s_j x I)} with Paulis ordered x, y, z."""
    if rho.dim_a != 2:
        raise UnsupportedDimension(f"qubit W matrix needs dim_a = 2, got {rho.dim_a}")
    s = sqrt_psd(rho.matrix) if sqrt_rho is None else sqrt_rho
    return _correlation_matrix(s, _cached_local_ops("pauli", 2, rho.dim_b))


def bloch_vector_a(rho: DensityMatrix) -> np.ndarray:
    """Components Tr(rho l_k x I) over the SU(dim_a) generators."""
    ops = _cached_local_ops("su", rho.dim_a, rho.dim_b)
    return np.einsum("ab,kba->k", rho.matrix, ops).real


def w_matrix_general(rho: DensityMatrix, sqrt_rho: np.ndarray | None = None) -> np.ndarray:
    """W over the SU(dim_a) generators, including the -G_ij . L correction."""
    s = sqrt_psd(rho.matrix) if sqrt_rho is None else sqrt_rho
    ops = _cached_local_ops("su", rho.dim_a, rho.dim_b)
    w = _correlation_matrix(s, ops)
    g = structure_constants_g(rho.dim_a)
    return w - g @ bloch_vector_a(rho)


def _spectral_gap(values: np.ndarray) -> float:
    return float(np.min(np.diff(np.sort(values)))) if len(values) > 1 else np.inf


def lqu_closed_form(rho: DensityMatrix, *, method: str = "auto",
                    gap_tol: float = DEGENERACY_GAP_TOL) -> LquResult:
    """LQU of ``rho`` with respect to subsystem A.

    ``method="auto"`` uses the Pauli W matrix for a qubit A and the generator
    expansion with the symmetric-structure-constant correction for a qutrit
    A. ``method="general"`` forces the generator expansion at any supported
    ``dim_a``.
    """
    d1 = rho.dim_a
    if d1 not in SUPPORTED_DIMS:
        raise UnsupportedDimension(f"closed form implemented for dim_a in {SUPPORTED_DIMS}, got {d1}")
    if method not in ("auto", "general"):
        raise ValueError(f"unknown method {method!r}")

    s = sqrt_psd(rho.matrix)
    if d1 == 2 and method == "auto":
        w = w_matrix_qubit(rho, s)
        basis = _PAULI
    else:
        w = w_matrix_general(rho, s)
        basis = su_generators(d1)

    evals, evecs = eig_hermitian(w)
    lam_max = float(evals[-1])
    v = evecs[:, -1].real
    v = v / np.linalg.norm(v)
    observable = np.einsum("i,iab->ab", v, basis)
    gap = _spectral_gap(np.linalg.eigvalsh(observable))
    value = max(2.0 / d1 - lam_max, 0.0)
    return LquResult(
        value=value,
        w_matrix=w,
        lambda_max=lam_max,
        top_eigvec=v,
        optimal_observable=observable,
        degeneracy_gap=gap,
        degenerate_flag=bool(gap < gap_tol),
    )


def lqu_value(matrix: np.ndarray, dim_a: int, dim_b: int) -> float:
    """Value-only closed form on a raw matrix with no validation or diagnostics.

    Meant for optimizer inner loops; the caller guarantees a valid state.
    """
    w, v = np.linalg.eigh(matrix)
    s = (v * np.sqrt(np.clip(w, 0.0, None))) @ v.conj().T
    ops = _cached_local_ops("su", dim_a, dim_b)
    wm = _correlation_matrix(s, ops)
    if dim_a > 2:
        lv = np.einsum("ab,kba->k", matrix, ops).real
        wm = wm - structure_constants_g(dim_a) @ lv
    return max(2.0 / dim_a - float(np.linalg.eigvalsh(wm)[-1]), 0.0)


def lqu(rho: DensityMatrix) -> float:
    return lqu_closed_form(rho).value


def skew_information(rho: DensityMatrix, k: np.ndarray, *,
                     sqrt_rho: np.ndarray | None = None) -> float:
    """Wigner-Yanase skew information -Tr([sqrt(rho), K]^2) / 2."""
    k = np.asarray(k, dtype=complex)
    if k.shape != (rho.dim, rho.dim):
        raise DimensionMismatch(f"observable shape {k.shape} vs state dimension {rho.dim}")
    if hermiticity_deviation(k) > 1e-10:
        raise NotHermitian("observable is not Hermitian")
    s = sqrt_psd(rho.matrix) if sqrt_rho is None else sqrt_rho
    return _skew(rho.matrix, s, k)


def _skew(rho: np.ndarray, s: np.ndarray, k: np.ndarray) -> float:
    # -1/2 Tr([s,K]^2) = Tr(rho K^2) - Tr(s K s K)
    sk = s @ k
    val = np.einsum("ab,ba->", rho @ k, k) - np.einsum("ab,ba->", sk, sk)
    return max(float(val.real), 0.0)


def default_spectrum(dim_a: int) -> tuple[float, ...]:
    if dim_a == 2:
        return (-1.0, 1.0)
    if dim_a == 3:
        return (-1.0, 0.0, 1.0)
    return tuple(np.linspace(-1.0, 1.0, dim_a))


def _unitary_exp(h: np.ndarray) -> np.ndarray:
    w, v = np.linalg.eigh(h)
    return (v * np.exp(1j * w)) @ dag(v)


def _normalized_spectrum(x: np.ndarray) -> np.ndarray:
    # traceless, Tr(L^2) = 2: the same normalization as a unit generator expansion
    y = x - x.mean()
    return np.sqrt(2.0) * y / np.linalg.norm(y)


def lqu_bruteforce(rho: DensityMatrix, spectrum=None, samples: int = 2000, *,
                   seed: int = 0, refine: bool = True, optimize_spectrum: bool = False,
                   refine_tol: float = REFINE_TOL, max_sweeps: int = 200) -> float:
    """Direct minimization of skew information over local observables.

    Observables are ``U diag(spectrum) U^dagger (x) I`` with ``U`` drawn from
    the Haar measure (sample ``k`` uses the generator seeded by
    ``(seed, k)``), followed by coordinate descent on
    ``U -> U exp(i t l_j)`` from the best sample. The result is an upper
    bound on the minimum over observables with that spectrum.

    With ``optimize_spectrum=True`` the spectrum is a free variable too,
    restricted to traceless spectra with sum of squares 2 (random per sample,
    then refined alongside ``U``). That is exactly the observable family the
    closed form ranges over, so for ``dim_a >= 3`` this is the oracle to
    compare it against; ``spectrum`` is ignored in that mode.
    """
    d1, d2 = rho.dim_a, rho.dim_b
    spec = np.asarray(default_spectrum(d1) if spectrum is None else spectrum, dtype=float)
    if spec.shape != (d1,):
        raise InvalidSpectrum(f"spectrum needs {d1} entries, got {spec.shape}")
    if np.any(np.diff(np.sort(spec)) <= 0):
        raise InvalidSpectrum("spectrum entries must be distinct")
    if samples < 1:
        raise ValueError("samples must be >= 1")

    m = rho.matrix
    s = sqrt_psd(m)
    eye_b = np.eye(d2)

    def cost(u: np.ndarray, x: np.ndarray) -> float:
        sp = _normalized_spectrum(x) if optimize_spectrum else spec
        return _skew(m, s, np.kron((u * sp) @ dag(u), eye_b))

    best_u, best_x, best = None, spec, np.inf
    for k in range(samples):
        rng = np.random.default_rng([seed, k])
        u = random_unitary(d1, rng)
        x = rng.standard_normal(d1) if optimize_spectrum else spec
        c = cost(u, x)
        if c < best:
            best_u, best_x, best = u, x, c
    if not refine:
        return best

    gens = su_generators(d1)
    step = np.pi / 2
    for _ in range(max_sweeps):
        start = best
        for g in gens:
            res = minimize_scalar(lambda t: cost(best_u @ _unitary_exp(t * g), best_x),
                                  bounds=(-step, step), method="bounded",
                                  options={"xatol": 1e-10})
            if res.fun < best:
                best_u = best_u @ _unitary_exp(res.x * g)
                best = cost(best_u, best_x)
        if optimize_spectrum:
            scale = np.linalg.norm(best_x - best_x.mean())
            for j in range(d1):
                e = np.zeros(d1)
                e[j] = scale
                res = minimize_scalar(lambda t: cost(best_u, best_x + t * e),
                                      bounds=(-step, step), method="bounded",
                                      options={"xatol": 1e-10})
                if res.fun < best:
                    best_x = best_x + res.x * e
                    best = cost(best_u, best_x)
        if start - best < refine_tol:
            if step < 1e-4:
                break
            step *= 0.25
    return best
