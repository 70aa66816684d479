"""Bipartite density matrices, the named initial states, and fidelity.

Tensor order is always A (x) B with basis |00>, |01>, ..., row-major, so
``|ij>`` sits at index ``i * dim_b + j``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .errors import DimensionMismatch, NotHermitian
from .linalg import dag, hermiticity_deviation, sqrt_psd

STATE_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    matrix: np.ndarray
    dim_a: int
    dim_b: int

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        n = self.dim_a * self.dim_b
        if self.dim_a < 1 or self.dim_b < 1:
            raise DimensionMismatch("subsystem dimensions must be positive")
        if m.shape != (n, n):
            raise DimensionMismatch(
                f"matrix shape {m.shape} does not match dims {self.dim_a}x{self.dim_b}")
        if not np.all(np.isfinite(m)):
            raise ValueError("density matrix has non-finite entries")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.dim_a * self.dim_b

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.matrix, dtype=dtype)

    def to_dict(self) -> dict[str, Any]:
        return {
            "dim_a": self.dim_a,
            "dim_b": self.dim_b,
            "re": self.matrix.real.tolist(),
            "im": self.matrix.imag.tolist(),
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "DensityMatrix":
        try:
            re = np.asarray(data["re"], dtype=float)
            im = np.asarray(data.get("im", np.zeros_like(re)), dtype=float)
            return cls(re + 1j * im, int(data["dim_a"]), int(data["dim_b"]))
        except KeyError as exc:
            raise ValueError(f"state object missing key {exc}") from None

    def to_json(self) -> str:
        # repr-precision floats round-trip exactly
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "DensityMatrix":
        return cls.from_dict(json.loads(text))


def _ket(dim_a: int, dim_b: int, terms) -> np.ndarray:
    psi = np.zeros(dim_a * dim_b, dtype=complex)
    for amp, i, j in terms:
        psi[i * dim_b + j] += amp
    return psi


def from_ket(psi: np.ndarray, dim_a: int, dim_b: int) -> DensityMatrix:
    psi = np.asarray(psi, dtype=complex)
    psi = psi / np.linalg.norm(psi)
    return DensityMatrix(np.outer(psi, psi.conj()), dim_a, dim_b)


def bell_qubit() -> DensityMatrix:
    """(|00> + |11>)/sqrt(2) as a density matrix."""
    psi = _ket(2, 2, [(1 / np.sqrt(2), 0, 0), (1 / np.sqrt(2), 1, 1)])
    return DensityMatrix(np.outer(psi, psi.conj()), 2, 2)


def nonsym_qubit() -> DensityMatrix:
    """Half |psi><psi| plus I/8, psi = |01>/sqrt(2) + |10>/2 + |11>/2.

    This state has no symmetry under exchange of the two qubits.
    """
    psi = _ket(2, 2, [(1 / np.sqrt(2), 0, 1), (0.5, 1, 0), (0.5, 1, 1)])
    return DensityMatrix(0.5 * np.outer(psi, psi.conj()) + np.eye(4) / 8, 2, 2)


def nonsym_qubit_alt() -> DensityMatrix:
    """Variant of :func:`nonsym_qubit` with the |11> amplitude moved to |00>.

    psi = |01>/sqrt(2) + |00>/2 + |10>/2. Kept for the reproduction notes in
    the README; it is not one of the three reference scenarios.
    """
    psi = _ket(2, 2, [(1 / np.sqrt(2), 0, 1), (0.5, 0, 0), (0.5, 1, 0)])
    return DensityMatrix(0.5 * np.outer(psi, psi.conj()) + np.eye(4) / 8, 2, 2)


def nonsym_qutrit() -> DensityMatrix:
    """Half |psi><psi| plus I/18, psi = |10>/2 + |02>/sqrt(2) + |21>/2."""
    psi = _ket(3, 3, [(0.5, 1, 0), (1 / np.sqrt(2), 0, 2), (0.5, 2, 1)])
    return DensityMatrix(0.5 * np.outer(psi, psi.conj()) + np.eye(9) / 18, 3, 3)


NAMED_STATES = {
    "bell_qubit": bell_qubit,
    "nonsym_qubit": nonsym_qubit,
    "nonsym_qubit_alt": nonsym_qubit_alt,
    "nonsym_qutrit": nonsym_qutrit,
}


def maximally_mixed(dim_a: int, dim_b: int) -> DensityMatrix:
    n = dim_a * dim_b
    return DensityMatrix(np.eye(n) / n, dim_a, dim_b)


def product_state(a: np.ndarray, b: np.ndarray) -> DensityMatrix:
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    return DensityMatrix(np.kron(a, b), a.shape[0], b.shape[0])


def random_density_matrix(dim_a: int, dim_b: int, rng: np.random.Generator,
                          rank: int | None = None) -> DensityMatrix:
    """Random state from the induced (Hilbert-Schmidt when rank is None) measure."""
    n = dim_a * dim_b
    k = n if rank is None else rank
    g = rng.standard_normal((n, k)) + 1j * rng.standard_normal((n, k))
    rho = g @ dag(g)
    return DensityMatrix(rho / np.trace(rho).real, dim_a, dim_b)


@dataclass
class StateReport:
    hermiticity_deviation: float
    trace_deviation: float
    min_eigenvalue: float
    tol: float
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def validate(rho: DensityMatrix | np.ndarray, tol: float = STATE_TOL) -> StateReport:
    """Check Hermiticity, unit trace and positivity; never raises."""
    m = np.asarray(rho, dtype=complex)
    herm = hermiticity_deviation(m)
    tr_dev = float(abs(np.trace(m) - 1.0))
    min_eig = float(np.linalg.eigvalsh(0.5 * (m + dag(m)))[0])
    violations = []
    if herm > tol:
        violations.append(f"hermiticity: deviation {herm:.3e} > {tol:.1e}")
    if tr_dev > tol:
        violations.append(f"trace: |Tr - 1| = {tr_dev:.3e} > {tol:.1e}")
    if min_eig < -tol:
        violations.append(f"positivity: min eigenvalue {min_eig:.3e} < -{tol:.1e}")
    return StateReport(herm, tr_dev, min_eig, tol, violations)


def _as_matrix(rho) -> np.ndarray:
    return np.asarray(rho, dtype=complex)


def fidelity(rho_i, rho_f) -> float:
    """Uhlmann fidelity [Tr sqrt(sqrt(rho_f) rho_i sqrt(rho_f))]**2.

    Evaluated as the squared trace norm of sqrt(rho_i) sqrt(rho_f), which is
    the same number without a square root of a near-singular product.
    """
    a, b = _as_matrix(rho_i), _as_matrix(rho_f)
    if a.shape != b.shape:
        raise DimensionMismatch(f"state shapes differ: {a.shape} vs {b.shape}")
    try:
        sv = np.linalg.svd(sqrt_psd(a) @ sqrt_psd(b), compute_uv=False)
    except NotHermitian as exc:
        raise NotHermitian(f"fidelity input is not a valid state: {exc}") from exc
    return float(min(max(np.sum(sv) ** 2, 0.0), 1.0))
