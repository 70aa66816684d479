"""Weak measurement and reversal filters.

Filters are diagonal, so applying ``F_A x F_B`` to a state reduces to an
elementwise product with the outer product of the filter diagonals.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, ParamOutOfRange, ZeroSuccessProbability
from .states import DensityMatrix

SUCCESS_TOL = 1e-14


@dataclass(frozen=True, eq=False)
class LocalFilter:
    diag: tuple

    def __post_init__(self):
        d = tuple(float(x) for x in self.diag)
        if len(d) < 2:
            raise DimensionMismatch("filter needs at least two levels")
        if any(not np.isfinite(x) or x < 0 for x in d):
            raise ParamOutOfRange(f"filter entries must be finite and >= 0, got {d}")
        if not any(x > 0 for x in d):
            raise ParamOutOfRange("filter is identically zero")
        object.__setattr__(self, "diag", d)

    @property
    def dim(self) -> int:
        return len(self.diag)

    @property
    def matrix(self) -> np.ndarray:
        return np.diag(self.diag).astype(complex)

    @property
    def is_contraction(self) -> bool:
        """True when every entry is <= 1, i.e. a physical measurement outcome."""
        return max(self.diag) <= 1.0

    @property
    def is_identity(self) -> bool:
        return all(x == 1.0 for x in self.diag)

    def canonical(self) -> "LocalFilter":
        """The same filter rescaled so its largest entry is 1."""
        top = max(self.diag)
        return LocalFilter(tuple(x / top for x in self.diag))


def _nonneg(**params):
    for name, x in params.items():
        if x < 0:
            raise ParamOutOfRange(f"{name} must be >= 0, got {x}")


def identity_filter(dim: int) -> LocalFilter:
    return LocalFilter((1.0,) * dim)


def weak_measurement_qubit(m: float) -> LocalFilter:
    """diag(1, m); m < 1 pushes toward |0>, m > 1 toward |1>."""
    _nonneg(m=m)
    return LocalFilter((1.0, m))


def reversal_qubit(n: float) -> LocalFilter:
    _nonneg(n=n)
    return LocalFilter((n, 1.0))


def weak_measurement_qutrit(m1: float, m2: float) -> LocalFilter:
    _nonneg(m1=m1, m2=m2)
    return LocalFilter((1.0, m1, m2))


def reversal_qutrit(n1: float, n2: float, n3: float) -> LocalFilter:
    _nonneg(n1=n1, n2=n2, n3=n3)
    if max(n1, n2, n3) > 1.0:
        warnings.warn("qutrit reversal entries above 1 are outside the usual [0, 1] range; "
                      "the normalized output is unchanged by rescaling", stacklevel=2)
    return LocalFilter((n1, n2, n3))


def weak_measurement(dim: int, params) -> LocalFilter:
    params = tuple(params)
    if dim == 2 and len(params) == 1:
        return weak_measurement_qubit(*params)
    if dim == 3 and len(params) == 2:
        return weak_measurement_qutrit(*params)
    raise DimensionMismatch(f"weak measurement on dim {dim} takes {dim - 1} parameters, got {len(params)}")


def reversal(dim: int, params) -> LocalFilter:
    params = tuple(params)
    if dim == 2 and len(params) == 1:
        return reversal_qubit(*params)
    if dim == 3 and len(params) == 3:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            return reversal_qutrit(*params)
    raise DimensionMismatch(f"reversal on dim {dim} takes {1 if dim == 2 else dim} parameters, "
                            f"got {len(params)}")


def filter_product(fa: LocalFilter, fb: LocalFilter, rho: np.ndarray) -> tuple[np.ndarray, float]:
    """Unnormalized (F_A x F_B) rho (F_A x F_B)^dagger and its trace, on raw arrays."""
    f = np.kron(fa.diag, fb.diag)
    out = rho * np.outer(f, f)
    return out, float(np.real(np.trace(out)))


def apply_filter_pair(fa: LocalFilter, fb: LocalFilter, rho: DensityMatrix, *,
                      tol: float = SUCCESS_TOL) -> tuple[DensityMatrix, float]:
    """Post-selected state after local filters and its normalizing trace.

    The trace is the success probability when both filters are contractions;
    for entries above 1 it is reported as-is (divide by the squared maximum
    entries to get the probability of the equivalent physical filter).
    """
    if fa.dim != rho.dim_a or fb.dim != rho.dim_b:
        raise DimensionMismatch(
            f"filter dims ({fa.dim}, {fb.dim}) vs state dims ({rho.dim_a}, {rho.dim_b})")
    if fa.is_identity and fb.is_identity:
        return rho, 1.0
    out, p = filter_product(fa, fb, rho.matrix)
    if p < tol:
        raise ZeroSuccessProbability(f"normalizing trace {p:.3e} below {tol:.0e}")
    return DensityMatrix(out / p, rho.dim_a, rho.dim_b), p
