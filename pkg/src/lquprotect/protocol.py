"""Weak measurement, decoherence, reversal: the protection pipeline and its search."""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np

from .channels import KrausChannel, apply_product, product_superoperator
from .errors import DimensionMismatch, ZeroSuccessProbability
from .lqu import LquResult, lqu_closed_form, lqu_value
from .measure import (SUCCESS_TOL, LocalFilter, apply_filter_pair, filter_product,
                      reversal, weak_measurement)
from .optimize import genetic_maximize
from .states import DensityMatrix, fidelity

PARAM_BOX = (0.0, 3.0)


def n_weak_params(dim: int) -> int:
    return dim - 1


def n_reversal_params(dim: int) -> int:
    return 1 if dim == 2 else dim


@dataclass(frozen=True)
class ProtocolConfig:
    """State, the two local channels, and filter parameters per party.

    ``m_a``/``m_b`` are the weak-measurement parameters (one per excited
    level) and ``n_a``/``n_b`` the reversal parameters (one for a qubit,
    three for a qutrit). Empty tuples mean identity filters.
    """
    initial_state: DensityMatrix
    channel_a: KrausChannel
    channel_b: KrausChannel
    m_a: tuple = ()
    m_b: tuple = ()
    n_a: tuple = ()
    n_b: tuple = ()

    def __post_init__(self):
        rho = self.initial_state
        if self.channel_a.dim != rho.dim_a or self.channel_b.dim != rho.dim_b:
            raise DimensionMismatch("channel dimensions do not match the state")
        da, db = rho.dim_a, rho.dim_b
        for name, dim, default in (("m_a", da, (1.0,) * n_weak_params(da)),
                                   ("m_b", db, (1.0,) * n_weak_params(db)),
                                   ("n_a", da, (1.0,) * n_reversal_params(da)),
                                   ("n_b", db, (1.0,) * n_reversal_params(db))):
            vals = tuple(float(v) for v in getattr(self, name)) or default
            if len(vals) != len(default):
                raise DimensionMismatch(f"{name} needs {len(default)} values for dimension {dim}")
            object.__setattr__(self, name, vals)

    @property
    def filters(self) -> tuple[LocalFilter, LocalFilter, LocalFilter, LocalFilter]:
        rho = self.initial_state
        return (weak_measurement(rho.dim_a, self.m_a), weak_measurement(rho.dim_b, self.m_b),
                reversal(rho.dim_a, self.n_a), reversal(rho.dim_b, self.n_b))

    def param_vector(self) -> np.ndarray:
        return np.array(self.m_a + self.m_b + self.n_a + self.n_b)

    def with_params(self, x: Sequence[float]) -> "ProtocolConfig":
        x = list(map(float, x))
        sizes = [len(self.m_a), len(self.m_b), len(self.n_a), len(self.n_b)]
        if len(x) != sum(sizes):
            raise DimensionMismatch(f"expected {sum(sizes)} parameters, got {len(x)}")
        parts, k = [], 0
        for s in sizes:
            parts.append(tuple(x[k:k + s]))
            k += s
        return replace(self, m_a=parts[0], m_b=parts[1], n_a=parts[2], n_b=parts[3])

    def identity_params(self) -> np.ndarray:
        return np.ones(len(self.param_vector()))


@dataclass
class ProtocolResult:
    states: tuple
    lqu: tuple
    fidelity_final: float
    fidelity_unprotected: float
    lqu_unprotected: LquResult
    state_unprotected: DensityMatrix
    success_m: float
    success_n: float

    @property
    def lqu_values(self) -> tuple[float, ...]:
        return tuple(r.value for r in self.lqu)

    @property
    def lqu_final(self) -> float:
        return self.lqu[3].value

    def to_dict(self, include_states: bool = True) -> dict:
        out = {
            "lqu": list(self.lqu_values),
            "lqu_final": self.lqu_final,
            "lqu_unprotected": self.lqu_unprotected.value,
            "fidelity_final": self.fidelity_final,
            "fidelity_unprotected": self.fidelity_unprotected,
            "success_m": self.success_m,
            "success_n": self.success_n,
            "success_total": self.success_m * self.success_n,
            "degenerate_flags": [r.degenerate_flag for r in self.lqu],
        }
        if include_states:
            out["states"] = [s.to_dict() for s in self.states]
            out["state_unprotected"] = self.state_unprotected.to_dict()
        return out


def run_protocol(cfg: ProtocolConfig) -> ProtocolResult:
    """rho0 -> weak measurement -> channels -> reversal, plus the unfiltered baseline."""
    ma, mb, na, nb = cfg.filters
    rho0 = cfg.initial_state
    rho1, p_m = apply_filter_pair(ma, mb, rho0)
    rho2 = apply_product(cfg.channel_a, cfg.channel_b, rho1)
    rho3, p_n = apply_filter_pair(na, nb, rho2)
    bare = apply_product(cfg.channel_a, cfg.channel_b, rho0)
    states = (rho0, rho1, rho2, rho3)
    return ProtocolResult(
        states=states,
        lqu=tuple(lqu_closed_form(s) for s in states),
        fidelity_final=fidelity(rho0, rho3),
        fidelity_unprotected=fidelity(rho0, bare),
        lqu_unprotected=lqu_closed_form(bare),
        state_unprotected=bare,
        success_m=p_m,
        success_n=p_n,
    )


class ProtectedLqu:
    """Fast evaluator of LQU(rho3) as a function of the flat parameter vector."""

    def __init__(self, cfg: ProtocolConfig):
        self.cfg = cfg
        rho = cfg.initial_state
        self.dims = (rho.dim_a, rho.dim_b)
        self.rho0 = rho.matrix
        self.superop = product_superoperator(cfg.channel_a, cfg.channel_b)

    def matrix(self, x: Sequence[float]) -> np.ndarray:
        ma, mb, na, nb = self.cfg.with_params(x).filters
        n = self.rho0.shape[0]
        r1, p = filter_product(ma, mb, self.rho0)
        if p < SUCCESS_TOL:
            raise ZeroSuccessProbability("weak measurement removes the whole state")
        r2 = (self.superop @ (r1 / p).ravel()).reshape(n, n)
        r3, p = filter_product(na, nb, r2)
        if p < SUCCESS_TOL:
            raise ZeroSuccessProbability("reversal removes the whole state")
        r3 = r3 / p
        return 0.5 * (r3 + r3.conj().T)

    def state(self, x: Sequence[float]) -> DensityMatrix:
        return DensityMatrix(self.matrix(x), *self.dims)

    def __call__(self, x: Sequence[float]) -> float:
        return lqu_value(self.matrix(x), *self.dims)


@dataclass
class OptimizeResult:
    params: np.ndarray
    lqu: float
    n_eval: int
    trace: list = field(default_factory=list)
    config: ProtocolConfig | None = None


def optimize_filters(cfg_base: ProtocolConfig, budget: int = 20000, seed: int = 0, *,
                     box: tuple[float, float] = PARAM_BOX, **ga_options) -> OptimizeResult:
    """Search the filter parameters that maximize LQU of the final state.

    Identity filters are always in the first generation, so the result is
    never worse than doing nothing. Extra keyword arguments go to
    :func:`lquprotect.optimize.genetic_maximize`.
    """
    if budget < 1:
        raise ValueError("budget must be >= 1")
    objective = ProtectedLqu(cfg_base)
    dim = len(cfg_base.param_vector())
    initial = [cfg_base.identity_params()]
    current = cfg_base.param_vector()
    if not np.allclose(current, initial[0]):
        initial.append(current)
    res = genetic_maximize(objective, [box[0]] * dim, [box[1]] * dim, budget=budget,
                           seed=seed, initial=initial, **ga_options)
    return OptimizeResult(res.x, res.fun, res.n_eval, res.trace, cfg_base.with_params(res.x))


def axis(lo: float, hi: float, num: int) -> np.ndarray:
    if num < 1 or not (math.isfinite(lo) and math.isfinite(hi)):
        raise ValueError("axis needs finite bounds and at least one point")
    return np.linspace(lo, hi, num)


def sweep_surface(cfg: ProtocolConfig, n1_values: Sequence[float],
                  n2_values: Sequence[float]) -> list[tuple[float, float, float]]:
    """LQU of the final state over a grid of qubit reversal strengths (n1 for A, n2 for B).

    Rows come out with n1 as the slow index. Points where the pipeline fails
    are reported as NaN.
    """
    if cfg.initial_state.dim_a != 2 or cfg.initial_state.dim_b != 2:
        raise DimensionMismatch("reversal surfaces are defined for qubit pairs")
    if len(n1_values) == 0 or len(n2_values) == 0:
        raise ValueError("grid axes must be non-empty")
    objective = ProtectedLqu(cfg)
    m = cfg.m_a + cfg.m_b
    rows = []
    for n1 in n1_values:
        for n2 in n2_values:
            try:
                val = objective(m + (float(n1), float(n2)))
            except (ArithmeticError, ValueError):
                val = math.nan
            rows.append((float(n1), float(n2), val))
    return rows
