"""Kraus channels: amplitude damping and its finite-temperature generalizations."""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any

import numpy as np

from .errors import DimensionMismatch, ExcitationBudgetExceeded, ParamOutOfRange
from .states import DensityMatrix

CPTP_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class KrausChannel:
    dim: int
    kraus_ops: tuple
    label: str = ""

    def __post_init__(self):
        ops = []
        for e in self.kraus_ops:
            e = np.array(e, dtype=complex)
            if e.shape != (self.dim, self.dim):
                raise DimensionMismatch(f"Kraus operator shape {e.shape}, expected {(self.dim, self.dim)}")
            e.setflags(write=False)
            ops.append(e)
        if not ops:
            raise ValueError("channel needs at least one Kraus operator")
        object.__setattr__(self, "kraus_ops", tuple(ops))

    @property
    def stacked(self) -> np.ndarray:
        return np.array(self.kraus_ops)

    def __len__(self) -> int:
        return len(self.kraus_ops)

    def apply(self, rho: np.ndarray) -> np.ndarray:
        """Single-system action sum_i E_i rho E_i^dagger."""
        e = self.stacked
        return np.einsum("iab,bc,idc->ad", e, np.asarray(rho, dtype=complex), e.conj())

    def to_dict(self) -> dict[str, Any]:
        return {
            "dim": self.dim,
            "label": self.label,
            "ops": [{"re": e.real.tolist(), "im": e.imag.tolist()} for e in self.kraus_ops],
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "KrausChannel":
        ops = [np.asarray(o["re"], dtype=float) + 1j * np.asarray(o.get("im", 0.0), dtype=float)
               for o in data["ops"]]
        return cls(int(data["dim"]), tuple(ops), data.get("label", ""))

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "KrausChannel":
        return cls.from_dict(json.loads(text))


def _unit_interval(name: str, x: float) -> float:
    x = float(x)
    if not 0.0 <= x <= 1.0:
        raise ParamOutOfRange(f"{name} must lie in [0, 1], got {x}")
    return x


def identity_channel(dim: int) -> KrausChannel:
    return KrausChannel(dim, (np.eye(dim),), "identity")


def amplitude_damping(p: float) -> KrausChannel:
    """Zero-temperature qubit decay |1> -> |0> with probability ``p``."""
    p = _unit_interval("p", p)
    e0 = np.diag([1.0, np.sqrt(1 - p)])
    e1 = np.array([[0.0, np.sqrt(p)], [0.0, 0.0]])
    return KrausChannel(2, (e0, e1), f"ad(p={p})")


def gad_qubit(r: float, p: float) -> KrausChannel:
    """Generalized amplitude damping on a qubit.

    ``r`` weights the loss branch and ``1 - r`` the gain branch; ``p`` is the
    transition probability. ``r = 1`` is plain amplitude damping.
    """
    r = _unit_interval("r", r)
    p = _unit_interval("p", p)
    a, b = np.sqrt(r), np.sqrt(1 - r)
    e0 = a * np.diag([1.0, np.sqrt(1 - p)])
    e1 = a * np.array([[0.0, np.sqrt(p)], [0.0, 0.0]])
    e2 = b * np.diag([np.sqrt(1 - p), 1.0])
    e3 = b * np.array([[0.0, 0.0], [np.sqrt(p), 0.0]])
    return KrausChannel(2, (e0, e1, e2, e3), f"gad2(r={r}, p={p})")


def gad_qutrit_v(r: float, p1: float, p2: float) -> KrausChannel:
    """Generalized amplitude damping for a V-configuration qutrit.

    Levels 1 and 2 exchange excitations with the ground level only, with
    probabilities ``p1`` and ``p2``; there is no 1 <-> 2 transition.
    """
    r = _unit_interval("r", r)
    p1 = _unit_interval("p1", p1)
    p2 = _unit_interval("p2", p2)
    if p1 + p2 > 1.0:
        raise ExcitationBudgetExceeded(f"p1 + p2 = {p1 + p2} exceeds 1")
    a, b = np.sqrt(r), np.sqrt(1 - r)

    def unit(i, j, amp):
        m = np.zeros((3, 3))
        m[i, j] = amp
        return m

    ops = (
        a * np.diag([1.0, np.sqrt(1 - p1), np.sqrt(1 - p2)]),
        a * unit(0, 1, np.sqrt(p1)),
        a * unit(0, 2, np.sqrt(p2)),
        b * np.diag([np.sqrt(max(1 - p1 - p2, 0.0)), 1.0, 1.0]),
        b * unit(1, 0, np.sqrt(p1)),
        b * unit(2, 0, np.sqrt(p2)),
    )
    return KrausChannel(3, ops, f"gad3(r={r}, p1={p1}, p2={p2})")


def apply_product(ch_a: KrausChannel, ch_b: KrausChannel, rho: DensityMatrix) -> DensityMatrix:
    """Independent channels on A and B: sum_ij (E_i x F_j) rho (E_i x F_j)^dagger."""
    if ch_a.dim != rho.dim_a or ch_b.dim != rho.dim_b:
        raise DimensionMismatch(
            f"channel dims ({ch_a.dim}, {ch_b.dim}) vs state dims ({rho.dim_a}, {rho.dim_b})")
    da, db = rho.dim_a, rho.dim_b
    ea, eb = ch_a.stacked, ch_b.stacked
    r4 = rho.matrix.reshape(da, db, da, db)
    out = np.einsum("iab,jcd,bdfh,ief,jgh->aceg", ea, eb, r4, ea.conj(), eb.conj(),
                    optimize=True)
    out = out.reshape(da * db, da * db)
    return DensityMatrix(0.5 * (out + out.conj().T), da, db)


def product_superoperator(ch_a: KrausChannel, ch_b: KrausChannel) -> np.ndarray:
    """Matrix S with vec(out) = S @ vec(rho) for row-major vec, used in hot loops."""
    s_a = np.einsum("iab,icd->acbd", ch_a.stacked, ch_a.stacked.conj())
    s_b = np.einsum("iab,icd->acbd", ch_b.stacked, ch_b.stacked.conj())
    da, db = ch_a.dim, ch_b.dim
    # out[a,c,e,g] = sum s_a[a,e,b,f] s_b[c,g,d,h] rho[b,d,f,h]
    s = np.einsum("aebf,cgdh->acegbdfh", s_a, s_b)
    n = (da * db) ** 2
    return s.reshape(n, n)


@dataclass
class CptpReport:
    deviation: float
    tol: float

    @property
    def ok(self) -> bool:
        return self.deviation <= self.tol


def validate_cptp(ch: KrausChannel, tol: float = CPTP_TOL) -> CptpReport:
    e = ch.stacked
    total = np.einsum("iba,ibc->ac", e.conj(), e)
    return CptpReport(float(np.max(np.abs(total - np.eye(ch.dim)))), tol)


CHANNEL_FAMILIES = {"gad2": gad_qubit, "gad3": gad_qutrit_v}
