"""Reference scenarios: the three state/channel setups and their reported numbers."""
from __future__ import annotations

from dataclasses import dataclass

from .channels import gad_qubit, gad_qutrit_v
from .protocol import ProtocolConfig
from .states import bell_qubit, nonsym_qubit, nonsym_qutrit


@dataclass(frozen=True)
class Reported:
    value: float
    tol: float


@dataclass(frozen=True)
class Scenario:
    key: str
    label: str
    config: ProtocolConfig
    lqu_initial: Reported
    lqu_protected: Reported
    lqu_unprotected: Reported
    fidelity_protected: Reported
    fidelity_unprotected: Reported

    def reported(self) -> dict[str, Reported]:
        return {
            "lqu_initial": self.lqu_initial,
            "lqu_protected": self.lqu_protected,
            "lqu_unprotected": self.lqu_unprotected,
            "fidelity_protected": self.fidelity_protected,
            "fidelity_unprotected": self.fidelity_unprotected,
        }


def bell_scenario() -> Scenario:
    ch = gad_qubit(0.5, 0.5)
    cfg = ProtocolConfig(bell_qubit(), ch, ch, (1.285,), (0.760,), (1.606,), (0.830,))
    return Scenario("bell", "2D Bell", cfg,
                    Reported(1.0, 1e-9), Reported(0.218, 0.002), Reported(0.134, 0.001),
                    Reported(0.52, 0.005), Reported(0.56, 0.005))


def nonsym_qubit_scenario() -> Scenario:
    ch = gad_qubit(0.5, 0.5)
    cfg = ProtocolConfig(nonsym_qubit(), ch, ch, (1.65,), (1.20,), (0.85,), (0.90,))
    return Scenario("nonsym2", "Non-symmetrical 2D", cfg,
                    Reported(0.096, 0.001), Reported(0.031, 0.002), Reported(0.019, 0.001),
                    Reported(0.964, 0.003), Reported(0.960, 0.003))


def nonsym_qutrit_scenario() -> Scenario:
    ch = gad_qutrit_v(0.5, 0.1, 0.4)
    cfg = ProtocolConfig(nonsym_qutrit(), ch, ch,
                         (1.2745, 1.29), (1.1175, 0.939),
                         (0.751, 0.564, 0.480), (0.954, 0.884, 0.759))
    return Scenario("qutrit", "3D", cfg,
                    Reported(0.130, 0.001), Reported(0.081, 0.002), Reported(0.072, 0.001),
                    Reported(0.925, 0.005), Reported(0.964, 0.005))


def table1_scenarios() -> list[Scenario]:
    return [bell_scenario(), nonsym_qubit_scenario(), nonsym_qutrit_scenario()]


# fixed weak-measurement strengths and reported reversal optimum for the two surfaces
SURFACES = {
    "fig4": {"scenario": bell_scenario, "optimum": (1.606, 0.830), "value": 0.218},
    "fig5": {"scenario": nonsym_qubit_scenario, "optimum": (0.85, 0.90), "value": 0.031},
}
