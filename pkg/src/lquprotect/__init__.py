"""Local quantum uncertainty of two-particle states under finite-temperature
amplitude damping, and its protection by weak measurement and reversal."""

from .channels import (KrausChannel, amplitude_damping, apply_product, gad_qubit,
                       gad_qutrit_v, validate_cptp)
from .errors import *  # noqa: F401,F403
from .lqu import LquResult, lqu, lqu_bruteforce, lqu_closed_form, skew_information
from .measure import (LocalFilter, apply_filter_pair, reversal_qubit, reversal_qutrit,
                      weak_measurement_qubit, weak_measurement_qutrit)
from .protocol import (ProtocolConfig, ProtocolResult, optimize_filters, run_protocol,
                       sweep_surface)
from .states import (DensityMatrix, bell_qubit, fidelity, nonsym_qubit, nonsym_qutrit,
                     validate)

__version__ = "0.1.0"
