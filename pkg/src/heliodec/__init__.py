"""Decoherence budget of a nanoparticle superposition in superfluid 4He."""

from .analysis import (
    FeasibilityResult,
    SweepGrid,
    infer_x3,
    max_mass,
    max_separation,
    sweep,
)
from .channels import (
    Channel,
    ChannelReport,
    angular_momentum,
    he3_wavelength,
    phonon_wavelength,
    resonant_wavelength,
    roton_vortex_check,
    tau_he3,
    tau_ideal_gas,
    tau_phonon,
    tau_rotational,
    vibrational_freezeout,
)
from .constants import CONSTANTS
from .dynamics import monte_carlo_survival, visibility_trace
from .experiment import ExperimentBudget, ExperimentConfig, talbot_time, total_budget, velocity_check
from .materials import HeliumMedium, Nanoparticle, moment_of_inertia, radius_from_mass
from .quantities import Quantity

__version__ = "0.1.0"
