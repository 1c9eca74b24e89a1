"""Total decoherence budget, Talbot-time criterion and kinematic checks."""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import NamedTuple

from .channels import (
    DEFAULT_REGIME_MARGIN,
    ChannelReport,
    FreezeOut,
    RotonCheck,
    roton_vortex_check,
    tau_he3,
    tau_ideal_gas,
    tau_phonon,
    tau_rotational,
    vibrational_freezeout,
)
from .constants import CONSTANTS
from .errors import DomainError
from .materials import HeliumMedium, Nanoparticle
from .quantities import (
    ACCELERATION,
    LENGTH,
    RATE,
    TIME,
    VELOCITY,
    Quantity,
    m_per_s,
    nm,
)

__all__ = [
    "ExperimentConfig",
    "ExperimentBudget",
    "VelocityCheck",
    "talbot_time",
    "velocity_check",
    "total_budget",
]

V_CRIT_NOTE = "critical velocity is a user-supplied value, not a measured property"


@dataclass(frozen=True)
class ExperimentConfig:
    particle: Nanoparticle = field(default_factory=Nanoparticle)
    medium: HeliumMedium = field(default_factory=HeliumMedium)
    D: Quantity = field(default_factory=lambda: 300.0 * nm)
    margin_k: float = 1.0
    v_crit: Quantity = field(default_factory=lambda: 50.0 * m_per_s)
    include_rotational: bool = True
    elastic_prefactor: float = 1.0
    regime_margin: float = DEFAULT_REGIME_MARGIN

    def __post_init__(self):
        if not isinstance(self.D, Quantity):
            raise DomainError("D must be a Quantity")
        self.D.require(LENGTH, "D")
        if not (self.D.value > 0 and math.isfinite(self.D.value)):
            raise DomainError(f"D must be finite and > 0, got {self.D.value!r}")
        self.v_crit.require(VELOCITY, "v_crit")
        if not self.v_crit.value > 0:
            raise DomainError("v_crit must be > 0")
        for name in ("margin_k", "elastic_prefactor", "regime_margin"):
            v = float(getattr(self, name))
            if not (v > 0 and math.isfinite(v)):
                raise DomainError(f"{name} must be finite and > 0, got {v!r}")
            object.__setattr__(self, name, v)

    def with_(self, **changes) -> "ExperimentConfig":
        return replace(self, **changes)


class VelocityCheck(NamedTuple):
    g_eff: Quantity
    v_final: Quantity
    ok: bool


@dataclass(frozen=True)
class ExperimentBudget:
    channels: tuple[ChannelReport, ...]
    comparison: ChannelReport
    tau_total: Quantity
    rate_total: Quantity
    tau_talbot: Quantity
    coherence_margin: float
    velocity: VelocityCheck
    all_regimes_valid: bool
    freezeout: FreezeOut
    rotons: RotonCheck
    notes: tuple[str, ...] = ()

    @property
    def velocity_ok(self) -> bool:
        return self.velocity.ok

    @property
    def g_eff(self) -> Quantity:
        return self.velocity.g_eff

    def channel(self, name) -> ChannelReport:
        for c in self.channels:
            if c.channel == name:
                return c
        raise KeyError(name)

    def dominance(self) -> list[ChannelReport]:
        """Channels by decreasing rate; order-of-magnitude estimates rank last."""
        return sorted(self.channels, key=lambda c: (c.order_of_magnitude, -c.rate.value))


def talbot_time(p: Nanoparticle, D: Quantity) -> Quantity:
    """Talbot time M D^2 / (2πħ)."""
    if not isinstance(D, Quantity):
        raise DomainError("D must be a Quantity")
    D.require(LENGTH, "D")
    if not D.value > 0:
        raise DomainError(f"D must be > 0, got {D.value!r}")
    return (p.M * D**2 / (2.0 * math.pi * CONSTANTS.hbar)).require(TIME)


def velocity_check(cfg: ExperimentConfig, duration: Quantity) -> VelocityCheck:
    """
    Speed reached after free fall under gravity minus buoyancy.

    ``g_eff = g0 (1 - rho_He / rho)``; negative when the particle is lighter
    than helium and floats up.  The magnitude is compared to ``v_crit``.
    """
    duration.require(TIME, "duration")
    if duration.value < 0:
        raise DomainError("duration must be >= 0")
    p, med = cfg.particle, cfg.medium
    g_eff = (CONSTANTS.g0 * (1.0 - float(med.rho_He / p.rho))).require(ACCELERATION)
    v_final = g_eff * duration
    return VelocityCheck(g_eff, v_final, abs(v_final) <= cfg.v_crit)


def total_budget(cfg: ExperimentConfig) -> ExperimentBudget:
    """Evaluate every channel and combine the included ones by adding rates."""
    p, med, D = cfg.particle, cfg.medium, cfg.D
    rm = cfg.regime_margin
    channels = [
        tau_he3(p, med, D, regime_margin=rm),
        tau_phonon(p, med, D, elastic_prefactor=cfg.elastic_prefactor, regime_margin=rm),
    ]
    if cfg.include_rotational:
        channels.append(tau_rotational(p, med, D, regime_margin=rm))
    comparison = tau_ideal_gas(p, med, D, regime_margin=rm)

    rate_total = Quantity(math.fsum(c.rate.value for c in channels), RATE)
    if rate_total.value == 0.0:
        tau_total = Quantity(math.inf, TIME)
    else:
        tau_total = 1.0 / rate_total
    tau_t = talbot_time(p, D)
    margin = tau_total.value / tau_t.value

    return ExperimentBudget(
        channels=tuple(channels),
        comparison=comparison,
        tau_total=tau_total,
        rate_total=rate_total,
        tau_talbot=tau_t,
        coherence_margin=margin,
        velocity=velocity_check(cfg, tau_t),
        all_regimes_valid=all(c.valid for c in channels),
        freezeout=vibrational_freezeout(p, med),
        rotons=roton_vortex_check(med),
        notes=(V_CRIT_NOTE, "exponential decay assumed for every channel"),
    )
