"""
Decoherence channels for a nanoparticle in superfluid 4He.

Each ``tau_*`` function is pure and returns a :class:`ChannelReport`:

* ``tau_he3`` -- diffractive scattering of 3He quasiparticles, short-wavelength
  (saturated, separation independent) limit.
* ``tau_phonon`` -- non-resonant scattering of thermal phonons off a rigid
  sphere, long-wavelength limit (rate grows as D**2).
* ``tau_rotational`` -- resonant phonon emission/absorption by a slightly
  ellipsoidal rotor; an order-of-magnitude estimate.
* ``tau_ideal_gas`` -- what the 3He formula would give if the whole bath were a
  non-interacting Bose gas of bare 4He atoms.  Comparison only.

Regime validity uses a single ratio threshold (``regime_margin``, default 3)
for every "much less than" comparison.  Reports outside the threshold are
still computed; they carry ``valid=False`` and a note.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import NamedTuple

from .constants import CONSTANTS
from .errors import DomainError
from .materials import HeliumMedium, Nanoparticle
from .quantities import (
    LENGTH,
    RATE,
    TEMPERATURE,
    TIME,
    Quantity,
    K,
)

__all__ = [
    "Channel",
    "RegimeKind",
    "RegimeClass",
    "ChannelReport",
    "FreezeOut",
    "RotonCheck",
    "DEFAULT_REGIME_MARGIN",
    "DEFAULT_FREEZE_MARGIN",
    "ROTON_GAP",
    "zeta",
    "PHONON_PREFACTOR",
    "he3_wavelength",
    "tau_he3",
    "phonon_wavelength",
    "tau_phonon",
    "angular_momentum",
    "resonant_wavelength",
    "tau_rotational",
    "vibrational_freezeout",
    "roton_vortex_check",
    "ideal_gas_wavelength",
    "tau_ideal_gas",
]

DEFAULT_REGIME_MARGIN = 3.0
DEFAULT_FREEZE_MARGIN = 10.0
ROTON_GAP = 1.0 * K

_HBAR = CONSTANTS.hbar
_KB = CONSTANTS.kB


def zeta(s: int, terms: int = 2000) -> float:
    """Riemann zeta for integer ``s >= 2`` by direct series summation."""
    if s < 2:
        raise DomainError("series only converges for s >= 2")
    # summing smallest terms first keeps fsum's job trivial
    return math.fsum(n ** -float(s) for n in range(terms, 0, -1))


ZETA_9 = zeta(9)
PHONON_PREFACTOR = 54.0 * math.pi / (11.0 * math.factorial(8) * ZETA_9)


class Channel(str, enum.Enum):
    HE3_IMPURITY = "He3Impurity"
    THERMAL_PHONON = "ThermalPhonon"
    ROTATIONAL_PHONON = "RotationalPhonon"
    IDEAL_GAS_COMPARISON = "IdealGasComparison"


class RegimeKind(str, enum.Enum):
    SHORT_WAVELENGTH = "ShortWavelength"
    LONG_WAVELENGTH = "LongWavelength"
    INTERMEDIATE = "Intermediate"


@dataclass(frozen=True)
class RegimeClass:
    """Where the environment wavelength sits relative to particle size and D."""

    kind: RegimeKind
    ratio_a: float
    ratio_D: float

    @classmethod
    def classify(
        cls, wavelength: Quantity, a: Quantity, D: Quantity, margin: float
    ) -> "RegimeClass":
        ratio_a = float(wavelength / a)
        ratio_D = float(wavelength / D)
        if 1.0 / ratio_D >= margin:
            kind = RegimeKind.SHORT_WAVELENGTH
        elif ratio_D >= margin:
            kind = RegimeKind.LONG_WAVELENGTH
        else:
            kind = RegimeKind.INTERMEDIATE
        return cls(kind, ratio_a, ratio_D)


@dataclass(frozen=True)
class ChannelReport:
    channel: Channel
    tau: Quantity
    rate: Quantity
    wavelength: Quantity
    regime: RegimeClass
    valid: bool
    notes: tuple[str, ...] = field(default_factory=tuple)
    order_of_magnitude: bool = False

    @property
    def tau_s(self) -> float:
        return self.tau.value

    @property
    def rate_per_s(self) -> float:
        return self.rate.value


def _report(
    channel: Channel,
    tau: Quantity,
    wavelength: Quantity,
    regime: RegimeClass,
    valid: bool,
    notes: list[str],
    order_of_magnitude: bool = False,
) -> ChannelReport:
    tau.require(TIME, "tau")
    if not tau.value > 0:
        raise DomainError(f"{channel.value}: non-positive decoherence time {tau.value!r}")
    rate = Quantity(1.0 / tau.value, RATE)
    return ChannelReport(
        channel=channel,
        tau=tau,
        rate=rate,
        wavelength=wavelength.require(LENGTH),
        regime=regime,
        valid=valid,
        notes=tuple(notes),
        order_of_magnitude=order_of_magnitude,
    )


def _thermal_energy(med: HeliumMedium) -> Quantity:
    # constructor guarantees T > 0; re-check for media built by hand-rolled replace()
    if not med.T.value > 0:
        raise DomainError("temperature must be > 0")
    return _KB * med.T


def _check_separation(D: Quantity) -> Quantity:
    if not isinstance(D, Quantity):
        raise DomainError("D must be a Quantity")
    D.require(LENGTH, "D")
    if not (D.value > 0 and math.isfinite(D.value)):
        raise DomainError(f"coherence length must be finite and > 0, got {D.value!r}")
    return D


def _far_below(small: float, large: float, margin: float) -> bool:
    return large / small >= margin


# ---------------------------------------------------------------------------
# 3He impurities
# ---------------------------------------------------------------------------

def he3_wavelength(med: HeliumMedium) -> Quantity:
    """Thermal wavelength of dressed 3He quasiparticles, 2πħ/sqrt(3 m* kB T)."""
    return (2.0 * math.pi * _HBAR / (3.0 * med.m3_eff * _thermal_energy(med)).sqrt())


def _short_wavelength_tau(mass: Quantity, n: Quantity, a: Quantity, kT: Quantity) -> Quantity:
    # mass / (8 a^2 n sqrt(2π mass kB T)); mass is the (effective) scatterer mass
    return mass / (8.0 * a**2 * n * (2.0 * math.pi * mass * kT).sqrt())


def tau_he3(
    p: Nanoparticle,
    med: HeliumMedium,
    D: Quantity,
    *,
    regime_margin: float = DEFAULT_REGIME_MARGIN,
) -> ChannelReport:
    """
    Decoherence by 3He impurity scattering.

    The rate is independent of ``D``: in the short-wavelength limit each
    collision carries full which-path information.  ``X3 == 0`` yields an
    infinite lifetime.
    """
    _check_separation(D)
    kT = _thermal_energy(med)
    lam = he3_wavelength(med)
    a = p.radius
    if med.X3 == 0.0:
        tau = Quantity(math.inf, TIME)
    else:
        tau = _short_wavelength_tau(med.m3_eff, med.n3, a, kT)

    regime = RegimeClass.classify(lam, a, D, regime_margin)
    notes = []
    ok_a = _far_below(a.value, lam.value, regime_margin)
    ok_D = _far_below(lam.value, D.value, regime_margin)
    if not ok_a:
        notes.append(f"3He wavelength/radius = {regime.ratio_a:.3g} < {regime_margin:g}")
    if not ok_D:
        notes.append(f"D/3He wavelength = {1 / regime.ratio_D:.3g} < {regime_margin:g}")
    return _report(Channel.HE3_IMPURITY, tau, lam, regime, ok_a and ok_D, notes)


# ---------------------------------------------------------------------------
# thermal phonons
# ---------------------------------------------------------------------------

def phonon_wavelength(med: HeliumMedium) -> Quantity:
    """Effective thermal phonon wavelength 2πħ v_s / (8 kB T)."""
    return 2.0 * math.pi * _HBAR * med.v_s / (8.0 * _thermal_energy(med))


def tau_phonon(
    p: Nanoparticle,
    med: HeliumMedium,
    D: Quantity,
    *,
    elastic_prefactor: float = 1.0,
    regime_margin: float = DEFAULT_REGIME_MARGIN,
) -> ChannelReport:
    """
    Decoherence by non-resonant thermal phonon scattering.

    tau = C ħ^9 v_s^8 / (D^2 a^6 (kB T)^9) with
    C = 54π / (11 · 8! · ζ(9)) · elastic_prefactor.
    """
    _check_separation(D)
    if not elastic_prefactor > 0:
        raise DomainError("elastic_prefactor must be > 0")
    kT = _thermal_energy(med)
    a = p.radius
    # grouped into dimensionless ratios; ħ**9 alone sits near float underflow
    thermal_time = _HBAR / kT
    x_a = float(_HBAR * med.v_s / (kT * a))
    x_D = float(_HBAR * med.v_s / (kT * D))
    tau = elastic_prefactor * PHONON_PREFACTOR * thermal_time * (x_a**6 * x_D**2)

    lam = phonon_wavelength(med)
    regime = RegimeClass.classify(lam, a, D, regime_margin)
    ok_a = _far_below(a.value, lam.value, regime_margin)
    ok_D = _far_below(D.value, lam.value, regime_margin)
    notes = []
    if not ok_D:
        notes.append(f"phonon wavelength/D = {regime.ratio_D:.3g} < {regime_margin:g}")
    if not ok_a:
        notes.append(f"phonon wavelength/radius = {regime.ratio_a:.3g} < {regime_margin:g}")
    if tau.value == 0.0:
        # only reachable for absurd inputs where the power law underflows
        raise DomainError("phonon decoherence time underflowed")
    return _report(Channel.THERMAL_PHONON, tau, lam, regime, ok_a and ok_D, notes)


# ---------------------------------------------------------------------------
# rotation
# ---------------------------------------------------------------------------

def angular_momentum(p: Nanoparticle, med: HeliumMedium) -> Quantity:
    """Thermal angular momentum sqrt(3 I kB T)."""
    return (3.0 * p.moment_of_inertia * _thermal_energy(med)).sqrt()


def resonant_wavelength(p: Nanoparticle, med: HeliumMedium) -> Quantity:
    """Wavelength of a phonon resonant with a rotational transition, 2π v_s I / L."""
    return 2.0 * math.pi * med.v_s * p.moment_of_inertia / angular_momentum(p, med)


def tau_rotational(
    p: Nanoparticle,
    med: HeliumMedium,
    D: Quantity,
    *,
    regime_margin: float = DEFAULT_REGIME_MARGIN,
) -> ChannelReport:
    """
    Decoherence from resonant phonons radiated by a rotating ellipsoid.

    The excited-state lifetime ħ v_s^3 I^5 / (ρ_He ε^2 a^8 L^5) is stretched
    by (λ_res / D)^2 because the emitted phonons barely resolve position.
    Only the order of magnitude is meaningful.
    """
    _check_separation(D)
    I = p.moment_of_inertia
    L = angular_momentum(p, med)
    lam = resonant_wavelength(p, med)
    a = p.radius
    if p.epsilon == 0.0:
        tau = Quantity(math.inf, TIME)
    else:
        lifetime = _HBAR * med.v_s**3 * (I / L) ** 5 / (med.rho_He * a**8)
        # divide twice: epsilon**2 underflows to 0 for tiny epsilon
        tau = (lam / D) ** 2 * lifetime / p.epsilon / p.epsilon

    regime = RegimeClass.classify(lam, a, D, regime_margin)
    ok = _far_below(D.value, lam.value, regime_margin) and _far_below(
        a.value, lam.value, regime_margin
    )
    notes = ["order-of-magnitude estimate"]
    if not ok:
        notes.append(f"resonant wavelength/D = {regime.ratio_D:.3g} < {regime_margin:g}")
    return _report(
        Channel.ROTATIONAL_PHONON, tau, lam, regime, ok, notes, order_of_magnitude=True
    )


# ---------------------------------------------------------------------------
# frozen degrees of freedom
# ---------------------------------------------------------------------------

class FreezeOut(NamedTuple):
    temperature: Quantity
    frozen: bool


class RotonCheck(NamedTuple):
    gap: Quantity
    negligible: bool


def _ratio_at_least(ratio: float, margin: float) -> bool:
    # tolerate last-bit rounding exactly at the boundary
    return ratio >= margin * (1.0 - 1e-12)


def vibrational_freezeout(
    p: Nanoparticle, med: HeliumMedium, *, margin: float = DEFAULT_FREEZE_MARGIN
) -> FreezeOut:
    """Temperature equivalent ħ c_int / (a kB) of the lowest vibrational mode."""
    t_mode = (_HBAR * p.c_int / (p.radius * _KB)).require(TEMPERATURE)
    return FreezeOut(t_mode, _ratio_at_least(float(t_mode / med.T), margin))


def roton_vortex_check(
    med: HeliumMedium, *, gap: Quantity = ROTON_GAP, margin: float = DEFAULT_FREEZE_MARGIN
) -> RotonCheck:
    """Whether rotons and vortex rings (gap ~1 K) are thermally inaccessible."""
    gap.require(TEMPERATURE, "gap")
    return RotonCheck(gap, _ratio_at_least(float(gap / med.T), margin))


# ---------------------------------------------------------------------------
# non-interacting Bose gas comparison
# ---------------------------------------------------------------------------

def ideal_gas_wavelength(med: HeliumMedium) -> Quantity:
    return 2.0 * math.pi * _HBAR / (3.0 * med.m4 * _thermal_energy(med)).sqrt()


def tau_ideal_gas(
    p: Nanoparticle,
    med: HeliumMedium,
    D: Quantity | None = None,
    *,
    regime_margin: float = DEFAULT_REGIME_MARGIN,
) -> ChannelReport:
    """
    3He-style short-wavelength estimate with every 4He atom as a bare scatterer.

    Never part of a decoherence budget; it shows how much the superfluid
    suppresses scattering.
    """
    kT = _thermal_energy(med)
    a = p.radius
    tau = _short_wavelength_tau(med.m4, med.n4, a, kT)
    lam = ideal_gas_wavelength(med)
    if D is None:
        D = 300e-9 * Quantity(1.0, LENGTH)
    _check_separation(D)
    regime = RegimeClass.classify(lam, a, D, regime_margin)
    ok = _far_below(a.value, lam.value, regime_margin) and _far_below(
        lam.value, D.value, regime_margin
    )
    return _report(
        Channel.IDEAL_GAS_COMPARISON,
        tau,
        lam,
        regime,
        ok,
        ["comparison only; excluded from budget"],
    )
