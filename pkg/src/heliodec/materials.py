"""Superfluid helium medium and the immersed nanoparticle."""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cached_property

from .constants import CONSTANTS
from .errors import DomainError
from .quantities import (
    DENSITY,
    MASS,
    MOMENT_OF_INERTIA,
    NUMBER_DENSITY,
    TEMPERATURE,
    VELOCITY,
    Dim,
    Quantity,
    amu,
    g_per_cm3,
    m_per_s,
    mK,
    per_cm3,
)

__all__ = ["HeliumMedium", "Nanoparticle", "radius_from_mass", "moment_of_inertia"]


def _positive(q: Quantity, dim: Dim, name: str) -> Quantity:
    if not isinstance(q, Quantity):
        raise DomainError(f"{name} must be a Quantity, got {type(q).__name__}")
    q.require(dim, name)
    if not (q.value > 0 and math.isfinite(q.value)):
        raise DomainError(f"{name} must be finite and > 0, got {q.value!r}")
    return q


def _real(x, name: str) -> float:
    if isinstance(x, Quantity):
        x = float(x)
    x = float(x)
    if not math.isfinite(x):
        raise DomainError(f"{name} must be finite, got {x!r}")
    return x


@dataclass(frozen=True)
class HeliumMedium:
    """
    Superfluid 4He bath with a dilute 3He admixture.

    ``X3`` is the 3He fraction; the impurity number density is taken as
    ``X3 * n4``, which equals n3/(n4 + n3) to leading order in X3.
    """

    T: Quantity = field(default_factory=lambda: 1.0 * mK)
    v_s: Quantity = field(default_factory=lambda: 238.0 * m_per_s)
    rho_He: Quantity = field(default_factory=lambda: 0.145 * g_per_cm3)
    n4: Quantity = field(default_factory=lambda: 2.0e22 * per_cm3)
    m3: Quantity = CONSTANTS.m_he3
    m4: Quantity = CONSTANTS.m_he4
    m3_eff_ratio: float = 2.34
    X3: float = 1e-15

    def __post_init__(self):
        _positive(self.T, TEMPERATURE, "T")
        _positive(self.v_s, VELOCITY, "v_s")
        _positive(self.rho_He, DENSITY, "rho_He")
        _positive(self.n4, NUMBER_DENSITY, "n4")
        _positive(self.m3, MASS, "m3")
        _positive(self.m4, MASS, "m4")
        ratio = _real(self.m3_eff_ratio, "m3_eff_ratio")
        if ratio <= 0:
            raise DomainError(f"m3_eff_ratio must be > 0, got {ratio}")
        x3 = _real(self.X3, "X3")
        if not 0.0 <= x3 < 1.0:
            raise DomainError(f"X3 must lie in [0, 1), got {x3}")
        object.__setattr__(self, "m3_eff_ratio", ratio)
        object.__setattr__(self, "X3", x3)

    @property
    def m3_eff(self) -> Quantity:
        return self.m3_eff_ratio * self.m3

    @property
    def n3(self) -> Quantity:
        return self.X3 * self.n4

    def with_(self, **changes) -> "HeliumMedium":
        return replace(self, **changes)


def radius_from_mass(M: Quantity, rho: Quantity) -> Quantity:
    """Radius of a homogeneous sphere of mass ``M`` and density ``rho``."""
    _positive(M, MASS, "M")
    _positive(rho, DENSITY, "rho")
    return (3.0 * M / (4.0 * math.pi * rho)) ** Fraction(1, 3)


@dataclass(frozen=True)
class Nanoparticle:
    """
    Homogeneous spherical particle, optionally slightly ellipsoidal.

    Parameters
    ----------
    M : Quantity
        Mass.
    rho : Quantity
        Material density.
    c_int : Quantity
        Speed of sound inside the particle material; sets the lowest
        vibrational mode.
    epsilon : float
        Ellipticity; 0 is an ideal sphere (no rotational phonon coupling).
    """

    M: Quantity = field(default_factory=lambda: 1e6 * amu)
    rho: Quantity = field(default_factory=lambda: 1.0 * g_per_cm3)
    c_int: Quantity = field(default_factory=lambda: 1e3 * m_per_s)
    epsilon: float = 0.0

    def __post_init__(self):
        _positive(self.M, MASS, "M")
        _positive(self.rho, DENSITY, "rho")
        _positive(self.c_int, VELOCITY, "c_int")
        eps = _real(self.epsilon, "epsilon")
        if eps < 0:
            raise DomainError(f"epsilon must be >= 0, got {eps}")
        object.__setattr__(self, "epsilon", eps)

    @cached_property
    def radius(self) -> Quantity:
        return radius_from_mass(self.M, self.rho)

    @cached_property
    def moment_of_inertia(self) -> Quantity:
        return (0.4 * self.M * self.radius**2).require(MOMENT_OF_INERTIA)

    def with_(self, **changes) -> "Nanoparticle":
        return replace(self, **changes)


def moment_of_inertia(p: Nanoparticle) -> Quantity:
    """Solid-sphere moment of inertia, 2/5 M a^2."""
    return p.moment_of_inertia

