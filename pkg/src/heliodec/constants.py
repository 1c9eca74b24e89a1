"""
Physical constants (CODATA 2018) as dimension-tagged quantities.

Material parameters of helium (sound speed, density, ...) are *not* here;
they live on :class:`heliodec.materials.HeliumMedium` so they can be
overridden per run.
"""

from __future__ import annotations

from dataclasses import dataclass

from .quantities import (
    ACCELERATION,
    ACTION,
    ENERGY_PER_TEMPERATURE,
    MASS,
    Quantity,
    amu,
)

__all__ = ["Constants", "CONSTANTS"]


@dataclass(frozen=True)
class Constants:
    hbar: Quantity = Quantity(1.054571817e-34, ACTION)
    kB: Quantity = Quantity(1.380649e-23, ENERGY_PER_TEMPERATURE)
    amu: Quantity = amu
    g0: Quantity = Quantity(9.80665, ACCELERATION)
    # neutral-atom masses, AME2016
    m_he3: Quantity = Quantity(3.01602932007 * amu.value, MASS)
    m_he4: Quantity = Quantity(4.00260325413 * amu.value, MASS)


CONSTANTS = Constants()
