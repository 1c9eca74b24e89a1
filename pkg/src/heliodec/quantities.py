"""
Dimension-tagged scalar quantities.

A :class:`Quantity` is a float in SI base units together with a
:class:`Dim`, the vector of exponents over (length, mass, time,
temperature).  Exponents are :class:`fractions.Fraction` so that laws such
as ``M**Fraction(-2, 3)`` keep an exact dimension.

Only four base dimensions are tracked; that covers everything the
decoherence channels need.  ``+inf`` is a legal value (an infinite
lifetime), NaN and ``-inf`` are not.

Examples
--------
>>> from heliodec.quantities import nm, amu
>>> d = 300 * nm
>>> (d * d).dim == (d ** 2).dim
True
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from numbers import Real
from typing import NamedTuple, Union

from .errors import DimensionError

__all__ = [
    "Dim",
    "Quantity",
    "DIMENSIONLESS",
    "LENGTH",
    "MASS",
    "TIME",
    "TEMPERATURE",
    "VELOCITY",
    "ACCELERATION",
    "DENSITY",
    "NUMBER_DENSITY",
    "ENERGY",
    "ACTION",
    "RATE",
    "MOMENT_OF_INERTIA",
    "ENERGY_PER_TEMPERATURE",
    "m",
    "nm",
    "um",
    "mm",
    "cm",
    "kg",
    "g",
    "s",
    "K",
    "mK",
    "amu",
    "m_per_s",
    "g_per_cm3",
    "per_cm3",
]

Exponent = Union[int, Fraction]


class Dim(NamedTuple):
    """Exponents of (length, mass, time, temperature)."""

    length: Fraction = Fraction(0)
    mass: Fraction = Fraction(0)
    time: Fraction = Fraction(0)
    temperature: Fraction = Fraction(0)

    def __mul__(self, other: "Dim") -> "Dim":  # type: ignore[override]
        return _dim_mul(self, other)

    def __truediv__(self, other: "Dim") -> "Dim":
        return _dim_div(self, other)

    def __pow__(self, p: Fraction) -> "Dim":
        return _dim_pow(self, Fraction(p))

    def __str__(self) -> str:
        parts = []
        for sym, e in zip(("m", "kg", "s", "K"), self):
            if e == 1:
                parts.append(sym)
            elif e != 0:
                parts.append(f"{sym}^{e}")
        return "·".join(parts) if parts else "1"


def _dim(length=0, mass=0, time=0, temperature=0) -> Dim:
    return Dim(Fraction(length), Fraction(mass), Fraction(time), Fraction(temperature))


@lru_cache(maxsize=4096)
def _dim_mul(a: Dim, b: Dim) -> Dim:
    return Dim(*(x + y for x, y in zip(a, b)))


@lru_cache(maxsize=4096)
def _dim_div(a: Dim, b: Dim) -> Dim:
    return Dim(*(x - y for x, y in zip(a, b)))


@lru_cache(maxsize=4096)
def _dim_pow(a: Dim, p: Fraction) -> Dim:
    return Dim(*(x * p for x in a))


DIMENSIONLESS = _dim()
LENGTH = _dim(length=1)
MASS = _dim(mass=1)
TIME = _dim(time=1)
TEMPERATURE = _dim(temperature=1)
VELOCITY = _dim(length=1, time=-1)
ACCELERATION = _dim(length=1, time=-2)
DENSITY = _dim(length=-3, mass=1)
NUMBER_DENSITY = _dim(length=-3)
ENERGY = _dim(length=2, mass=1, time=-2)
ACTION = _dim(length=2, mass=1, time=-1)
RATE = _dim(time=-1)
MOMENT_OF_INERTIA = _dim(length=2, mass=1)
ENERGY_PER_TEMPERATURE = _dim(length=2, mass=1, time=-2, temperature=-1)


def _as_exponent(p) -> Fraction:
    if isinstance(p, (int, Fraction)):
        return Fraction(p)
    if isinstance(p, float):
        f = Fraction(p).limit_denominator(1000)
        if abs(float(f) - p) > 1e-12 * max(1.0, abs(p)):
            raise DimensionError(f"exponent {p!r} is not a small rational")
        return f
    raise TypeError(f"unsupported exponent type {type(p).__name__}")


class Quantity:
    """An immutable SI value with a dimension tag."""

    __slots__ = ("value", "dim")

    value: float
    dim: Dim

    def __init__(self, value: float, dim: Dim = DIMENSIONLESS):
        v = float(value)
        if math.isnan(v) or v == -math.inf:
            raise ValueError(f"quantity value must not be {v!r}")
        object.__setattr__(self, "value", v)
        object.__setattr__(self, "dim", dim)

    def __setattr__(self, name, value):
        raise AttributeError("Quantity is immutable")

    def __reduce__(self):
        return (Quantity, (self.value, self.dim))

    # -- helpers ---------------------------------------------------------
    @property
    def dimensionless(self) -> bool:
        return self.dim == DIMENSIONLESS

    @property
    def is_finite(self) -> bool:
        return math.isfinite(self.value)

    def to(self, unit: "Quantity") -> float:
        """Magnitude of ``self`` expressed in ``unit``."""
        if unit.dim != self.dim:
            raise DimensionError(f"cannot express {self.dim} in {unit.dim}")
        return self.value / unit.value

    def require(self, dim: Dim, name: str = "quantity") -> "Quantity":
        """Return ``self`` if it has dimension ``dim``, else raise."""
        if self.dim != dim:
            raise DimensionError(f"{name} must have dimension {dim}, got {self.dim}")
        return self

    def sqrt(self) -> "Quantity":
        return self ** Fraction(1, 2)

    # -- arithmetic ------------------------------------------------------
    def _coerce(self, other) -> "Quantity":
        if isinstance(other, Quantity):
            return other
        if isinstance(other, Real):
            return Quantity(other)
        return NotImplemented

    def _same_dim(self, other: "Quantity", op: str) -> None:
        if self.dim != other.dim:
            raise DimensionError(f"cannot {op} {self.dim} and {other.dim}")

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        self._same_dim(other, "add")
        return Quantity(self.value + other.value, self.dim)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        self._same_dim(other, "subtract")
        return Quantity(self.value - other.value, self.dim)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, Quantity):
            return Quantity(self.value * other.value, _dim_mul(self.dim, other.dim))
        if isinstance(other, Real):
            return Quantity(self.value * other, self.dim)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Quantity):
            return Quantity(_div(self.value, other.value), _dim_div(self.dim, other.dim))
        if isinstance(other, Real):
            return Quantity(_div(self.value, other), self.dim)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, Real):
            return Quantity(_div(other, self.value), _dim_div(DIMENSIONLESS, self.dim))
        return NotImplemented

    def __pow__(self, p):
        e = _as_exponent(p)
        return Quantity(self.value ** float(e), _dim_pow(self.dim, e))

    def __neg__(self):
        return Quantity(-self.value, self.dim)

    def __abs__(self):
        return Quantity(abs(self.value), self.dim)

    def __float__(self) -> float:
        if not self.dimensionless:
            raise DimensionError(f"cannot convert {self.dim} quantity to float")
        return self.value

    # -- comparison ------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Quantity):
            return self.dim == other.dim and self.value == other.value
        if isinstance(other, Real) and self.dimensionless:
            return self.value == other
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.dim))

    def _cmp(self, other) -> tuple[float, float]:
        other = self._coerce(other)
        if other is NotImplemented:
            raise TypeError(f"cannot compare Quantity with {type(other).__name__}")
        self._same_dim(other, "compare")
        return self.value, other.value

    def __lt__(self, other):
        a, b = self._cmp(other)
        return a < b

    def __le__(self, other):
        a, b = self._cmp(other)
        return a <= b

    def __gt__(self, other):
        a, b = self._cmp(other)
        return a > b

    def __ge__(self, other):
        a, b = self._cmp(other)
        return a >= b

    def __repr__(self) -> str:
        return f"Quantity({self.value!r}, {self.dim})"

    __str__ = __repr__


def _div(a: float, b: float) -> float:
    # 1/inf -> 0 is fine; x/0 is a genuine error upstream.
    if b == 0:
        raise ZeroDivisionError("quantity division by zero")
    return a / b


# SI base units and the handful of scaled units used by the config layer.
m = Quantity(1.0, LENGTH)
nm = Quantity(1e-9, LENGTH)
um = Quantity(1e-6, LENGTH)
mm = Quantity(1e-3, LENGTH)
cm = Quantity(1e-2, LENGTH)
kg = Quantity(1.0, MASS)
g = Quantity(1e-3, MASS)
s = Quantity(1.0, TIME)
K = Quantity(1.0, TEMPERATURE)
mK = Quantity(1e-3, TEMPERATURE)
amu = Quantity(1.66053906660e-27, MASS)  # CODATA 2018
m_per_s = Quantity(1.0, VELOCITY)
g_per_cm3 = Quantity(1e3, DENSITY)
per_cm3 = Quantity(1e6, NUMBER_DENSITY)
