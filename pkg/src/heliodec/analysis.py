"""
Feasibility searches, parameter sweeps and 3He concentration inference.

The coherence margin ``tau_total / tau_talbot`` falls monotonically with both
particle mass and coherence length, so the largest feasible value of either
is found by bisection in log space.
"""

from __future__ import annotations

import itertools
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .channels import tau_phonon, tau_rotational
from .constants import CONSTANTS
from .errors import (
    DomainError,
    FeasibleEverywhereError,
    GridCapError,
    InfeasibleEverywhereError,
    NoSolutionError,
)
from .experiment import ExperimentBudget, ExperimentConfig, total_budget
from .quantities import (
    DENSITY,
    DIMENSIONLESS,
    LENGTH,
    MASS,
    TEMPERATURE,
    TIME,
    Dim,
    Quantity,
    amu,
    mm,
    nm,
)

__all__ = [
    "PARAMETERS",
    "SweepGrid",
    "SweepRow",
    "FeasibilityResult",
    "X3Inference",
    "apply_parameter",
    "coherence_margin",
    "max_mass",
    "max_separation",
    "sweep",
    "infer_x3",
    "MASS_BRACKET",
    "SEPARATION_BRACKET",
    "DEFAULT_POINT_CAP",
]

MASS_BRACKET = (1e5 * amu, 1e12 * amu)
SEPARATION_BRACKET = (10.0 * nm, 1.0 * mm)
DEFAULT_POINT_CAP = 10**7
THREADS_ENV = "HELIODEC_THREADS"

# sweepable parameter -> expected dimension
PARAMETERS: dict[str, Dim] = {
    "mass": MASS,
    "density": DENSITY,
    "separation": LENGTH,
    "temperature": TEMPERATURE,
    "x3": DIMENSIONLESS,
    "epsilon": DIMENSIONLESS,
}


def _as_quantity(value, name: str) -> Quantity:
    dim = PARAMETERS[name]
    if isinstance(value, Quantity):
        return value.require(dim, name)
    if dim != DIMENSIONLESS:
        raise DomainError(f"{name} needs a dimensioned Quantity, got {value!r}")
    return Quantity(value)


def apply_parameter(cfg: ExperimentConfig, name: str, value) -> ExperimentConfig:
    """Return ``cfg`` with one named parameter replaced."""
    if name not in PARAMETERS:
        raise DomainError(f"unknown parameter {name!r}; expected one of {sorted(PARAMETERS)}")
    q = _as_quantity(value, name)
    p, med = cfg.particle, cfg.medium
    if name == "mass":
        return cfg.with_(particle=p.with_(M=q))
    if name == "density":
        return cfg.with_(particle=p.with_(rho=q))
    if name == "separation":
        return cfg.with_(D=q)
    if name == "temperature":
        return cfg.with_(medium=med.with_(T=q))
    if name == "x3":
        return cfg.with_(medium=med.with_(X3=q.value))
    return cfg.with_(particle=p.with_(epsilon=q.value))


def coherence_margin(cfg: ExperimentConfig, name: str | None = None, value=None) -> float:
    if name is not None:
        cfg = apply_parameter(cfg, name, value)
    return total_budget(cfg).coherence_margin


# ---------------------------------------------------------------------------
# feasibility search
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FeasibilityResult:
    variable: str
    optimum: Quantity
    achieved_margin: float
    target_margin: float
    iterations: int
    bracket: tuple[Quantity, Quantity]
    all_regimes_valid: bool = True
    notes: tuple[str, ...] = ()


def _bisect_log(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    target: float,
    rtol: float,
    margin_rtol: float,
    max_iter: int = 200,
) -> tuple[float, float, int, float, float]:
    """Bisect a decreasing ``f`` for ``f(x) = target`` on a log scale.

    Returns (x, f(x), iterations, lo, hi) with lo <= x <= hi.
    """
    f_lo, f_hi = f(lo), f(hi)
    if not f_lo > target:
        raise InfeasibleEverywhereError(
            f"margin {f_lo:.6g} at low bracket {lo:.6g} does not exceed target {target:.6g}"
        )
    if not f_hi < target:
        raise FeasibleEverywhereError(
            f"margin {f_hi:.6g} at high bracket {hi:.6g} is still above target {target:.6g}"
        )
    log_lo, log_hi = math.log(lo), math.log(hi)
    for it in range(1, max_iter + 1):
        log_mid = 0.5 * (log_lo + log_hi)
        x = math.exp(log_mid)
        fx = f(x)
        if fx > target:
            log_lo = log_mid
        else:
            log_hi = log_mid
        narrow = math.expm1(log_hi - log_lo) <= rtol
        if narrow and abs(fx - target) <= margin_rtol * target:
            return x, fx, it, math.exp(log_lo), math.exp(log_hi)
    raise RuntimeError(f"bisection did not converge in {max_iter} iterations")


def _maximize(
    cfg: ExperimentConfig,
    name: str,
    bracket: tuple[Quantity, Quantity],
    rtol: float,
    margin_rtol: float,
) -> FeasibilityResult:
    dim = PARAMETERS[name]
    lo, hi = (b.require(dim, name) for b in bracket)
    if not 0 < lo.value < hi.value:
        raise DomainError(f"bad bracket for {name}: {lo!r}, {hi!r}")

    def f(x: float) -> float:
        return coherence_margin(cfg, name, Quantity(x, dim))

    x, fx, its, b_lo, b_hi = _bisect_log(
        f, lo.value, hi.value, cfg.margin_k, rtol, margin_rtol
    )
    budget = total_budget(apply_parameter(cfg, name, Quantity(x, dim)))
    notes = [
        f"{c.channel.value}: {n}"
        for c in budget.channels
        if not c.valid
        for n in c.notes
        if n != "order-of-magnitude estimate"
    ]
    return FeasibilityResult(
        variable=name,
        optimum=Quantity(x, dim),
        achieved_margin=fx,
        target_margin=cfg.margin_k,
        iterations=its,
        bracket=(Quantity(b_lo, dim), Quantity(b_hi, dim)),
        all_regimes_valid=budget.all_regimes_valid,
        notes=tuple(notes),
    )


def max_mass(
    cfg: ExperimentConfig,
    bracket: tuple[Quantity, Quantity] = MASS_BRACKET,
    *,
    rtol: float = 1e-6,
    margin_rtol: float = 1e-4,
) -> FeasibilityResult:
    """Largest particle mass whose coherence margin still reaches ``cfg.margin_k``."""
    return _maximize(cfg, "mass", bracket, rtol, margin_rtol)


def max_separation(
    cfg: ExperimentConfig,
    bracket: tuple[Quantity, Quantity] = SEPARATION_BRACKET,
    *,
    rtol: float = 1e-6,
    margin_rtol: float = 1e-4,
) -> FeasibilityResult:
    """
    Largest coherence length whose margin still reaches ``cfg.margin_k``.

    The 3He rate does not depend on D, the phonon rate grows as D**2 and the
    Talbot time as D**2, so the margin falls monotonically.  Past
    ``phonon wavelength / regime_margin`` the phonon formula is outside its
    regime; the result then carries ``all_regimes_valid=False`` and a note.
    """
    return _maximize(cfg, "separation", bracket, rtol, margin_rtol)


# ---------------------------------------------------------------------------
# sweeps
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SweepGrid:
    """Cartesian grid of parameter values around a base configuration.

    ``axes`` is an ordered sequence of ``(name, values)``; rows are generated
    row-major in that order (last axis varies fastest).
    """

    axes: tuple[tuple[str, tuple], ...]
    base: ExperimentConfig = field(default_factory=ExperimentConfig)

    def __post_init__(self):
        axes = []
        seen = set()
        for name, values in self.axes:
            if name not in PARAMETERS:
                raise DomainError(f"unknown sweep axis {name!r}")
            if name in seen:
                raise DomainError(f"duplicate sweep axis {name!r}")
            seen.add(name)
            qs = tuple(_as_quantity(v, name) for v in values)
            if not qs:
                raise DomainError(f"sweep axis {name!r} is empty")
            if any(not (q.value > 0 and math.isfinite(q.value)) for q in qs):
                raise DomainError(f"sweep axis {name!r} has non-positive values")
            diffs = [b.value - a.value for a, b in zip(qs, qs[1:])]
            if diffs and not (all(d > 0 for d in diffs) or all(d < 0 for d in diffs)):
                raise DomainError(f"sweep axis {name!r} is not strictly monotone")
            axes.append((name, qs))
        object.__setattr__(self, "axes", tuple(axes))

    @property
    def size(self) -> int:
        return math.prod(len(v) for _, v in self.axes)

    def points(self) -> Iterable[tuple[tuple[str, Quantity], ...]]:
        names = [n for n, _ in self.axes]
        for combo in itertools.product(*(v for _, v in self.axes)):
            yield tuple(zip(names, combo))


@dataclass(frozen=True)
class SweepRow:
    config: ExperimentConfig
    point: tuple[tuple[str, Quantity], ...]
    budget: ExperimentBudget


def _evaluate(base: ExperimentConfig, point) -> SweepRow:
    cfg = base
    for name, value in point:
        cfg = apply_parameter(cfg, name, value)
    return SweepRow(cfg, point, total_budget(cfg))


def _thread_count(threads: int | None) -> int:
    if threads is None:
        env = os.environ.get(THREADS_ENV)
        threads = int(env) if env else 1
    return max(1, threads)


def sweep(
    grid: SweepGrid, *, cap: int = DEFAULT_POINT_CAP, threads: int | None = None
) -> list[SweepRow]:
    """Evaluate the full budget at every grid point, in deterministic order."""
    n = grid.size
    if n > cap:
        raise GridCapError(n, cap)
    workers = _thread_count(threads)
    if workers == 1:
        return [_evaluate(grid.base, pt) for pt in grid.points()]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        # map() yields in submission order whatever the completion order
        return list(pool.map(lambda pt: _evaluate(grid.base, pt), grid.points()))


# ---------------------------------------------------------------------------
# metrology
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class X3Inference:
    x3: float
    tau_he3: Quantity
    background_rate: Quantity
    warnings: tuple[str, ...] = ()


def infer_x3(
    cfg: ExperimentConfig,
    tau_measured: Quantity,
    *,
    subtract_background: bool = True,
) -> X3Inference:
    """
    Invert the 3He decoherence time for the impurity fraction.

    With ``subtract_background`` the model phonon (and, if enabled,
    rotational) rates are removed from ``1 / tau_measured`` first.
    """
    tau_measured.require(TIME, "tau_measured")
    if not (tau_measured.value > 0 and math.isfinite(tau_measured.value)):
        raise DomainError("tau_measured must be finite and > 0")
    p, med, D = cfg.particle, cfg.medium, cfg.D

    ph = tau_phonon(p, med, D, elastic_prefactor=cfg.elastic_prefactor)
    backgrounds = [ph]
    if cfg.include_rotational:
        backgrounds.append(tau_rotational(p, med, D))

    warnings = [
        f"{b.channel.value} lifetime {b.tau.value:.3g} s is within 10x of the measurement"
        for b in backgrounds
        if b.tau.value < 10.0 * tau_measured.value
    ]

    rate = 1.0 / tau_measured.value
    background = math.fsum(b.rate.value for b in backgrounds) if subtract_background else 0.0
    rate_he3 = rate - background
    if not rate_he3 > 0:
        raise NoSolutionError(
            f"background rate {background:.6g}/s exceeds measured rate {rate:.6g}/s"
        )
    tau_he3 = Quantity(1.0 / rate_he3, TIME)
    m_eff = med.m3_eff
    a = p.radius
    x3 = m_eff / (
        8.0 * a**2 * med.n4 * tau_he3 * (2.0 * math.pi * m_eff * CONSTANTS.kB * med.T).sqrt()
    )
    return X3Inference(
        x3=float(x3),
        tau_he3=tau_he3,
        background_rate=Quantity(background, tau_he3.dim ** -1),
        warnings=tuple(warnings),
    )

