"""
Time-domain fringe visibility of a two-path superposition.

The closed form is V(t) = exp(-Γ t) at the aggregate budget rate Γ.  A Monte
Carlo collision process gives an independent estimate: each trial runs a
Poisson process at rate Γ and stays coherent until its first event.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .experiment import ExperimentConfig, total_budget
from .quantities import RATE, TIME, Quantity

__all__ = [
    "VisibilityTrace",
    "fit_decay_time",
    "visibility_trace",
    "monte_carlo_survival",
    "MC_CHUNK",
]

# trials per independent RNG substream; fixed so results don't depend on threading
MC_CHUNK = 1 << 16


@dataclass(frozen=True)
class VisibilityTrace:
    times: np.ndarray
    visibility: np.ndarray
    tau_fit: Quantity
    n_trials: int | None = None

    def standard_errors(self) -> np.ndarray:
        """Binomial standard error of each point, sqrt(p(1-p)/n), for MC traces."""
        if self.n_trials is None:
            raise ValueError("analytic traces carry no sampling error")
        p = self.visibility
        return np.sqrt(p * (1.0 - p) / self.n_trials)


def fit_decay_time(times: np.ndarray, visibility: np.ndarray) -> float:
    """
    Least-squares decay constant from ln V = -t / tau, with V(0) = 1 pinned.

    Points with V = 0 carry no information on a log scale and are dropped.
    Returns +inf for a flat trace.
    """
    keep = visibility > 0
    t = times[keep]
    y = np.log(visibility[keep])
    denom = float(np.dot(t, y))
    if denom == 0.0:
        return math.inf
    tau = -float(np.dot(t, t)) / denom
    if not tau > 0:
        raise DomainError("visibility grows with time; no decay constant")
    return tau


def _grid(t_max: Quantity, n_points: int) -> np.ndarray:
    t_max.require(TIME, "t_max")
    if not (t_max.value > 0 and math.isfinite(t_max.value)):
        raise DomainError("t_max must be finite and > 0")
    if n_points < 2:
        raise DomainError("n_points must be >= 2")
    return np.linspace(0.0, t_max.value, n_points)


def visibility_trace(cfg: ExperimentConfig, t_max: Quantity, n_points: int) -> VisibilityTrace:
    """Analytic visibility exp(-rate_total t) on a uniform time grid."""
    rate = total_budget(cfg).rate_total.value
    times = _grid(t_max, n_points)
    vis = np.exp(-rate * times)
    return VisibilityTrace(times, vis, Quantity(fit_decay_time(times, vis), TIME))


def _first_events(rate: float, n: int, seed_seq: np.random.SeedSequence) -> np.ndarray:
    rng = np.random.Generator(np.random.PCG64(seed_seq))
    # the process survives to t iff its first arrival is later than t
    return rng.exponential(1.0 / rate, size=n)


def monte_carlo_survival(
    rate: Quantity,
    t_max: Quantity,
    n_trials: int,
    seed: int,
    n_points: int = 20,
    *,
    threads: int = 1,
) -> VisibilityTrace:
    """
    Fraction of Poisson collision histories with no event by each time.

    Trials are split into fixed-size chunks, each with its own PCG64 stream
    spawned from ``seed``, so the output is identical for any ``threads``.
    """
    rate.require(RATE, "rate")
    if rate.value < 0 or not math.isfinite(rate.value):
        raise DomainError("rate must be finite and >= 0")
    if n_trials < 1:
        raise DomainError("n_trials must be >= 1")
    times = _grid(t_max, n_points)

    if rate.value == 0.0:
        surv = np.ones_like(times)
        return VisibilityTrace(times, surv, Quantity(math.inf, TIME), n_trials)

    sizes = [MC_CHUNK] * (n_trials // MC_CHUNK)
    if n_trials % MC_CHUNK:
        sizes.append(n_trials % MC_CHUNK)
    streams = np.random.SeedSequence(seed).spawn(len(sizes))

    def chunk_counts(i: int) -> np.ndarray:
        first = np.sort(_first_events(rate.value, sizes[i], streams[i]))
        # number of trials whose first event is strictly after each time
        return sizes[i] - np.searchsorted(first, times, side="right")

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            counts = list(pool.map(chunk_counts, range(len(sizes))))
    else:
        counts = [chunk_counts(i) for i in range(len(sizes))]
    surv = np.sum(counts, axis=0) / n_trials
    return VisibilityTrace(times, surv, Quantity(fit_decay_time(times, surv), TIME), n_trials)
