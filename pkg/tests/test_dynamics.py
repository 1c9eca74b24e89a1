import math

import numpy as np
import pytest

from heliodec.dynamics import MC_CHUNK, fit_decay_time, monte_carlo_survival, visibility_trace
from heliodec.errors import DomainError
from heliodec.experiment import total_budget
from heliodec.quantities import RATE, Quantity, s


def rate(per_s: float) -> Quantity:
    return Quantity(per_s, RATE)


class TestVisibilityTrace:
    def test_starts_at_one_and_decays(self, reference):
        tr = visibility_trace(reference, 10 * s, 50)
        assert tr.visibility[0] == 1.0
        assert np.all(np.diff(tr.visibility) <= 0)
        assert np.all((tr.visibility >= 0) & (tr.visibility <= 1))

    def test_one_over_e_at_tau_total(self, reference):
        tau = total_budget(reference).tau_total
        tr = visibility_trace(reference, tau, 2)
        assert tr.visibility[-1] == pytest.approx(math.exp(-1), rel=1e-9)

    def test_fit_recovers_tau_total(self, reference):
        tau = total_budget(reference).tau_total.value
        tr = visibility_trace(reference, 100 * s, 30)
        assert tr.tau_fit.value == pytest.approx(tau, rel=1e-9)

    def test_visibility_after_talbot_time(self, reference):
        b = total_budget(reference)
        tr = visibility_trace(reference, b.tau_talbot, 5)
        assert tr.visibility[-1] == pytest.approx(math.exp(-0.22554623283843437 / 42.495261963792286), rel=1e-10)
        assert tr.visibility[-1] == pytest.approx(0.994, abs=1e-3)

    def test_grid_refinement_invariance(self, reference):
        coarse = visibility_trace(reference, 8 * s, 5)
        fine = visibility_trace(reference, 8 * s, 17)
        # coarse points are every fourth fine point
        np.testing.assert_array_equal(coarse.times, fine.times[::4])
        np.testing.assert_allclose(coarse.visibility, fine.visibility[::4], rtol=1e-15)

    def test_bad_arguments(self, reference):
        with pytest.raises(DomainError):
            visibility_trace(reference, 0 * s, 10)
        with pytest.raises(DomainError):
            visibility_trace(reference, 1 * s, 1)


class TestMonteCarlo:
    def test_zero_rate(self):
        tr = monte_carlo_survival(rate(0.0), 10 * s, 100, seed=1)
        assert np.all(tr.visibility == 1.0)
        assert tr.tau_fit.value == math.inf

    def test_survival_at_tau(self):
        tr = monte_carlo_survival(rate(1 / 39), 39 * s, 1_000_000, seed=2016, n_points=2)
        p = math.exp(-1)
        se = math.sqrt(p * (1 - p) / 1_000_000)
        assert abs(tr.visibility[-1] - p) <= 3 * se
        assert abs(tr.visibility[-1] - p) <= 3e-3

    def test_fitted_tau_within_one_percent(self):
        tr = monte_carlo_survival(rate(1 / 39), 78 * s, 1_000_000, seed=7, n_points=20)
        assert tr.tau_fit.value == pytest.approx(39.0, rel=0.01)

    def test_same_seed_same_trace(self):
        a = monte_carlo_survival(rate(0.5), 4 * s, 200_000, seed=11)
        b = monte_carlo_survival(rate(0.5), 4 * s, 200_000, seed=11)
        np.testing.assert_array_equal(a.visibility, b.visibility)
        c = monte_carlo_survival(rate(0.5), 4 * s, 200_000, seed=12)
        assert not np.array_equal(a.visibility, c.visibility)

    def test_thread_count_invariance(self):
        n = 3 * MC_CHUNK + 17
        a = monte_carlo_survival(rate(0.5), 4 * s, n, seed=3, threads=1)
        b = monte_carlo_survival(rate(0.5), 4 * s, n, seed=3, threads=4)
        np.testing.assert_array_equal(a.visibility, b.visibility)

    def test_monotone_survival(self):
        tr = monte_carlo_survival(rate(2.0), 3 * s, 50_000, seed=5, n_points=40)
        assert tr.visibility[0] == 1.0
        assert np.all(np.diff(tr.visibility) <= 0)

    def test_bad_arguments(self):
        with pytest.raises(DomainError):
            monte_carlo_survival(rate(-1.0), 1 * s, 10, seed=0)
        with pytest.raises(DomainError):
            monte_carlo_survival(rate(1.0), 1 * s, 0, seed=0)


def test_fit_decay_time_ignores_zero_points():
    t = np.array([0.0, 1.0, 2.0, 50.0])
    v = np.array([1.0, math.exp(-0.5), math.exp(-1.0), 0.0])
    assert fit_decay_time(t, v) == pytest.approx(2.0, rel=1e-12)
