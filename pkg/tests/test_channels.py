import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from mpmath import zeta as mp_zeta

import oracles
from heliodec.channels import (
    PHONON_PREFACTOR,
    Channel,
    RegimeKind,
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
    zeta,
)
from heliodec.constants import CONSTANTS
from heliodec.errors import DimensionError, DomainError
from heliodec.materials import HeliumMedium, Nanoparticle
from heliodec.quantities import K, amu, g_per_cm3, mK, nm, per_cm3, s

P = Nanoparticle()
MED = HeliumMedium()
D = 300 * nm
HBAR = CONSTANTS.hbar.value


def test_zeta9_series_matches_mpmath():
    assert zeta(9) == pytest.approx(float(mp_zeta(9)), rel=1e-15)
    assert PHONON_PREFACTOR == pytest.approx(
        54 * math.pi / (11 * 40320 * float(mp_zeta(9))), rel=1e-15
    )


class TestHe3:
    def test_wavelength_reference(self):
        lam = he3_wavelength(MED)
        assert lam.value == pytest.approx(float(oracles.lambda_he3()), rel=1e-13)
        assert lam.to(nm) == pytest.approx(30, rel=0.15)

    def test_wavelength_scales(self):
        lam1 = he3_wavelength(MED).value
        assert he3_wavelength(MED.with_(T=4 * mK)).value == pytest.approx(lam1 / 2, rel=1e-14)
        lam3 = he3_wavelength(MED.with_(T=3 * mK))
        assert lam3.value == pytest.approx(float(oracles.lambda_he3(T="3e-3")), rel=1e-13)
        assert lam3.to(nm) == pytest.approx(17.36372408245343, rel=1e-12)

    def test_tau_reference(self):
        r = tau_he3(P, MED, D)
        assert r.channel is Channel.HE3_IMPURITY
        assert r.tau.value == pytest.approx(float(oracles.tau_he3()), rel=1e-13)
        # frozen extended-precision value
        assert r.tau.value == pytest.approx(42.568829308125805, rel=1e-12)
        assert r.tau.value == pytest.approx(40, rel=0.15)
        assert r.rate.value == pytest.approx(1 / r.tau.value, rel=1e-15)

    def test_reference_regime_valid(self):
        r = tau_he3(P, MED, D)
        assert r.valid
        assert r.regime.kind is RegimeKind.SHORT_WAVELENGTH
        assert r.regime.ratio_a > 3 and 1 / r.regime.ratio_D > 3

    def test_zero_concentration_is_infinite(self):
        r = tau_he3(P, MED.with_(X3=0.0), D)
        assert r.tau.value == math.inf
        assert r.rate.value == 0.0

    def test_separation_independent(self):
        a = tau_he3(P, MED, 300 * nm).tau.value
        b = tau_he3(P, MED, 3000 * nm).tau.value
        assert a == b

    def test_invalid_regime_is_flagged_not_refused(self):
        r = tau_he3(P, MED, 40 * nm)
        assert not r.valid
        assert r.notes
        assert r.tau.value == pytest.approx(42.568829308125805, rel=1e-12)

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            tau_he3(P, MED, 0 * nm)
        with pytest.raises(DimensionError):
            tau_he3(P, MED, 1 * s)


class TestPhonon:
    def test_wavelength_reference(self):
        lam = phonon_wavelength(MED)
        assert lam.value == pytest.approx(float(oracles.lambda_phonon()), rel=1e-13)
        assert lam.to(nm) == pytest.approx(1400, rel=0.15)

    def test_wavelength_scaling(self):
        lam1 = phonon_wavelength(MED).value
        assert phonon_wavelength(MED.with_(T=2 * mK)).value == pytest.approx(lam1 / 2, rel=1e-14)
        assert phonon_wavelength(MED.with_(T=3 * mK)).to(nm) == pytest.approx(
            475.9249378172086, rel=1e-12
        )

    def test_tau_reference(self):
        r = tau_phonon(P, MED, D)
        assert r.tau.value == pytest.approx(float(oracles.tau_phonon()), rel=1e-12)
        assert r.tau.value == pytest.approx(24589.355091299057, rel=1e-12)
        assert r.tau.value == pytest.approx(2.5e4, rel=0.15)
        assert r.valid and r.regime.kind is RegimeKind.LONG_WAVELENGTH

    def test_tau_three_millikelvin(self):
        r = tau_phonon(P, MED.with_(T=3 * mK), D)
        assert r.tau.value == pytest.approx(float(oracles.tau_phonon(T="3e-3")), rel=1e-12)
        assert r.tau.value == pytest.approx(2.5e4 / 3**9, rel=0.05)

    def test_small_separation_limit(self):
        r = tau_phonon(P, MED, 1e-6 * nm)
        assert r.rate.value < 1e-20
        assert r.tau.value > 1e20

    def test_elastic_prefactor_multiplies(self):
        base = tau_phonon(P, MED, D).tau.value
        assert tau_phonon(P, MED, D, elastic_prefactor=2.5).tau.value == pytest.approx(
            2.5 * base, rel=1e-15
        )

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            tau_phonon(P, MED, -1 * nm)
        with pytest.raises(DomainError):
            tau_phonon(P, MED, D, elastic_prefactor=0.0)


class TestRotation:
    def test_angular_momentum_reference(self):
        L = angular_momentum(P, MED)
        assert L.value == pytest.approx(float(oracles.angular_momentum()), rel=1e-13)
        assert L.value / HBAR == pytest.approx(365, rel=0.01)

    def test_angular_momentum_scalings(self):
        L = angular_momentum(P, MED).value
        assert angular_momentum(P, MED.with_(T=4 * mK)).value == pytest.approx(2 * L, rel=1e-14)
        L_he = angular_momentum(P.with_(rho=0.145 * g_per_cm3), MED).value
        assert L_he == pytest.approx(float(oracles.angular_momentum(rho=145)), rel=1e-13)
        assert L_he / L == pytest.approx(0.145 ** (-1 / 3), rel=1e-12)

    def test_resonant_wavelength(self):
        lam = resonant_wavelength(P, MED)
        assert lam.value == pytest.approx(float(oracles.lambda_res()), rel=1e-13)
        assert lam.to(nm) == pytest.approx(1.4e6, rel=0.15)
        L = angular_momentum(P, MED)
        identity = 2 * math.pi * MED.v_s.value * P.moment_of_inertia.value
        assert lam.value * L.value == pytest.approx(identity, rel=1e-14)
        assert resonant_wavelength(P, MED.with_(T=4 * mK)).value == pytest.approx(
            lam.value / 2, rel=1e-14
        )

    def test_tau_reference_eps_one(self):
        r = tau_rotational(P.with_(epsilon=1.0), MED, D)
        assert r.tau.value == pytest.approx(float(oracles.tau_rot()), rel=1e-12)
        assert 1e12 <= r.tau.value <= 1e14
        assert r.order_of_magnitude
        assert "order-of-magnitude estimate" in r.notes

    def test_eps_scaling(self):
        t1 = tau_rotational(P.with_(epsilon=1.0), MED, D).tau.value
        t01 = tau_rotational(P.with_(epsilon=0.1), MED, D).tau.value
        assert t01 / t1 == pytest.approx(100, rel=1e-12)
        assert 1e14 <= t01 <= 1e16

    def test_subnormal_eps_gives_infinite_lifetime(self):
        r = tau_rotational(P.with_(epsilon=5e-324), MED, D)
        assert r.tau.value == math.inf and r.rate.value == 0.0

    def test_sphere_does_not_radiate(self):
        r = tau_rotational(P, MED, D)
        assert r.tau.value == math.inf and r.rate.value == 0.0


class TestFrozenModes:
    def test_vibrational_mode_scale(self):
        fo = vibrational_freezeout(P, MED)
        assert fo.temperature.to(K) == pytest.approx(float(oracles.vib_temperature()), rel=1e-13)
        assert fo.temperature.to(K) == pytest.approx(1.0, rel=0.15)
        assert fo.frozen

    def test_doubling_radius_halves_mode(self):
        t1 = vibrational_freezeout(P, MED).temperature.value
        t2 = vibrational_freezeout(P.with_(M=8e6 * amu), MED).temperature.value
        assert t2 == pytest.approx(t1 / 2, rel=1e-13)

    def test_not_frozen_when_hot(self):
        assert not vibrational_freezeout(P, MED.with_(T=500 * mK)).frozen

    def test_rotons(self):
        assert roton_vortex_check(MED).negligible
        assert not roton_vortex_check(MED.with_(T=1 * K)).negligible
        # boundary: ratio exactly equals the margin
        assert roton_vortex_check(MED.with_(T=100 * mK), margin=10).negligible
        assert not roton_vortex_check(MED.with_(T=101 * mK), margin=10).negligible


class TestIdealGas:
    def test_reference(self):
        r = tau_ideal_gas(P, MED)
        assert r.channel is Channel.IDEAL_GAS_COMPARISON
        assert r.tau.value < 1e-10
        assert r.tau.value == pytest.approx(float(oracles.tau_ideal_gas()), rel=1e-6)
        assert r.tau.value == pytest.approx(3.2058062444430e-14, rel=1e-12)

    def test_dilute_limit(self):
        base = tau_ideal_gas(P, MED).tau.value
        for n in (1e10, 1e-10, 1e-100):
            r = tau_ideal_gas(P, MED.with_(n4=n * per_cm3))
            assert r.tau.value == pytest.approx(base * 2e22 / n, rel=1e-12)


# ---------------------------------------------------------------------------
# scaling laws: two-point evaluation of each quoted exponent
# ---------------------------------------------------------------------------

def _ratio(f, base_p, base_m, p2, m2, D1=D, D2=D):
    return f(p2, m2, D2).tau.value / f(base_p, base_m, D1).tau.value


K_ = 2.7  # arbitrary, non-trivial scale factor

SCALINGS = [
    # (label, function, exponent, changed inputs)
    ("he3 M", tau_he3, -2 / 3, dict(p=P.with_(M=K_ * P.M))),
    ("he3 rho", tau_he3, 2 / 3, dict(p=P.with_(rho=K_ * P.rho))),
    ("he3 T", tau_he3, -1 / 2, dict(med=MED.with_(T=K_ * MED.T))),
    ("he3 X3", tau_he3, -1, dict(med=MED.with_(X3=K_ * MED.X3))),
    ("ph M", tau_phonon, -2, dict(p=P.with_(M=K_ * P.M))),
    ("ph rho", tau_phonon, 2, dict(p=P.with_(rho=K_ * P.rho))),
    ("ph D", tau_phonon, -2, dict(D=K_ * D)),
    ("ph T", tau_phonon, -9, dict(med=MED.with_(T=K_ * MED.T))),
]

P1 = P.with_(epsilon=0.3)
SCALINGS_ROT = [
    ("rot M", 19 / 6, dict(p=P1.with_(M=K_ * P1.M))),
    ("rot rho", 1 / 3, dict(p=P1.with_(rho=K_ * P1.rho))),
    ("rot D", -2, dict(D=K_ * D)),
    ("rot T", -7 / 2, dict(med=MED.with_(T=K_ * MED.T))),
    ("rot eps", -2, dict(p=P1.with_(epsilon=K_ * 0.3))),
]


@pytest.mark.parametrize("label, f, exponent, change", SCALINGS, ids=[s[0] for s in SCALINGS])
def test_channel_scaling(label, f, exponent, change):
    t0 = f(P, MED, D).tau.value
    t1 = f(change.get("p", P), change.get("med", MED), change.get("D", D)).tau.value
    assert t1 / t0 == pytest.approx(K_**exponent, rel=1e-10)


@pytest.mark.parametrize("label, exponent, change", SCALINGS_ROT, ids=[s[0] for s in SCALINGS_ROT])
def test_rotational_scaling(label, exponent, change):
    t0 = tau_rotational(P1, MED, D).tau.value
    t1 = tau_rotational(change.get("p", P1), change.get("med", MED), change.get("D", D)).tau.value
    assert t1 / t0 == pytest.approx(K_**exponent, rel=1e-10)


@pytest.mark.parametrize(
    "exponent, change",
    [
        (5 / 6, dict(p=P.with_(M=K_ * P.M))),
        (-1 / 3, dict(p=P.with_(rho=K_ * P.rho))),
        (1 / 2, dict(med=MED.with_(T=K_ * MED.T))),
    ],
)
def test_angular_momentum_scaling(exponent, change):
    L0 = angular_momentum(P, MED).value
    L1 = angular_momentum(change.get("p", P), change.get("med", MED)).value
    assert L1 / L0 == pytest.approx(K_**exponent, rel=1e-10)


def test_phonon_tau_times_d_squared_is_constant():
    vals = [tau_phonon(P, MED, d * nm).tau.value * d**2 for d in (50, 300, 1000)]
    assert vals[1] == pytest.approx(vals[0], rel=1e-12)
    assert vals[2] == pytest.approx(vals[0], rel=1e-12)


@settings(max_examples=60, deadline=None)
@given(
    t1=st.floats(0.01, 10.0),
    t2=st.floats(0.01, 10.0),
    eps=st.sampled_from([0.0, 0.05, 1.0]),
)
def test_rates_monotone_in_temperature(t1, t2, eps):
    lo, hi = sorted((t1, t2))
    p = P.with_(epsilon=eps)
    m_lo, m_hi = MED.with_(T=lo * mK), MED.with_(T=hi * mK)
    for f in (tau_he3, tau_phonon, tau_rotational):
        assert f(p, m_lo, D).rate.value <= f(p, m_hi, D).rate.value * (1 + 1e-12)


def test_he3_dominates_at_reference():
    he3 = tau_he3(P, MED, D).tau.value
    ph = tau_phonon(P, MED, D).tau.value
    rot = tau_rotational(P.with_(epsilon=1.0), MED, D).tau.value
    assert he3 < ph < rot


def test_phonon_overtakes_at_three_millikelvin():
    med = MED.with_(T=3 * mK)
    assert tau_phonon(P, med, D).tau.value < tau_he3(P, med, D).tau.value / 10
