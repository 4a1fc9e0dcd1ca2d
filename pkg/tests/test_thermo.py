import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from noisetemp.errors import DomainError, UnattainableEntropyError
from noisetemp.sampling import random_clausius_trial, random_spectrum
from noisetemp.spectra import (Harmonic, PowerLawDOS, Tabulated, TwoLevel, energy_scale,
                               thermal_energy, thermal_entropy)
from noisetemp.thermo import (clausius_transfer, effective_temperature,
                              entropy_change_by_quadrature, temperature_for_energy)

H_01 = -0.1 * math.log(0.1) - 0.9 * math.log(0.9)


def test_effective_temperature_qubit():
    res = effective_temperature(TwoLevel(1.0), H_01)
    assert res.temperature == pytest.approx(1 / math.log(9), rel=1e-12)
    assert abs(res.residual) <= 1e-15
    assert res.temperature == pytest.approx(0.455120, abs=1e-6)


def test_effective_temperature_zero_entropy():
    for spec in (TwoLevel(1.0), Harmonic(2.0), PowerLawDOS(2, 1, 10, 1.0)):
        assert effective_temperature(spec, 0.0).temperature == 0.0


def test_unattainable_entropy_names_supremum():
    with pytest.raises(UnattainableEntropyError) as info:
        effective_temperature(TwoLevel(1.0), 0.70)
    assert info.value.supremum == pytest.approx(math.log(2))
    assert "0.693" in str(info.value)
    with pytest.raises(UnattainableEntropyError):
        effective_temperature(Tabulated(((0, 1), (1, 2))), math.log(3))


def test_temperature_for_energy_examples():
    assert temperature_for_energy(Harmonic(1.0), 1 / (math.e - 1)) == pytest.approx(1.0, rel=1e-13)
    assert temperature_for_energy(Harmonic(1.0), 0.0) == 0.0
    with pytest.raises(DomainError):
        temperature_for_energy(TwoLevel(1.0), 0.6)


def test_clausius_example_cold_to_hot():
    tr = clausius_transfer((TwoLevel(1.0), 0.3), (Harmonic(1.0), 0.5), 0.01, 0.01)
    assert tr.dh1 < 0 < tr.dh2
    assert tr.dh_total < 0
    # each side's entropy change is bracketed by dE over its start and end temperatures
    assert -0.01 / tr.t1_after < tr.dh1 < -0.01 / 0.3
    assert 0.01 / tr.t2_after < tr.dh2 < 0.01 / 0.5
    assert thermal_energy(TwoLevel(1.0), tr.t1_after) == pytest.approx(
        thermal_energy(TwoLevel(1.0), 0.3) - 0.01, rel=1e-12)


def test_clausius_reversible_limit_equal_temperatures():
    spec = Harmonic(1.0)
    totals = [clausius_transfer((spec, 0.7), (spec, 0.7), de, de).dh_total
              for de in (1e-2, 1e-3, 1e-4)]
    assert all(t <= 1e-15 for t in totals)
    assert abs(totals[2]) < abs(totals[1]) < abs(totals[0])
    assert abs(totals[2]) < 1e-7


def test_clausius_hot_to_cold_increases_entropy():
    tr = clausius_transfer((Harmonic(1.0), 0.9), (TwoLevel(1.0), 0.3), 0.01, 0.01)
    assert tr.dh_total > 0


@pytest.mark.parametrize("kwargs", [
    dict(delta_e=0.0, delta_e_prime=0.0),
    dict(delta_e=0.01, delta_e_prime=0.02),
    dict(delta_e=10.0, delta_e_prime=1.0),
])
def test_clausius_preconditions(kwargs):
    with pytest.raises(DomainError):
        clausius_transfer((TwoLevel(1.0), 0.3), (Harmonic(1.0), 0.5), **kwargs)


def test_entropy_change_by_quadrature_examples():
    assert entropy_change_by_quadrature(Harmonic(1.0), 0.4, 0.4) == 0.0
    assert entropy_change_by_quadrature(TwoLevel(1.0), 0.0, 1 / math.log(9)) == pytest.approx(
        H_01, abs=1e-8)
    expected = thermal_entropy(Harmonic(1.0), 1.0) - thermal_entropy(Harmonic(1.0), 0.5)
    assert entropy_change_by_quadrature(Harmonic(1.0), 0.5, 1.0) == pytest.approx(expected, abs=1e-8)
    assert entropy_change_by_quadrature(Harmonic(1.0), 1.0, 0.5) == pytest.approx(-expected, abs=1e-8)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2 ** 32 - 1), st.floats(-1, 1))
def test_effective_temperature_round_trip(seed, x):
    spec = random_spectrum(np.random.default_rng(seed))
    T = 10 ** x * energy_scale(spec)
    h = thermal_entropy(spec, T)
    assert effective_temperature(spec, h).temperature == pytest.approx(T, rel=1e-9)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2 ** 32 - 1))
def test_clausius_forward_never_decreases_entropy_sign(seed):
    tr = random_clausius_trial(np.random.default_rng(seed))
    (_, t1), (_, t2) = tr.system1, tr.system2
    assert t1 <= t2 and 0 < tr.delta_e_prime <= tr.delta_e
    # saturated or frozen sides may round a few ulps past zero
    assert tr.dh1 <= 1e-13 and tr.dh2 >= -1e-13
    assert tr.dh_total <= 1e-12


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 2 ** 32 - 1))
def test_dh1_matches_quadrature(seed):
    tr = random_clausius_trial(np.random.default_rng(seed))
    spec, t1 = tr.system1
    assert entropy_change_by_quadrature(spec, t1, tr.t1_after) == pytest.approx(tr.dh1, abs=1e-8)


def test_solver_is_deterministic():
    spec = PowerLawDOS(4.5, 0.8, 37, 3.0)
    a = [effective_temperature(spec, 2.345).temperature for _ in range(3)]
    assert a[0] == a[1] == a[2]
    t1 = random_clausius_trial(np.random.default_rng(7))
    t2 = random_clausius_trial(np.random.default_rng(7))
    assert t1 == t2
