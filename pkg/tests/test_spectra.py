import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from noisetemp.errors import DivergenceError, DomainError, ValidationError
from noisetemp.spectra import (NATURAL, SI, Harmonic, PowerLawDOS, Tabulated, TwoLevel,
                               entropy_by_quadrature, error_probability, log_partition,
                               spectrum_from_dict, spectrum_to_dict, thermal_energy,
                               thermal_entropy, thermal_point)

KT9 = 1 / math.log(9)   # e^{-1/kT} = 1/9, so eps = 0.1 for TwoLevel(1)
EXAMPLES = [TwoLevel(1.0), Harmonic(1.0), PowerLawDOS(3, 2, 100, 1.0),
            Tabulated(((0, 1), (0.5, 2), (1.5, 3)))]


def test_two_level_log_partition():
    assert log_partition(TwoLevel(1.0), KT9) == pytest.approx(math.log(10 / 9), rel=1e-14)


def test_harmonic_log_partition():
    assert log_partition(Harmonic(1.0), 1.0) == pytest.approx(-math.log(1 - math.exp(-1)), rel=1e-14)
    assert log_partition(Harmonic(1.0), 1.0) == pytest.approx(0.458675, abs=1e-6)


@pytest.mark.parametrize("spec", EXAMPLES)
def test_zero_temperature_is_exactly_zero(spec):
    p = thermal_point(spec, 0.0)
    assert (p.log_partition, p.energy, p.entropy, p.error_prob) == (0, 0, 0, 0)
    assert entropy_by_quadrature(spec, 0.0) == 0


def test_thermal_energy_examples():
    assert thermal_energy(Harmonic(1.0), 1.0) == pytest.approx(1 / (math.e - 1), rel=1e-14)
    assert thermal_energy(TwoLevel(1.0), KT9) == pytest.approx(0.1, rel=1e-14)


def test_thermal_entropy_examples():
    binary = -0.1 * math.log(0.1) - 0.9 * math.log(0.9)
    assert thermal_entropy(TwoLevel(1.0), KT9) == pytest.approx(binary, rel=1e-14)
    assert binary == pytest.approx(0.325083, abs=1e-6)
    assert thermal_entropy(TwoLevel(1.0), 1e8) == pytest.approx(math.log(2), abs=1e-15)
    assert thermal_entropy(TwoLevel(1.0), math.inf) == pytest.approx(math.log(2), rel=1e-15)


def test_quadrature_examples():
    assert entropy_by_quadrature(TwoLevel(1.0), KT9) == pytest.approx(
        thermal_entropy(TwoLevel(1.0), KT9), abs=1e-8)
    assert entropy_by_quadrature(Harmonic(1.0), 1.0) == pytest.approx(
        thermal_entropy(Harmonic(1.0), 1.0), abs=1e-8)


def test_error_probability_examples():
    assert error_probability(TwoLevel(1.0), KT9) == pytest.approx(0.1, rel=1e-14)
    assert error_probability(TwoLevel(1.0), 0.0) == 0
    assert error_probability(Harmonic(1.0), 1.0, convention="orthogonal") == pytest.approx(math.exp(-1))
    # for the oscillator 1 - 1/Z is exactly exp(-dE/kT)
    assert error_probability(Harmonic(1.0), 1.0) == pytest.approx(math.exp(-1), rel=1e-14)
    with pytest.raises(DomainError):
        error_probability(TwoLevel(1.0), 1.0, convention="orthogonal")


def test_negative_temperature_rejected():
    with pytest.raises(DomainError):
        thermal_point(TwoLevel(1.0), -1.0)


def test_divergence_at_infinite_temperature():
    with pytest.raises(DivergenceError):
        thermal_point(Harmonic(1.0), math.inf)
    with pytest.raises(DivergenceError):
        thermal_point(PowerLawDOS(2, 1, 10, 1.0), math.inf)


def test_power_law_against_brute_force_sum():
    spec = PowerLawDOS(3, 2, 100, 1.0)
    T = 0.05
    n = np.arange(1, 20000)
    w = 2 * n ** 3.0 * np.exp(-(n / 100) / T)
    z = 1 + math.fsum(w)
    e = math.fsum(w * n / 100) / z
    p = thermal_point(spec, T)
    assert p.log_partition == pytest.approx(math.log(z), rel=1e-13)
    assert p.energy == pytest.approx(e, rel=1e-12)
    assert p.error_prob == pytest.approx(1 - 1 / z, rel=1e-13)


def test_tabulated_against_direct_sum():
    spec = Tabulated(((0, 1), (0.5, 2), (1.5, 3)))
    T = 0.8
    w = np.array([1, 2 * math.exp(-0.5 / T), 3 * math.exp(-1.5 / T)])
    z = w.sum()
    p = thermal_point(spec, T)
    assert p.log_partition == pytest.approx(math.log(z), rel=1e-14)
    assert p.energy == pytest.approx((w @ [0, 0.5, 1.5]) / z, rel=1e-14)


@pytest.mark.parametrize("bad", [
    {"kind": "two_level", "e1": -1}, {"kind": "harmonic"}, {"kind": "nope"},
    {"kind": "power_law", "alpha": 0.5, "a": 1, "n_levels": 10, "e_max": 1},
    {"kind": "tabulated", "levels": [[0, 2], [1, 1]]},
    {"kind": "tabulated", "levels": [[0, 1], [1, 1], [1, 1]]},
])
def test_invalid_spectra(bad):
    with pytest.raises(ValidationError):
        spectrum_from_dict(bad)


@pytest.mark.parametrize("spec", EXAMPLES)
def test_spectrum_dict_round_trip(spec):
    assert spectrum_from_dict(spectrum_to_dict(spec)) == spec


# --- invariants ---------------------------------------------------------------

spectra_st = st.one_of(
    st.builds(TwoLevel, st.floats(0.01, 100)),
    st.builds(Harmonic, st.floats(0.01, 100)),
    st.builds(PowerLawDOS, st.floats(1, 10), st.floats(0.5, 2), st.integers(10, 200),
              st.floats(0.1, 100)),
)


def _scale(spec):
    return spec.spacing if isinstance(spec, PowerLawDOS) else getattr(spec, "e1", None) or spec.delta_e


@settings(max_examples=60, deadline=None)
@given(spectra_st, st.lists(st.floats(-1.5, 1.5), min_size=2, max_size=12))
def test_monotone_in_temperature(spec, logs):
    ts = sorted(10 ** x * _scale(spec) for x in logs)
    pts = [thermal_point(spec, t) for t in ts]
    for p, q in zip(pts, pts[1:]):
        assert p.entropy <= q.entropy
        assert p.energy <= q.energy
        assert p.error_prob <= q.error_prob


@settings(max_examples=40, deadline=None)
@given(spectra_st, st.floats(-1, 1))
def test_entropy_identity_vs_quadrature(spec, x):
    T = 10 ** x * _scale(spec)
    assert abs(thermal_entropy(spec, T) - entropy_by_quadrature(spec, T)) <= 1e-8


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([TwoLevel, Harmonic]), st.floats(0.01, 100), st.floats(-1.3, 1.7))
def test_forced_sum_matches_closed_form(cls, e, x):
    spec = cls(e)
    T = 10 ** x * e
    a, b = thermal_point(spec, T), thermal_point(spec, T, force_sum=True)
    for u, v in ((a.log_partition, b.log_partition), (a.energy, b.energy),
                 (a.entropy, b.entropy)):
        assert u == pytest.approx(v, rel=1e-10)


@settings(max_examples=60, deadline=None)
@given(spectra_st, st.floats(-1.5, 1.5))
def test_thermal_point_identity(spec, x):
    T = 10 ** x * _scale(spec)
    p = thermal_point(spec, T)
    assert p.entropy == pytest.approx(p.log_partition + p.energy / T, rel=1e-12)
    # 1 - 1/Z rounds to 1.0 once 1/Z drops below half an ulp
    assert p.entropy >= 0 and p.energy >= 0 and 0 <= p.error_prob <= 1


@settings(max_examples=40, deadline=None)
@given(st.floats(1, 10), st.floats(0.5, 2), st.integers(10, 200), st.floats(0.1, 10),
       st.floats(1e-3, 1e3), st.floats(0.01, 2))
def test_power_law_dimensional_scaling(alpha, a, n, e_max, c, t):
    base, scaled = PowerLawDOS(alpha, a, n, e_max), PowerLawDOS(alpha, a, n, e_max * c)
    T = t * base.spacing
    p, q = thermal_point(base, T), thermal_point(scaled, T * c)
    assert q.log_partition == pytest.approx(p.log_partition, rel=1e-12)
    assert q.error_prob == pytest.approx(p.error_prob, rel=1e-12)
    assert q.entropy == pytest.approx(p.entropy, rel=1e-12)
    assert q.energy == pytest.approx(p.energy * c, rel=1e-12)


def test_si_constants_only_rescale():
    spec = TwoLevel(SI.k * 2.0)
    assert thermal_point(spec, 3.0, SI).entropy == pytest.approx(
        thermal_point(TwoLevel(2.0), 3.0, NATURAL).entropy, rel=1e-14)
