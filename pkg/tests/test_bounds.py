import math
from concurrent.futures import ThreadPoolExecutor

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from noisetemp.bounds import (CSV_COLUMNS, dissipation_pipeline, environment_heat, fmt,
                              oscillator_dissipation, oscillator_spectrum_for,
                              powerlaw_dissipation_asymptotic, qubit_dissipation, rate_bounds,
                              with_environment)
from noisetemp.errors import DomainError
from noisetemp.qstate import binary_entropy
from noisetemp.spectra import SI, Harmonic, PowerLawDOS, TwoLevel

# frozen from an independent math.gamma evaluation, see test_powerlaw_regression_constant
POWERLAW_E_3_2_1E4 = 1.2408064788027996e-05


def test_rate_bounds_examples():
    r = rate_bounds(1.0, 2)
    assert r.min_step_time == 0.25 and r.rate == 4.0
    assert rate_bounds(1.0, math.inf).rate == 2.0
    assert rate_bounds(1.0, 10 ** 9).rate == pytest.approx(2.0, rel=1e-8)
    assert rate_bounds(1.5, 4).rate == pytest.approx(4.0, rel=1e-15)
    for bad in ((0.0, 2), (1.0, 1), (-1.0, 3)):
        with pytest.raises(DomainError):
            rate_bounds(*bad)


def test_qubit_examples():
    rep = qubit_dissipation(1.0, 0.1)
    assert rep.rate == 2.0
    assert rep.energy_per_step == pytest.approx(0.1, rel=1e-15)
    assert rep.heat_rate == pytest.approx(0.2, rel=1e-15)
    assert rep.noise_temperature == pytest.approx(0.455120, abs=1e-6)
    zero = qubit_dissipation(1.0, 0.0)
    assert (zero.energy_per_step, zero.heat_rate, zero.noise_temperature) == (0, 0, 0)
    half = qubit_dissipation(1.0, 0.5)
    assert half.infinite_temperature and math.isfinite(half.heat_rate)
    with pytest.raises(DomainError):
        qubit_dissipation(1.0, 0.51)


def test_oscillator_examples():
    rep = oscillator_dissipation(1.0, 4, math.exp(-1))
    assert rep.rate == 4.0
    assert rep.energy_per_step == pytest.approx(1 / (math.e - 1), rel=1e-14)
    # the six-digit figure 2.327908 is 4 * 0.581977; exact is 4/(e-1) = 2.3279068...
    assert rep.heat_rate == pytest.approx(2.327908, abs=2e-6)
    assert rep.heat_rate == pytest.approx(4 / (math.e - 1), rel=1e-14)
    assert rep.noise_temperature == pytest.approx(1.0, rel=1e-15)
    rep = oscillator_dissipation(1.0, 2, 0.1)
    assert rep.energy_per_step == pytest.approx(1 / 9, rel=1e-14)
    assert rep.heat_rate == pytest.approx(2 / 9, rel=1e-14)
    zero = oscillator_dissipation(1.0, 2, 0.0)
    assert (zero.energy_per_step, zero.heat_rate, zero.noise_temperature) == (0, 0, 0)
    with pytest.raises(DomainError):
        oscillator_dissipation(1.0, 2, 1.0)


def test_powerlaw_examples():
    for n in (100, 1000, 12345):
        rep = powerlaw_dissipation_asymptotic(1, 1, n, 1.0, 0.5)
        assert rep.energy_per_step == pytest.approx(1.0 / n, rel=1e-14)
    tiny = [powerlaw_dissipation_asymptotic(2, 1, 100, 1.0, e).energy_per_step
            for e in (1e-3, 1e-6, 1e-9)]
    assert tiny[0] > tiny[1] > tiny[2] > 0
    with pytest.raises(DomainError):
        powerlaw_dissipation_asymptotic(2, 1, 99, 1.0, 0.1)
    with pytest.raises(DomainError):
        powerlaw_dissipation_asymptotic(0.5, 1, 1000, 1.0, 0.1)


def test_powerlaw_regression_constant():
    alpha, a, n, eps = 3.0, 2.0, 1e4, 0.1
    independent = (alpha + 1) * eps / n * (eps / ((1 - eps) * a * math.gamma(alpha + 1))) ** (1 / (alpha + 1))
    assert independent == pytest.approx(POWERLAW_E_3_2_1E4, rel=1e-14)
    rep = powerlaw_dissipation_asymptotic(alpha, a, int(n), 1.0, eps)
    assert rep.energy_per_step == pytest.approx(POWERLAW_E_3_2_1E4, rel=1e-13)
    # E = (alpha+1) kT eps
    assert rep.energy_per_step == pytest.approx((alpha + 1) * rep.noise_temperature * eps, rel=1e-14)


def test_pipeline_examples():
    for eps in (1e-6, 0.1, 0.3, 0.49):
        closed = qubit_dissipation(1.0, eps)
        pipe = dissipation_pipeline(TwoLevel(1.0), closed.rate, eps)
        assert pipe.heat_rate == pytest.approx(closed.heat_rate, rel=1e-10)
        assert pipe.noise_temperature == pytest.approx(closed.noise_temperature, rel=1e-10)
        assert pipe.h_bar == pytest.approx(binary_entropy(eps), rel=1e-10)
    zero = dissipation_pipeline(Harmonic(1.0), 1.0, 0.0)
    assert (zero.energy_per_step, zero.heat_rate) == (0, 0)
    with pytest.raises(DomainError):
        dissipation_pipeline(TwoLevel(1.0), 1.0, 0.5)


def test_pipeline_powerlaw_close_to_continuum():
    spec = PowerLawDOS(3.0, 2.0, 10 ** 4, 1.0)
    pipe = dissipation_pipeline(spec, 1.0, 0.1)
    closed = powerlaw_dissipation_asymptotic(3.0, 2.0, 10 ** 4, 1.0, 0.1)
    # the continuum law drops the ground-level width; a few percent apart
    assert abs(pipe.energy_per_step / closed.energy_per_step - 1) < 0.1


@pytest.mark.parametrize("eps", [1e-6, 1e-3, 0.1, math.exp(-1), 0.5, 0.9])
def test_oscillator_pipeline(eps):
    closed = oscillator_dissipation(1.0, 4, eps)
    pipe = dissipation_pipeline(oscillator_spectrum_for(closed.rate, 4), closed.rate, eps)
    assert pipe.heat_rate == pytest.approx(closed.heat_rate, rel=1e-10)
    assert pipe.h_bar == pytest.approx(closed.h_bar, rel=1e-10)


def test_environment_heat_examples():
    assert environment_heat(math.log(2), 1.0, 0.0).heat == pytest.approx(math.log(2))
    assert environment_heat(0.0, 5.0, 0.0).heat == 0.0
    rep = qubit_dissipation(1.0, 0.1)
    hot = with_environment(rep, 0.4)
    assert hot.environment_heat_per_step == pytest.approx(0.130033, abs=1e-6)
    assert hot.environment_feasible is True
    assert with_environment(rep, 0.2).environment_feasible is False
    with pytest.raises(DomainError):
        environment_heat(-1.0, 1.0, 0.0)


@settings(max_examples=100, deadline=None)
@given(st.floats(1e-3, 1e3), st.floats(1e-6, 0.49))
def test_quadratic_law(e1, eps):
    r = qubit_dissipation(e1, eps)
    r2 = qubit_dissipation(2 * e1, eps)
    assert r2.heat_rate == pytest.approx(4 * r.heat_rate, rel=1e-12)
    o = oscillator_dissipation(e1, 5, eps)
    o2 = oscillator_dissipation(2 * e1, 5, eps)
    assert o2.heat_rate == pytest.approx(4 * o.heat_rate, rel=1e-12)
    p = powerlaw_dissipation_asymptotic(2.5, 0.7, 500, e1, eps)
    p2 = powerlaw_dissipation_asymptotic(2.5, 0.7, 500, 2 * e1, eps)
    assert p2.heat_rate == pytest.approx(4 * p.heat_rate, rel=1e-12)


@settings(max_examples=100, deadline=None)
@given(st.floats(1e-6, 0.32), st.floats(1.001, 1.5))
def test_monotone_in_eps_and_rate(eps, f):
    for fn in (lambda e, s: qubit_dissipation(s, e),
               lambda e, s: oscillator_dissipation(s, 3, e),
               lambda e, s: powerlaw_dissipation_asymptotic(2.0, 1.0, 200, s, e)):
        base = fn(eps, 1.0)
        assert fn(eps * f, 1.0).heat_rate > base.heat_rate
        assert fn(eps * f, 1.0).energy_per_step > base.energy_per_step
        assert fn(eps, f).heat_rate > base.heat_rate


@settings(max_examples=200, deadline=None)
@given(st.floats(allow_nan=False, allow_infinity=False))
def test_fmt_round_trips(x):
    assert float(fmt(x)) == x


def test_csv_row_shape_and_si_kt():
    rep = qubit_dissipation(SI.k, 0.1, SI)
    row = rep.csv_row(SI)
    assert len(row) == len(CSV_COLUMNS)
    assert float(row[2]) == pytest.approx(SI.k / math.log(9), rel=1e-14)
    assert all(float(v) == float(fmt(float(v))) for v in row[:5])


def test_concurrent_evaluation_matches_sequential():
    specs = [PowerLawDOS(1 + i % 5, 0.5 + 0.1 * i, 100 + 37 * i, 1.0) for i in range(16)]
    seq = [dissipation_pipeline(s, 1.0, 0.1) for s in specs]
    with ThreadPoolExecutor(max_workers=8) as ex:
        par = list(ex.map(lambda s: dissipation_pipeline(s, 1.0, 0.1), specs))
    assert seq == par
