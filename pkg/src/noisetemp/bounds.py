"""Speed limits and lower bounds on dissipated energy and heat production.

``R`` is the achieved rate of computation at the speed limit. Running below
the limit means substituting the actual rate; every heat rate scales as
``R * E(T)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Optional

from scipy.special import gammaln

from .errors import DomainError
from .qstate import binary_entropy
from .spectra import (NATURAL, EnergySpectrum, Harmonic, PhysicalConstants, error_supremum,
                      _moments, energy_scale, thermal_point)
from .thermo import solve_monotone

CSV_COLUMNS = ("rate", "epsilon", "kT", "energy_per_step", "heat_rate", "q_env", "t_env", "model")


def fmt(x: Optional[float]) -> str:
    """17 significant digits, round-trips every double."""
    if x is None:
        return ""
    return format(float(x), ".17g")


@dataclass(frozen=True)
class RateReport:
    min_step_time: float
    rate: float
    n_states: float
    mean_energy: float


def rate_bounds(mean_energy, n_states, consts: PhysicalConstants = NATURAL) -> RateReport:
    """Minimum step time between orthogonal states and the matching rate.

    ``n_states=2`` gives ``tau = h/4E``; a longer cycle of ``N`` states
    gives ``tau = (N-1)/N * h/2E``. ``n_states=math.inf`` is the limit ``h/2E``.
    """
    if not mean_energy > 0:
        raise DomainError(f"mean energy must be > 0, got {mean_energy!r}")
    if not n_states >= 2:
        raise DomainError(f"n_states must be >= 2, got {n_states!r}")
    if n_states == 2:
        tau = consts.h / (4 * mean_energy)
    elif math.isinf(n_states):
        tau = consts.h / (2 * mean_energy)
    else:
        tau = (n_states - 1) / n_states * consts.h / (2 * mean_energy)
    return RateReport(tau, 1.0 / tau, n_states, mean_energy)


@dataclass(frozen=True)
class DissipationReport:
    model: str
    rate: float
    epsilon: float
    noise_temperature: float
    energy_per_step: float
    heat_rate: float
    h_bar: float
    environment_temperature: Optional[float] = None
    environment_heat_per_step: Optional[float] = None
    environment_feasible: Optional[bool] = None

    @property
    def infinite_temperature(self):
        return math.isinf(self.noise_temperature)

    def csv_row(self, consts: PhysicalConstants = NATURAL):
        return [fmt(self.rate), fmt(self.epsilon), fmt(consts.k * self.noise_temperature),
                fmt(self.energy_per_step), fmt(self.heat_rate),
                fmt(self.environment_heat_per_step), fmt(self.environment_temperature),
                self.model]


def _check_eps(epsilon, upper, closed):
    ok = 0 <= epsilon <= upper if closed else 0 <= epsilon < upper
    if not ok:
        bracket = "]" if closed else ")"
        raise DomainError(f"epsilon must lie in [0, {upper}{bracket}, got {epsilon!r}")


def qubit_dissipation(e1, epsilon, consts: PhysicalConstants = NATURAL) -> DissipationReport:
    """Qubit flipping between ``(|E0> +/- |E1>)/sqrt 2`` with error probability epsilon."""
    if not e1 > 0:
        raise DomainError(f"e1 must be > 0, got {e1!r}")
    _check_eps(epsilon, 0.5, closed=True)
    rate = 2 * e1 / consts.h
    energy = consts.h * rate * epsilon / 2
    heat = consts.h * rate ** 2 * epsilon / 2
    if epsilon == 0:
        T = 0.0
    elif epsilon == 0.5:
        T = math.inf
    else:
        T = e1 / (consts.k * math.log((1 - epsilon) / epsilon))
    return DissipationReport("qubit", rate, epsilon, T, energy, heat, binary_entropy(epsilon))


def _oscillator_entropy(epsilon):
    # H = ln Z + E/kT with Z = 1/(1-eps), E/kT = (eps/(1-eps)) * ln(1/eps)
    if epsilon == 0:
        return 0.0
    return -math.log1p(-epsilon) - epsilon / (1 - epsilon) * math.log(epsilon)


def oscillator_dissipation(delta_e, n_states, epsilon,
                           consts: PhysicalConstants = NATURAL) -> DissipationReport:
    """Oscillator cycling through ``n_states`` orthogonal states;
    ``epsilon = exp(-delta_e/kT)``."""
    if not delta_e > 0:
        raise DomainError(f"delta_e must be > 0, got {delta_e!r}")
    if not n_states >= 2:
        raise DomainError(f"n_states must be >= 2, got {n_states!r}")
    _check_eps(epsilon, 1.0, closed=False)
    rate = n_states * delta_e / consts.h
    odds = epsilon / (1 - epsilon)
    energy = odds * consts.h * rate / n_states
    heat = odds * consts.h * rate ** 2 / n_states
    T = 0.0 if epsilon == 0 else delta_e / (consts.k * math.log(1 / epsilon))
    return DissipationReport("oscillator", rate, epsilon, T, energy, heat,
                             _oscillator_entropy(epsilon))


def powerlaw_dissipation_asymptotic(alpha, a, n_states, rate, epsilon,
                                    consts: PhysicalConstants = NATURAL) -> DissipationReport:
    """Continuum (``N >> 1``) law for degeneracy ``a*x**alpha`` and top level ``E_N = hR``:
    ``E(T) = ((alpha+1) eps / N) * [eps/((1-eps) a Gamma(alpha+1))]**(1/(alpha+1)) * hR``.
    """
    if not alpha >= 1:
        raise DomainError(f"alpha must be >= 1, got {alpha!r}")
    if not a > 0:
        raise DomainError(f"a must be > 0, got {a!r}")
    if not n_states >= 100:
        raise DomainError(f"the continuum law needs n_states >= 100, got {n_states!r}")
    if not rate > 0:
        raise DomainError(f"rate must be > 0, got {rate!r}")
    _check_eps(epsilon, 1.0, closed=False)
    hr = consts.h * rate
    if epsilon == 0:
        return DissipationReport("power_law", rate, 0.0, 0.0, 0.0, 0.0, 0.0)
    s = alpha + 1
    # [eps/((1-eps) a Gamma(alpha+1))]**(1/(alpha+1)), in logs for large alpha
    scaled_t = math.exp((math.log(epsilon) - math.log1p(-epsilon) - math.log(a)
                         - gammaln(s)) / s)
    kT = scaled_t * hr / n_states
    energy = s * epsilon / n_states * scaled_t * hr
    h_bar = -math.log1p(-epsilon) + s * epsilon
    return DissipationReport("power_law", rate, epsilon, kT / consts.k, energy,
                             rate * energy, h_bar)


def dissipation_pipeline(spec: EnergySpectrum, rate, epsilon,
                         consts: PhysicalConstants = NATURAL) -> DissipationReport:
    """Numeric path: solve ``1 - 1/Z(T) = epsilon`` for T, then ``Q = R*E(T)``."""
    if not rate > 0:
        raise DomainError(f"rate must be > 0, got {rate!r}")
    sup = error_supremum(spec)
    if not 0 <= epsilon < sup:
        raise DomainError(f"epsilon={epsilon!r} is unattainable; supremum is {sup!r}")
    if epsilon == 0:
        return DissipationReport("pipeline", rate, 0.0, 0.0, 0.0, 0.0, 0.0)
    # ln(eps/(1-eps)) = ln S is increasing in T and keeps precision at small eps
    target = math.log(epsilon) - math.log1p(-epsilon)

    def log_odds(t):
        return _moments(spec, 1.0 / (consts.k * t)).log_excited

    T = solve_monotone(log_odds, target, energy_scale(spec) / consts.k)
    p = thermal_point(spec, T, consts)
    return DissipationReport("pipeline", rate, epsilon, T, p.energy, rate * p.energy, p.entropy)


@dataclass(frozen=True)
class EnvironmentHeat:
    heat: float
    feasible: bool


def environment_heat(h_bar, t_env, noise_energy, consts: PhysicalConstants = NATURAL):
    """Reversible heat ``Hbar * k * T_e`` handed to a sink at ``T_e`` per step.

    ``feasible`` is true when ``T_e >= E(T)/(k Hbar)``, i.e. when that heat is at
    least the noise energy removed from the system.
    """
    if not h_bar >= 0:
        raise DomainError(f"h_bar must be >= 0, got {h_bar!r}")
    if not t_env >= 0:
        raise DomainError(f"t_env must be >= 0, got {t_env!r}")
    heat = h_bar * consts.k * t_env
    return EnvironmentHeat(heat, heat >= noise_energy)


def with_environment(report: DissipationReport, t_env,
                     consts: PhysicalConstants = NATURAL) -> DissipationReport:
    env = environment_heat(report.h_bar, t_env, report.energy_per_step, consts)
    return replace(report, environment_temperature=t_env,
                   environment_heat_per_step=env.heat, environment_feasible=env.feasible)


def oscillator_spectrum_for(rate, n_states, consts=NATURAL):
    """Spectrum whose cycle of ``n_states`` orthogonal states runs at ``rate``."""
    return Harmonic(consts.h * rate / n_states)
