"""Effective noise temperature and the generalized Clausius checker."""
from __future__ import annotations

import math
from dataclasses import dataclass

from scipy import optimize

from .errors import DomainError, SolverError, UnattainableEntropyError
from .spectra import (NATURAL, EnergySpectrum, PhysicalConstants, _cutoff_temperature,
                      _entropy_integral, _low_t_entropy, energy_scale, energy_supremum,
                      entropy_supremum, thermal_energy, thermal_entropy)

RTOL = 1e-14      # brentq's floor is 4*machine eps
MAX_ITER = 200
MAX_EXPANSIONS = 2000


def solve_monotone(f, target, t_guess, t_max=math.inf):
    """Temperature ``T > 0`` with ``f(T) = target`` for increasing ``f``.

    Brackets by doubling/halving from ``t_guess`` (a fixed schedule, so the
    result is deterministic), then runs Brent's bisection/secant hybrid.
    """
    lo = hi = t_guess
    for _ in range(MAX_EXPANSIONS):
        if f(hi) >= target:
            break
        lo, hi = hi, hi * 2.0
        if hi > t_max:
            raise SolverError(f"no bracket for target {target!r} below T={t_max!r}")
    else:
        raise SolverError(f"upper bracket not found for target {target!r}")
    for _ in range(MAX_EXPANSIONS):
        if lo < hi and f(lo) < target:
            break
        hi, lo = lo, lo * 0.5
        if lo == 0.0:
            raise SolverError(f"lower bracket not found for target {target!r}")
    else:
        raise SolverError(f"lower bracket not found for target {target!r}")
    try:
        root, info = optimize.brentq(lambda t: f(t) - target, lo, hi, xtol=1e-300,
                                     rtol=RTOL, maxiter=MAX_ITER, full_output=True)
    except RuntimeError as exc:
        raise SolverError(str(exc)) from None
    if not info.converged:
        raise SolverError(f"root finding did not converge: {info.flag}")
    return root


@dataclass(frozen=True)
class EffectiveTemperature:
    temperature: float
    achieved_entropy: float
    residual: float


def effective_temperature(spec: EnergySpectrum, target_entropy: float,
                          consts: PhysicalConstants = NATURAL) -> EffectiveTemperature:
    """Temperature at which the equilibrium entropy equals ``target_entropy``."""
    if not target_entropy >= 0:
        raise DomainError(f"target entropy must be >= 0, got {target_entropy!r}")
    if target_entropy == 0:
        return EffectiveTemperature(0.0, 0.0, 0.0)
    sup = entropy_supremum(spec)
    if target_entropy >= sup:
        raise UnattainableEntropyError(target_entropy, sup)

    def f(t):
        return thermal_entropy(spec, t, consts)

    T = solve_monotone(f, target_entropy, energy_scale(spec) / consts.k)
    h = f(T)
    return EffectiveTemperature(T, h, h - target_entropy)


def temperature_for_energy(spec: EnergySpectrum, target_energy: float,
                           consts: PhysicalConstants = NATURAL) -> float:
    if not target_energy >= 0:
        raise DomainError(f"target energy must be >= 0, got {target_energy!r}")
    if target_energy == 0:
        return 0.0
    sup = energy_supremum(spec)
    if target_energy >= sup:
        raise DomainError(f"energy {target_energy!r} is unattainable; supremum is {sup!r}")
    return solve_monotone(lambda t: thermal_energy(spec, t, consts), target_energy,
                          energy_scale(spec) / consts.k)


@dataclass(frozen=True)
class ClausiusTrial:
    system1: tuple
    system2: tuple
    delta_e: float
    delta_e_prime: float
    t1_after: float
    t2_after: float
    dh1: float
    dh2: float
    dh_total: float


def clausius_transfer(sys1, sys2, delta_e, delta_e_prime,
                      consts: PhysicalConstants = NATURAL) -> ClausiusTrial:
    """Remove ``delta_e`` of thermal energy from system 1, add ``delta_e_prime``
    to system 2, and return the resulting entropy changes.

    Each system is a ``(spectrum, temperature)`` pair; the spectra are the
    same before and after. For ``T1 <= T2`` the total change is never
    positive, which is what makes such a transfer impossible.
    """
    (spec1, t1), (spec2, t2) = sys1, sys2
    if not delta_e > 0:
        raise DomainError(f"delta_e must be > 0, got {delta_e!r}")
    if not delta_e_prime <= delta_e:
        raise DomainError("delta_e_prime must not exceed delta_e")
    if not delta_e_prime >= 0:
        raise DomainError(f"delta_e_prime must be >= 0, got {delta_e_prime!r}")
    e1 = thermal_energy(spec1, t1, consts)
    if delta_e > e1:
        raise DomainError(f"delta_e={delta_e!r} exceeds the thermal energy {e1!r} of system 1")
    e2 = thermal_energy(spec2, t2, consts)
    t1_after = temperature_for_energy(spec1, e1 - delta_e, consts)
    t2_after = temperature_for_energy(spec2, e2 + delta_e_prime, consts) if delta_e_prime else t2
    dh1 = thermal_entropy(spec1, t1_after, consts) - thermal_entropy(spec1, t1, consts)
    dh2 = thermal_entropy(spec2, t2_after, consts) - thermal_entropy(spec2, t2, consts)
    return ClausiusTrial(sys1, sys2, delta_e, delta_e_prime, t1_after, t2_after,
                         dh1, dh2, dh1 + dh2)


def entropy_change_by_quadrature(spec: EnergySpectrum, t_from: float, t_to: float,
                                 consts: PhysicalConstants = NATURAL) -> float:
    """``integral of dE/(T dT) dT / k`` between two temperatures."""
    if not (t_from >= 0 and t_to >= 0):
        raise DomainError("temperatures must be >= 0")
    if t_from == t_to:
        return 0.0
    cut = _cutoff_temperature(spec, consts)

    def from_zero(t):
        if t == 0:
            return 0.0
        if t <= cut:
            return _low_t_entropy(spec, t, consts)
        return _low_t_entropy(spec, cut, consts) + _entropy_integral(spec, cut, t, consts)

    if min(t_from, t_to) <= cut:
        return from_zero(t_to) - from_zero(t_from)
    return _entropy_integral(spec, t_from, t_to, consts)
