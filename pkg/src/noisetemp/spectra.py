"""Energy-spectrum models and their canonical-equilibrium functions.

All entropies are in nats. Temperatures enter only through ``k*T``, so the
same code serves natural units (h = k = 1) and SI.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy import integrate

from . import kernels
from .errors import AccuracyError, DivergenceError, DomainError, ValidationError

SUM_TOLERANCE = 1e-14
MAX_TERMS = 1 << 31


@dataclass(frozen=True)
class PhysicalConstants:
    h: float = 1.0
    k: float = 1.0
    name: str = "natural"

    def __post_init__(self):
        if not (self.h > 0 and self.k > 0):
            raise ValidationError("physical constants must be positive")


NATURAL = PhysicalConstants()
SI = PhysicalConstants(h=6.62607015e-34, k=1.380649e-23, name="si")


def constants_for(unit_system: str) -> PhysicalConstants:
    try:
        return {"natural": NATURAL, "si": SI}[unit_system]
    except KeyError:
        raise ValidationError(f"unit_system must be 'natural' or 'si', got {unit_system!r}") from None


@dataclass(frozen=True)
class TwoLevel:
    e1: float

    def __post_init__(self):
        _positive("e1", self.e1)


@dataclass(frozen=True)
class Harmonic:
    delta_e: float

    def __post_init__(self):
        _positive("delta_e", self.delta_e)


@dataclass(frozen=True)
class PowerLawDOS:
    """Levels ``E_n = n*e_max/n_levels`` with degeneracy ``a*n**alpha`` for n >= 1.

    The sum over levels runs to infinity; ``n_levels`` only fixes the spacing.
    """
    alpha: float
    a: float
    n_levels: int
    e_max: float

    def __post_init__(self):
        if not self.alpha >= 1:
            raise ValidationError(f"alpha must be >= 1, got {self.alpha!r}")
        _positive("a", self.a)
        if int(self.n_levels) != self.n_levels or self.n_levels < 1:
            raise ValidationError(f"n_levels must be a positive integer, got {self.n_levels!r}")
        _positive("e_max", self.e_max)

    @property
    def spacing(self) -> float:
        return self.e_max / self.n_levels


@dataclass(frozen=True)
class Tabulated:
    levels: tuple

    def __post_init__(self):
        levels = tuple((float(e), float(g)) for e, g in self.levels)
        object.__setattr__(self, "levels", levels)
        if len(levels) < 2:
            raise ValidationError("tabulated spectrum needs at least two levels")
        if levels[0] != (0.0, 1.0):
            raise ValidationError("first tabulated level must be (0, 1)")
        for (e0, _), (e1, g1) in zip(levels, levels[1:]):
            if not e1 > e0:
                raise ValidationError("tabulated energies must be strictly increasing")
            if not g1 >= 1:
                raise ValidationError("tabulated degeneracies must be >= 1")


EnergySpectrum = Union[TwoLevel, Harmonic, PowerLawDOS, Tabulated]


def _positive(name, value):
    if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
        raise ValidationError(f"{name} must be a positive finite number, got {value!r}")


def spectrum_from_dict(d: dict) -> EnergySpectrum:
    """Build a spectrum from its structured-text description."""
    if not isinstance(d, dict) or "kind" not in d:
        raise ValidationError("spectrum needs a 'kind' field")
    kind = d["kind"]
    fields = {k: v for k, v in d.items() if k != "kind"}
    cls = {"two_level": TwoLevel, "harmonic": Harmonic,
           "power_law": PowerLawDOS, "tabulated": Tabulated}.get(kind)
    if cls is None:
        raise ValidationError(f"unknown spectrum kind {kind!r}")
    try:
        if cls is Tabulated:
            return Tabulated(tuple(tuple(x) for x in fields["levels"]))
        return cls(**fields)
    except TypeError as exc:
        raise ValidationError(f"bad fields for {kind} spectrum: {exc}") from None
    except KeyError as exc:
        raise ValidationError(f"missing field {exc.args[0]} for {kind} spectrum") from None


def spectrum_to_dict(spec: EnergySpectrum) -> dict:
    if isinstance(spec, TwoLevel):
        return {"kind": "two_level", "e1": spec.e1}
    if isinstance(spec, Harmonic):
        return {"kind": "harmonic", "delta_e": spec.delta_e}
    if isinstance(spec, PowerLawDOS):
        return {"kind": "power_law", "alpha": spec.alpha, "a": spec.a,
                "n_levels": spec.n_levels, "e_max": spec.e_max}
    return {"kind": "tabulated", "levels": [list(x) for x in spec.levels]}


def first_excited(spec: EnergySpectrum):
    """``(energy, degeneracy)`` of the lowest excited level."""
    if isinstance(spec, TwoLevel):
        return spec.e1, 1.0
    if isinstance(spec, Harmonic):
        return spec.delta_e, 1.0
    if isinstance(spec, PowerLawDOS):
        return spec.spacing, spec.a
    return spec.levels[1]


def energy_scale(spec: EnergySpectrum) -> float:
    return first_excited(spec)[0]


def entropy_supremum(spec: EnergySpectrum) -> float:
    if isinstance(spec, TwoLevel):
        return math.log(2.0)
    if isinstance(spec, Tabulated):
        return math.log(math.fsum(g for _, g in spec.levels))
    return math.inf


def energy_supremum(spec: EnergySpectrum) -> float:
    if isinstance(spec, TwoLevel):
        return spec.e1 / 2
    if isinstance(spec, Tabulated):
        w = [g for _, g in spec.levels]
        return math.fsum(e * g for e, g in spec.levels) / math.fsum(w)
    return math.inf


def error_supremum(spec: EnergySpectrum) -> float:
    if isinstance(spec, TwoLevel):
        return 0.5
    if isinstance(spec, Tabulated):
        return 1.0 - 1.0 / math.fsum(g for _, g in spec.levels)
    return 1.0


# --- moment evaluation -----------------------------------------------------

@dataclass(frozen=True)
class _Moments:
    log_excited: float   # ln of the excited part S of Z = 1 + S
    mean: float
    var: float

    @property
    def log_partition(self):
        s = self.log_excited
        if s < 0:
            return math.log1p(math.exp(s))
        return s + math.log1p(math.exp(-s))

    @property
    def error_prob(self):
        # S/(1+S) = 1/(1+exp(-ln S))
        s = self.log_excited
        if s < 0:
            es = math.exp(s)
            return es / (1.0 + es)
        return 1.0 / (1.0 + math.exp(-s))


def power_law_terms(alpha, a, spacing, beta, tol=SUM_TOLERANCE):
    """Number of terms needed so the analytic tail bound of the first three
    moment sums of ``a*n**alpha*exp(-beta*spacing*n)`` is below ``tol`` of
    the largest retained term.

    Tail bound: for ``b*M >= 2*(s-1)`` the sum beyond M is at most
    ``a*Gamma(s, b*M)/b**s <= 2*a*(b*M)**(s-1)*exp(-b*M)/b**s``.
    """
    b = beta * spacing
    if not b > 0:
        raise DivergenceError("power-law partition sum diverges at infinite temperature")
    log_a = math.log(a)

    def excess(m):
        worst = -math.inf
        for k in (0, 1, 2):
            s = alpha + k + 1
            x = b * m
            log_tail = log_a - s * math.log(b) + math.log(2.0) + (s - 1) * math.log(x) - x
            peak = max(1.0, (alpha + k) / b)
            log_peak = max(log_a + (alpha + k) * math.log(n) - b * n
                           for n in (max(1, math.floor(peak)), math.ceil(peak)))
            worst = max(worst, log_tail - log_peak - math.log(tol))
        return worst

    hi = max(1, math.ceil(2 * (alpha + 2) / b))
    while excess(hi) > 0:
        hi *= 2
        if hi > MAX_TERMS:
            raise DivergenceError(
                "power-law partition sum needs more than "
                f"{MAX_TERMS} terms at beta*spacing={b!r}")
    lo = max(1, math.ceil(2 * (alpha + 2) / b))
    if lo >= hi or excess(lo) <= 0:
        return lo
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if excess(mid) <= 0:
            hi = mid
        else:
            lo = mid
    return hi


def _moments(spec: EnergySpectrum, beta: float, force_sum: bool = False) -> _Moments:
    """Moments at inverse energy ``beta = 1/(k T)``; ``beta`` may be 0."""
    if isinstance(spec, TwoLevel) and not force_sum:
        x = beta * spec.e1
        eps = 1.0 / (1.0 + math.exp(x)) if x < 700 else math.exp(-x)
        return _Moments(-x, spec.e1 * eps, spec.e1 ** 2 * eps * (1.0 - eps))
    if isinstance(spec, Harmonic) and not force_sum:
        x = beta * spec.delta_e
        if x == 0:
            raise DivergenceError("oscillator partition sum diverges at infinite temperature")
        one_minus_q = -math.expm1(-x)
        q = math.exp(-x)
        return _Moments(-x - math.log(one_minus_q),
                        spec.delta_e * q / one_minus_q,
                        spec.delta_e ** 2 * q / one_minus_q ** 2)
    if isinstance(spec, Harmonic):
        n = power_law_terms(0.0, 1.0, spec.delta_e, beta)
        return _Moments(*kernels.power_law_moments(n, spec.delta_e, 0.0, 0.0, beta))
    if isinstance(spec, PowerLawDOS):
        n = power_law_terms(spec.alpha, spec.a, spec.spacing, beta)
        return _Moments(*kernels.power_law_moments(
            n, spec.spacing, float(spec.alpha), math.log(spec.a), beta))
    if isinstance(spec, TwoLevel):
        levels = ((spec.e1, 1.0),)
    else:
        levels = spec.levels[1:]
    energies = np.array([e for e, _ in levels], dtype=np.float64)
    logdeg = np.log(np.array([g for _, g in levels], dtype=np.float64))
    res = kernels.level_moments(energies, logdeg, beta)
    if not all(math.isfinite(v) for v in res):
        raise DivergenceError("tabulated partition sum overflowed")
    return _Moments(*res)


def _beta(T, consts):
    if not T >= 0:
        raise DomainError(f"temperature must be >= 0, got {T!r}")
    if T == 0:
        return math.inf
    return 0.0 if math.isinf(T) else 1.0 / (consts.k * T)


# --- public operations -----------------------------------------------------

@dataclass(frozen=True)
class ThermalPoint:
    temperature: float
    log_partition: float
    energy: float
    entropy: float
    error_prob: float


def thermal_point(spec: EnergySpectrum, T: float, consts: PhysicalConstants = NATURAL,
                  force_sum: bool = False) -> ThermalPoint:
    beta = _beta(T, consts)
    if T == 0:
        return ThermalPoint(0.0, 0.0, 0.0, 0.0, 0.0)
    m = _moments(spec, beta, force_sum)
    ln_z = m.log_partition
    return ThermalPoint(T, ln_z, m.mean, ln_z + beta * m.mean, m.error_prob)


def log_partition(spec, T, consts=NATURAL, force_sum=False):
    """``ln Z`` at temperature ``T``."""
    return thermal_point(spec, T, consts, force_sum).log_partition


def thermal_energy(spec, T, consts=NATURAL, force_sum=False):
    return thermal_point(spec, T, consts, force_sum).energy


def thermal_entropy(spec, T, consts=NATURAL, force_sum=False):
    """Equilibrium entropy from ``H = ln Z + E/(kT)``."""
    return thermal_point(spec, T, consts, force_sum).entropy


def energy_variance(spec, T, consts=NATURAL):
    """``<E^2> - <E>^2``; equals ``k T^2 dE/dT``."""
    beta = _beta(T, consts)
    if T == 0:
        return 0.0
    return _moments(spec, beta).var


ERROR_CONVENTIONS = ("partition", "orthogonal")


def error_probability(spec, T, consts=NATURAL, convention="partition"):
    """Probability of a non-ground state.

    ``convention="partition"`` gives ``1 - 1/Z``. ``convention="orthogonal"``
    is the oscillator-only form ``exp(-delta_e/kT)``; for the oscillator the
    two agree identically since ``1/Z = 1 - exp(-delta_e/kT)``.
    """
    if convention == "partition":
        return thermal_point(spec, T, consts).error_prob
    if convention != "orthogonal":
        raise DomainError(f"unknown error convention {convention!r}")
    if not isinstance(spec, Harmonic):
        raise DomainError("the 'orthogonal' error convention applies to Harmonic spectra only")
    beta = _beta(T, consts)
    if T == 0:
        return 0.0
    return math.exp(-beta * spec.delta_e)


# --- quadrature oracle -----------------------------------------------------

LOW_T_CUTOFF = 60.0   # E1/kT at the quadrature's lower limit


def _low_t_entropy(spec, T, consts):
    # leading small-T term of H: g1*exp(-x)*(1+x), x = E1/kT
    e1, g1 = first_excited(spec)
    x = e1 / (consts.k * T)
    return g1 * math.exp(-x) * (1.0 + x)


def _entropy_integral(spec, t_lo, t_hi, consts):
    """``integral of (1/kT) dE/dT dT`` from t_lo to t_hi (both > 0).

    In ``u = ln T`` the integrand is ``Var(E)/(kT)^2``, which is smooth.
    """
    if t_lo == t_hi:
        return 0.0

    def f(u):
        t = math.exp(u)
        return energy_variance(spec, t, consts) / (consts.k * t) ** 2

    u0, u1 = math.log(t_lo), math.log(t_hi)
    sign = 1.0
    if u0 > u1:
        u0, u1, sign = u1, u0, -1.0
    # unit-width panels in ln T keep the adaptive rule away from its limit
    edges = np.linspace(u0, u1, max(2, math.ceil(u1 - u0) + 1))
    total, err = 0.0, 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        val, e = integrate.quad(f, a, b, epsabs=1e-14, epsrel=1e-12, limit=200)
        total += val
        err += e
    if err > 1e-10:
        raise AccuracyError(f"entropy quadrature error estimate {err!r} exceeds 1e-10")
    return sign * total


def _cutoff_temperature(spec, consts):
    return energy_scale(spec) / (consts.k * LOW_T_CUTOFF)


def entropy_by_quadrature(spec, T, consts=NATURAL):
    """Entropy by integrating ``(1/kT') dE/dT'`` from 0 to ``T``.

    Independent of ``thermal_entropy``: it uses only the fluctuation
    identity ``dE/dT = Var(E)/(k T^2)``. Below ``E1/(60 k)`` the integral is
    replaced by its leading small-T asymptote.
    """
    _beta(T, consts)
    if T == 0:
        return 0.0
    t_lo = _cutoff_temperature(spec, consts)
    if T <= t_lo:
        return _low_t_entropy(spec, T, consts)
    return _low_t_entropy(spec, t_lo, consts) + _entropy_integral(spec, t_lo, T, consts)
