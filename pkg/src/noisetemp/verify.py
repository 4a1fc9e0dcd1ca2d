"""Cross-check suite: every closed form against an independent numeric route.

Each check returns its worst deviation and the tolerance it is held to. The
checks are unit-agnostic: in SI every energy is scaled by ``k`` (so that a
temperature of 1 K matches natural-unit ``kT = 1``) and results compared as
dimensionless ratios.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from . import bounds
from .qstate import (binary_entropy, gram_matrix, information_report, ml_sequence_harmonic,
                     qubit_noisy_pair)
from .kernels import hermitian_eigvals
from .sampling import random_clausius_trial, random_density_matrix, random_ensemble, random_spectrum
from .spectra import (NATURAL, Harmonic, PowerLawDOS, TwoLevel, entropy_by_quadrature,
                      error_probability, energy_scale, thermal_point)
from .thermo import effective_temperature, entropy_change_by_quadrature

PERTURBATION = 1e-6
SEED = 20240607


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    worst: float
    tolerance: float
    detail: str = ""


def _rel(a, b):
    if a == b:
        return 0.0
    return abs(a - b) / max(abs(a), abs(b))


def _perturbed(fn, factor):
    def wrapped(*args, **kwargs):
        rep = fn(*args, **kwargs)
        return replace(rep, energy_per_step=rep.energy_per_step * factor,
                       heat_rate=rep.heat_rate * factor)
    return wrapped


class _Suite:
    def __init__(self, consts, perturb=None):
        self.consts = consts
        self.eu = consts.k           # one natural energy unit
        f = 1.0 + PERTURBATION
        self.qubit = _perturbed(bounds.qubit_dissipation, f) if perturb == "qubit" \
            else bounds.qubit_dissipation
        self.oscillator = _perturbed(bounds.oscillator_dissipation, f) if perturb == "oscillator" \
            else bounds.oscillator_dissipation
        self.power_law = _perturbed(bounds.powerlaw_dissipation_asymptotic, f) \
            if perturb == "power_law" else bounds.powerlaw_dissipation_asymptotic

    def rng(self, salt):
        return np.random.default_rng([SEED, salt])

    def spectrum_grid(self, salt, n=30):
        rng = self.rng(salt)
        out = []
        for _ in range(n):
            spec = random_spectrum(rng, self.eu)
            T = energy_scale(spec) / self.consts.k * 10.0 ** rng.uniform(-1.0, 1.0)
            out.append((spec, T))
        return out

    # spectra -------------------------------------------------------------
    def entropy_quadrature(self):
        c = self.consts
        return max(abs(thermal_point(s, T, c).entropy - entropy_by_quadrature(s, T, c))
                   for s, T in self.spectrum_grid(1)), 1e-8

    def truncated_sum(self):
        c = self.consts
        worst = 0.0
        for spec in (TwoLevel(self.eu), Harmonic(self.eu), TwoLevel(0.3 * self.eu),
                     Harmonic(7.0 * self.eu)):
            for kt in (0.05, 0.3, 1.0, 4.0, 25.0):
                T = kt * energy_scale(spec) / c.k
                a, b = thermal_point(spec, T, c), thermal_point(spec, T, c, force_sum=True)
                worst = max(worst, _rel(a.log_partition, b.log_partition),
                            _rel(a.energy, b.energy), _rel(a.entropy, b.entropy))
        return worst, 1e-10

    def thermal_identity(self):
        c = self.consts
        worst = 0.0
        for s, T in self.spectrum_grid(2):
            p = thermal_point(s, T, c)
            worst = max(worst, _rel(p.entropy, p.log_partition + p.energy / (c.k * T)))
        return worst, 1e-12

    def spectrum_monotonicity(self):
        c = self.consts
        worst = 0.0
        rng = self.rng(3)
        for _ in range(8):
            spec = random_spectrum(rng, self.eu)
            ts = np.sort(10.0 ** rng.uniform(-1.5, 1.5, size=25)) * energy_scale(spec) / c.k
            pts = [thermal_point(spec, t, c) for t in ts]
            for p, q in zip(pts, pts[1:]):
                worst = max(worst, p.entropy - q.entropy, p.energy - q.energy,
                            p.error_prob - q.error_prob)
        return max(worst, 0.0), 0.0

    def dimensional_scaling(self):
        c = self.consts
        worst = 0.0
        base = PowerLawDOS(4.0, 1.5, 50, 5.0 * self.eu)
        T = 0.2 * self.eu / c.k
        p0 = thermal_point(base, T, c)
        for scale in (1e-3, 0.37, 12.5):
            s = PowerLawDOS(4.0, 1.5, 50, 5.0 * self.eu * scale)
            p = thermal_point(s, T * scale, c)
            worst = max(worst, _rel(p.log_partition, p0.log_partition),
                        _rel(p.error_prob, p0.error_prob), _rel(p.entropy, p0.entropy),
                        _rel(p.energy, p0.energy * scale))
        return worst, 1e-12

    # thermo --------------------------------------------------------------
    def round_trip(self):
        c = self.consts
        worst = 0.0
        for s, T in self.spectrum_grid(4):
            h = thermal_point(s, T, c).entropy
            worst = max(worst, _rel(effective_temperature(s, h, c).temperature, T))
        return worst, 1e-9

    def clausius(self):
        rng = self.rng(5)
        return max(max(random_clausius_trial(rng, False, self.consts, self.eu).dh_total
                       for _ in range(200)), 0.0), 1e-12

    def clausius_reversed(self):
        rng = self.rng(6)
        return max(max(-random_clausius_trial(rng, True, self.consts, self.eu).dh_total
                       for _ in range(200)), 0.0), 1e-12

    def dh_quadrature(self):
        rng = self.rng(7)
        worst = 0.0
        for _ in range(20):
            tr = random_clausius_trial(rng, False, self.consts, self.eu)
            spec, t1 = tr.system1
            q = entropy_change_by_quadrature(spec, t1, tr.t1_after, self.consts)
            worst = max(worst, abs(q - tr.dh1))
        return worst, 1e-8

    # qstate --------------------------------------------------------------
    def eigen_2x2(self):
        rng = self.rng(8)
        worst = 0.0
        for _ in range(200):
            m = random_density_matrix(rng, 2).elements
            a, d, b = m[0, 0].real, m[1, 1].real, m[0, 1]
            disc = math.sqrt(((a - d) / 2) ** 2 + abs(b) ** 2)
            exact = np.array([(a + d) / 2 - disc, (a + d) / 2 + disc])
            worst = max(worst, float(np.max(np.abs(hermitian_eigvals(m) - exact))))
        return worst, 1e-12

    def entropy_defect(self):
        rng = self.rng(9)
        worst = 0.0
        for _ in range(100):
            rep = information_report(random_ensemble(rng), tol=math.inf)
            worst = max(worst, -rep.defect, rep.defect - rep.i0)
        return max(worst, 0.0), 1e-10

    def ml_orthonormality(self):
        worst = 0.0
        for n in (2, 3, 8, 64):
            g = gram_matrix(ml_sequence_harmonic(n, self.eu))
            worst = max(worst, float(np.max(np.abs(g - np.eye(n)))))
        return worst, 1e-12

    def ml_mean_energy(self):
        worst = 0.0
        for n in (2, 3, 8, 64):
            de = 0.7 * self.eu
            levels = np.arange(n) * de
            target = (n - 1) * de / 2
            for s in ml_sequence_harmonic(n, de):
                worst = max(worst, _rel(s.mean_energy(levels), target))
        return worst, 1e-12

    def qubit_pair_entropy(self):
        worst = 0.0
        for eps in (1e-6, 0.01, 0.1, 0.25, 0.4, 0.5):
            rep = information_report(qubit_noisy_pair(eps))
            worst = max(worst, abs(rep.h_bar - binary_entropy(eps)))
        return worst, 1e-12

    # bounds --------------------------------------------------------------
    def qubit_vs_pipeline(self):
        c = self.consts
        worst = 0.0
        e1 = self.eu
        for eps in np.geomspace(1e-6, 0.49, 25):
            cf = self.qubit(e1, float(eps), c)
            pl = bounds.dissipation_pipeline(TwoLevel(c.h * cf.rate / 2), cf.rate, float(eps), c)
            worst = max(worst, _rel(cf.energy_per_step, pl.energy_per_step),
                        _rel(cf.heat_rate, pl.heat_rate),
                        _rel(cf.noise_temperature, pl.noise_temperature))
        return worst, 1e-10

    def oscillator_vs_pipeline(self):
        c = self.consts
        worst = 0.0
        n = 4
        for eps in np.geomspace(1e-6, 0.9, 25):
            cf = self.oscillator(self.eu, n, float(eps), c)
            spec = bounds.oscillator_spectrum_for(cf.rate, n, c)
            pl = bounds.dissipation_pipeline(spec, cf.rate, float(eps), c)
            eps_orth = error_probability(spec, pl.noise_temperature, c, "orthogonal")
            worst = max(worst, _rel(cf.energy_per_step, pl.energy_per_step),
                        _rel(cf.heat_rate, pl.heat_rate), _rel(eps_orth, float(eps)))
        return worst, 1e-10

    def quadratic_law(self):
        c = self.consts
        eps = 0.1
        worst = 0.0
        for r in (0.5, 2.0, 9.0):
            rate = r * self.eu / c.h
            q1 = self.qubit(c.h * rate / 2, eps, c).heat_rate
            q2 = self.qubit(c.h * rate, eps, c).heat_rate
            o1 = self.oscillator(c.h * rate / 4, 4, eps, c).heat_rate
            o2 = self.oscillator(c.h * 2 * rate / 4, 4, eps, c).heat_rate
            p1 = self.power_law(3.0, 2.0, 10 ** 4, rate, eps, c).heat_rate
            p2 = self.power_law(3.0, 2.0, 10 ** 4, 2 * rate, eps, c).heat_rate
            worst = max(worst, _rel(q2, 4 * q1), _rel(o2, 4 * o1), _rel(p2, 4 * p1))
        return worst, 1e-12

    def dissipation_monotonicity(self):
        c = self.consts
        worst = -math.inf
        eps_grid = np.linspace(0.01, 0.45, 12)
        rates = np.geomspace(0.1, 10.0, 12) * self.eu / c.h
        for f in (lambda r, e: self.qubit(c.h * r / 2, e, c),
                  lambda r, e: self.oscillator(c.h * r / 4, 4, e, c),
                  lambda r, e: self.power_law(2.0, 1.0, 1000, r, e, c)):
            for r in rates:
                qs = [f(r, float(e)).heat_rate for e in eps_grid]
                worst = max(worst, max(a - b for a, b in zip(qs, qs[1:])))
            for e in eps_grid:
                qs = [f(float(r), float(e)).heat_rate for r in rates]
                worst = max(worst, max(a - b for a, b in zip(qs, qs[1:])))
        # strictly increasing: every consecutive difference must be negative
        return worst, 0.0, worst < 0

    def qubit_effective_temperature(self):
        c = self.consts
        worst = 0.0
        spec = TwoLevel(self.eu)
        for eps in np.geomspace(1e-6, 0.49, 25):
            T = effective_temperature(spec, binary_entropy(float(eps)), c).temperature
            worst = max(worst, _rel(error_probability(spec, T, c), float(eps)))
        return worst, 1e-9

    def powerlaw_continuum_convergence(self):
        c = self.consts
        rate = self.eu / c.h
        gaps = []
        for n in (10 ** 2, 10 ** 3, 10 ** 4, 10 ** 5):
            cf = self.power_law(3.0, 2.0, n, rate, 0.1, c)
            pl = bounds.dissipation_pipeline(PowerLawDOS(3.0, 2.0, n, c.h * rate), rate, 0.1, c)
            gaps.append(_rel(cf.energy_per_step, pl.energy_per_step))
        decreasing = all(b < a for a, b in zip(gaps, gaps[1:]))
        detail = "gaps " + ", ".join(f"{g:.6g}" for g in gaps)
        return gaps[-1], 0.02, decreasing and gaps[-1] <= 0.02, detail


CHECKS = (
    ("spectra.entropy_vs_quadrature", "entropy_quadrature"),
    ("spectra.truncated_sum_vs_closed_form", "truncated_sum"),
    ("spectra.thermal_point_identity", "thermal_identity"),
    ("spectra.monotone_in_temperature", "spectrum_monotonicity"),
    ("spectra.dimensional_scaling", "dimensional_scaling"),
    ("thermo.effective_temperature_round_trip", "round_trip"),
    ("thermo.clausius_forward", "clausius"),
    ("thermo.clausius_reversed_control", "clausius_reversed"),
    ("thermo.entropy_change_vs_quadrature", "dh_quadrature"),
    ("qstate.eigenvalues_vs_2x2_closed_form", "eigen_2x2"),
    ("qstate.entropy_defect_inequality", "entropy_defect"),
    ("qstate.ml_orthonormality", "ml_orthonormality"),
    ("qstate.ml_mean_energy", "ml_mean_energy"),
    ("qstate.qubit_pair_binary_entropy", "qubit_pair_entropy"),
    ("bounds.qubit_vs_pipeline", "qubit_vs_pipeline"),
    ("bounds.oscillator_vs_pipeline", "oscillator_vs_pipeline"),
    ("bounds.quadratic_heat_law", "quadratic_law"),
    ("bounds.monotone_in_rate_and_epsilon", "dissipation_monotonicity"),
    ("bounds.qubit_effective_temperature", "qubit_effective_temperature"),
    ("bounds.powerlaw_continuum_convergence", "powerlaw_continuum_convergence"),
)


def run_checks(consts=NATURAL, tolerance=None, perturb=None, only=None):
    """Run the suite; ``tolerance`` replaces every check's default tolerance."""
    suite = _Suite(consts, perturb)
    results = []
    for name, method in CHECKS:
        if only is not None and name not in only:
            continue
        out = getattr(suite, method)()
        worst, tol = out[0], out[1]
        detail = out[3] if len(out) > 3 else ""
        if tolerance is not None:
            tol = tolerance
            passed = worst <= tol if len(out) < 3 else out[2] and worst <= tol
        elif len(out) > 2:
            passed = out[2]
        else:
            passed = worst <= tol
        results.append(CheckResult(name, bool(passed), float(worst), float(tol), detail))
    return results
