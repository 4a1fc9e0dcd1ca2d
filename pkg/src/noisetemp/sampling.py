"""Seeded random spectra, states and Clausius trials for property checks."""
import math

import numpy as np

from .errors import DomainError
from .qstate import DensityMatrix, StateEnsemble
from .spectra import (NATURAL, Harmonic, PowerLawDOS, TwoLevel, energy_supremum,
                      thermal_energy)
from .thermo import clausius_transfer

MIN_THERMAL_ENERGY = 1e-100   # below this a trial's transfer is pure underflow


def random_spectrum(rng, energy_unit=1.0, kinds=("two_level", "harmonic", "power_law")):
    """Spectrum with a log-uniform energy scale in ``[1e-2, 1e2] * energy_unit``.

    For the power-law model the scale is the level spacing, with 10-100
    levels below ``e_max``, ``alpha`` in [1, 10] and ``a`` in [0.5, 2].
    """
    kind = kinds[int(rng.integers(len(kinds)))]
    scale = energy_unit * 10.0 ** rng.uniform(-2.0, 2.0)
    if kind == "two_level":
        return TwoLevel(scale)
    if kind == "harmonic":
        return Harmonic(scale)
    alpha = float(rng.uniform(1.0, 10.0))
    a = float(2.0 ** rng.uniform(-1.0, 1.0))
    n = int(rng.integers(10, 101))
    return PowerLawDOS(alpha, a, n, scale * n)


def random_density_matrix(rng, dim, rank=None):
    rank = dim if rank is None else rank
    g = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    m = g @ g.conj().T
    return DensityMatrix(m / np.trace(m).real)


def random_ensemble(rng, dim_range=(2, 8), max_members=6):
    dim = int(rng.integers(dim_range[0], dim_range[1] + 1))
    k = int(rng.integers(1, max_members + 1))
    p = rng.dirichlet(np.ones(k))
    p = np.maximum(p, 1e-6)
    p /= math.fsum(p)
    members = tuple((float(pi), random_density_matrix(rng, dim, int(rng.integers(1, dim + 1))))
                    for pi in p)
    # renormalize the last weight so the sum is 1 to round-off
    head = [pi for pi, _ in members[:-1]]
    members = members[:-1] + ((1.0 - math.fsum(head), members[-1][1]),)
    return StateEnsemble(members)


def random_clausius_trial(rng, reversed_direction=False, consts=NATURAL, energy_unit=1.0):
    """Draw a trial satisfying the transfer's hypotheses.

    Forward: ``T1 <= T2`` and ``0 < dE' <= dE <= E1(T1)/2``. Reversed
    (heat from hot to cold): ``T1 > T2``, ``dE' = dE``, and the two final
    temperatures stay ordered. Draws violating a hypothesis are redrawn.
    """
    while True:
        spec1 = random_spectrum(rng, energy_unit)
        spec2 = random_spectrum(rng, energy_unit)
        temps = np.sort(10.0 ** rng.uniform(-2.0, 2.0, size=2)) * energy_unit / consts.k
        t1, t2 = (temps[1], temps[0]) if reversed_direction else (temps[0], temps[1])
        u1, u2 = 1.0 - rng.random(), 1.0 - rng.random()   # in (0, 1]
        e1 = thermal_energy(spec1, t1, consts)
        if e1 < MIN_THERMAL_ENERGY * energy_unit or (reversed_direction and t1 == t2):
            continue
        de = 0.5 * e1 * u1
        dep = de if reversed_direction else de * u2
        if thermal_energy(spec2, t2, consts) + dep >= energy_supremum(spec2):
            continue
        try:
            trial = clausius_transfer((spec1, float(t1)), (spec2, float(t2)), de, dep, consts)
        except DomainError:
            continue
        if reversed_direction and trial.t2_after > trial.t1_after:
            continue
        return trial
