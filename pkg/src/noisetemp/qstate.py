"""Density matrices, ensemble information measures and orthogonal state sequences."""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, ValidationError
from .kernels import hermitian_eigvals

MAX_DIM = 256
HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
NEGATIVE_EIG_TOL = 1e-10


class EntropyDefectViolation(AssertionError):
    """``0 <= H - Hbar <= I0`` failed beyond tolerance."""


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, unit-trace, positive semidefinite matrix.

    Eigenvalues are computed once, on construction, by the Jacobi kernel.
    """
    elements: np.ndarray
    eigenvalues: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        m = np.array(self.elements, dtype=np.complex128)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
            raise ValidationError(f"density matrix must be square, got shape {m.shape}")
        if m.shape[0] > MAX_DIM:
            raise ValidationError(f"dimension {m.shape[0]} exceeds the cap of {MAX_DIM}")
        if not np.all(np.isfinite(m)):
            raise ValidationError("density matrix has non-finite entries")
        if np.max(np.abs(m - m.conj().T)) > HERMITIAN_TOL:
            raise ValidationError("density matrix is not Hermitian")
        tr = np.trace(m).real
        if abs(tr - 1.0) > TRACE_TOL:
            raise ValidationError(f"density matrix trace is {tr!r}, not 1")
        m = 0.5 * (m + m.conj().T)
        m.setflags(write=False)
        evals = hermitian_eigvals(m)
        if evals[0] < -NEGATIVE_EIG_TOL:
            raise ValidationError(f"density matrix has negative eigenvalue {evals[0]!r}")
        evals = np.clip(evals, 0.0, None)
        evals.setflags(write=False)
        object.__setattr__(self, "elements", m)
        object.__setattr__(self, "eigenvalues", evals)

    @property
    def dim(self):
        return self.elements.shape[0]

    def to_dict(self):
        return {"dim": self.dim,
                "elements": [[float(z.real), float(z.imag)] for z in self.elements.ravel()]}

    @classmethod
    def from_dict(cls, d):
        try:
            dim = int(d["dim"])
            flat = [complex(re, im) for re, im in d["elements"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError(f"malformed density matrix: {exc}") from None
        if len(flat) != dim * dim:
            raise ValidationError(f"expected {dim * dim} entries, got {len(flat)}")
        return cls(np.array(flat).reshape(dim, dim))


def projector(vec) -> DensityMatrix:
    v = np.asarray(vec, dtype=np.complex128)
    return DensityMatrix(np.outer(v, v.conj()))


def maximally_mixed(dim) -> DensityMatrix:
    return DensityMatrix(np.eye(dim) / dim)


def entropy_of_probabilities(p):
    p = np.asarray(p, dtype=np.float64)
    p = p[p > 0]
    return float(-math.fsum(p * np.log(p)))


def von_neumann_entropy(rho: DensityMatrix) -> float:
    """``-Tr rho ln rho`` in nats, with ``0 ln 0 = 0``."""
    return entropy_of_probabilities(rho.eigenvalues)


def binary_entropy(eps):
    return entropy_of_probabilities([eps, 1.0 - eps])


@dataclass(frozen=True)
class StateEnsemble:
    members: tuple   # ((p_i, DensityMatrix), ...)

    def __post_init__(self):
        members = tuple((float(p), rho) for p, rho in self.members)
        object.__setattr__(self, "members", members)
        if not members:
            raise ValidationError("ensemble is empty")
        if any(not p > 0 for p, _ in members):
            raise ValidationError("ensemble probabilities must be positive")
        if len({rho.dim for _, rho in members}) != 1:
            raise ValidationError("ensemble members must share one dimension")
        total = math.fsum(p for p, _ in members)
        if abs(total - 1.0) > 1e-12:
            raise ValidationError(f"ensemble probabilities sum to {total!r}")

    @property
    def probabilities(self):
        return [p for p, _ in self.members]

    def mixture(self) -> DensityMatrix:
        return DensityMatrix(sum(p * rho.elements for p, rho in self.members))

    def to_dict(self):
        return {"dim": self.members[0][1].dim,
                "members": [{"p": p, "rho": rho.to_dict()} for p, rho in self.members]}

    @classmethod
    def from_dict(cls, d):
        try:
            return cls(tuple((m["p"], DensityMatrix.from_dict(m["rho"])) for m in d["members"]))
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"malformed ensemble: {exc}") from None


@dataclass(frozen=True)
class InformationReport:
    i0: float
    h_bar: float
    h: float
    defect: float


def information_report(ens: StateEnsemble, tol=1e-12) -> InformationReport:
    """Source information, average and mixture entropies, and their gap.

    Raises :class:`EntropyDefectViolation` unless ``0 <= H - Hbar <= I0``
    within ``tol``.
    """
    i0 = entropy_of_probabilities(ens.probabilities)
    h_bar = math.fsum(p * von_neumann_entropy(rho) for p, rho in ens.members)
    h = von_neumann_entropy(ens.mixture())
    defect = h - h_bar
    if not (-tol <= defect <= i0 + tol):
        raise EntropyDefectViolation(
            f"entropy defect {defect!r} outside [0, I0={i0!r}]")
    return InformationReport(i0, h_bar, h, defect)


def qubit_noisy_pair(epsilon) -> StateEnsemble:
    """The two qubit states ``(|0> +/- |1>)/sqrt 2`` each flipped with probability epsilon."""
    if not 0 <= epsilon <= 0.5:
        raise DomainError(f"epsilon must lie in [0, 1/2], got {epsilon!r}")
    off = 0.5 - epsilon
    rho1 = DensityMatrix(np.array([[0.5, off], [off, 0.5]]))
    rho2 = DensityMatrix(np.array([[0.5, -off], [-off, 0.5]]))
    return StateEnsemble(((0.5, rho1), (0.5, rho2)))


@dataclass(frozen=True)
class MixtureCheck:
    epsilon: float
    member_error: float     # max |reconstructed - exact| over both members
    thermal_error: float    # same for the diagonal thermal state
    entropy_gap: float      # |H(rho_i) - H(rho_eq)|, worst member
    ok: bool


def thermal_qubit(epsilon) -> DensityMatrix:
    return DensityMatrix(np.diag([1.0 - epsilon, epsilon]))


def mixture_decomposition_check(epsilon, tol=1e-14, entropy_tol=1e-12) -> MixtureCheck:
    """Rebuild the noisy qubit states and their thermal counterpart as
    ``(1-2 eps)*pure + 2 eps*I/2`` and compare with the direct forms."""
    if not 0 <= epsilon <= 0.5:
        raise DomainError(f"epsilon must lie in [0, 1/2], got {epsilon!r}")
    half = np.eye(2) / 2
    w = 1.0 - 2.0 * epsilon
    ens = qubit_noisy_pair(epsilon)
    member_err = 0.0
    for sign, (_, rho) in zip((1.0, -1.0), ens.members):
        pure = 0.5 * np.array([[1.0, sign], [sign, 1.0]])
        member_err = max(member_err, float(np.max(np.abs(w * pure + 2 * epsilon * half - rho.elements))))
    rho_eq = thermal_qubit(epsilon)
    thermal = w * np.diag([1.0, 0.0]) + 2 * epsilon * half
    thermal_err = float(np.max(np.abs(thermal - rho_eq.elements)))
    h_eq = von_neumann_entropy(rho_eq)
    gap = max(abs(von_neumann_entropy(rho) - h_eq) for _, rho in ens.members)
    ok = member_err <= tol and thermal_err <= tol and gap <= entropy_tol
    return MixtureCheck(epsilon, member_err, thermal_err, gap, ok)


# --- orthogonal state sequences --------------------------------------------

@dataclass(frozen=True, eq=False)
class PureStateVector:
    amplitudes: np.ndarray

    def __post_init__(self):
        v = np.array(self.amplitudes, dtype=np.complex128)
        if abs(np.linalg.norm(v) - 1.0) > 1e-12:
            raise ValidationError("state vector is not normalized")
        v.setflags(write=False)
        object.__setattr__(self, "amplitudes", v)

    @property
    def dim(self):
        return self.amplitudes.shape[0]

    def mean_energy(self, energies):
        return float(np.dot(np.abs(self.amplitudes) ** 2, np.asarray(energies[:self.dim])))


def gram_matrix(states):
    m = np.array([s.amplitudes for s in states])
    return m.conj() @ m.T


def ml_sequence_harmonic(n_states, delta_e=1.0):
    """``N`` mutually orthogonal states of an oscillator, each one step of
    the free evolution after the previous, in the basis ``|E_n>``, ``E_n = n*delta_e``."""
    if int(n_states) != n_states or n_states < 2:
        raise DomainError(f"n_states must be an integer >= 2, got {n_states!r}")
    n = np.arange(n_states)
    phases = np.exp(-2j * np.pi * np.outer(n, n) / n_states)
    return [PureStateVector(row / math.sqrt(n_states)) for row in phases]


def ml_sequence_general(energies, n_states=None):
    """States ``sum_n c_n exp(-2 pi i m E_n / E_N) |E_n>`` with
    ``c_n = sqrt((E_{n+1} - E_n)/E_N)``, ``n = 0..N-1``, ``m = 0..n_states-1``.

    ``energies`` holds ``E_0 = 0 < E_1 < ... < E_N``. Returns the states and
    their Gram matrix, which is the identity only for uniform spacing.
    """
    e = np.asarray(energies, dtype=np.float64)
    if e.ndim != 1 or e.size < 3 or e[0] != 0.0:
        raise DomainError("energies must be a list E_0=0, ..., E_N with N >= 2")
    gaps = np.diff(e)
    if np.any(gaps < 0):
        raise DomainError("energies must be non-decreasing")
    if np.any(gaps == 0):
        warnings.warn("zero-width energy gap gives a vanishing amplitude", RuntimeWarning,
                      stacklevel=2)
    n_levels = e.size - 1
    if n_states is None:
        n_states = n_levels
    if int(n_states) != n_states or n_states < 1:
        raise DomainError(f"n_states must be a positive integer, got {n_states!r}")
    e_top = e[-1]
    c = np.sqrt(gaps / e_top)
    m = np.arange(n_states)
    phase = np.exp(-2j * np.pi * np.outer(m, e[:-1]) / e_top)
    states = [PureStateVector(c * row) for row in phase]
    return states, gram_matrix(states)
