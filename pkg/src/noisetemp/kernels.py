"""Hot numeric kernels: Boltzmann moment sums and Jacobi diagonalization.

Each kernel exists twice: a scalar-loop version that numba compiles, and a
vectorized numpy version. ``NOISETEMP_DISABLE_NUMBA=1`` selects the numpy
versions; results agree to round-off (see ``tests/test_kernels.py``).

The moment kernels sum over the *excited* levels only. The ground level is
always energy 0 with degeneracy 1 and is folded in analytically, so that
``ln Z = log1p(S)`` keeps full precision when ``S`` is tiny.
"""
import math

import numpy as np

from ._accel import HAVE_NUMBA, njit

_CHUNK = 1 << 18


def _loop_finish(m, s0, s1):
    if m <= 0.0:
        q = math.exp(m)
        return q, q * s1 / (1.0 + q * s0), 1.0 + q * s0
    r = math.exp(-m)
    return r, s1 / (r + s0), r + s0


def _power_law_moments_loop(n_max, spacing, alpha, log_a, beta):
    """Moments of levels ``E_n = n*spacing`` with degeneracy ``a*n**alpha``.

    Returns ``(log_s, mean, var)`` where ``log_s`` is the log of the excited
    part of the partition sum.
    """
    b = beta * spacing
    n_peak = alpha / b if b > 0.0 else float(n_max)
    n_lo = min(max(math.floor(n_peak), 1), n_max)
    n_hi = min(max(math.ceil(n_peak), 1), n_max)
    m = max(log_a + alpha * math.log(n_lo) - b * n_lo,
            log_a + alpha * math.log(n_hi) - b * n_hi)
    # Neumaier-compensated sums
    s0 = 0.0
    c0 = 0.0
    s1 = 0.0
    c1 = 0.0
    for n in range(1, n_max + 1):
        t = math.exp(log_a + alpha * math.log(n) - b * n - m)
        y = s0 + t
        if abs(s0) >= t:
            c0 += (s0 - y) + t
        else:
            c0 += (t - y) + s0
        s0 = y
        te = t * (spacing * n)
        y = s1 + te
        if abs(s1) >= te:
            c1 += (s1 - y) + te
        else:
            c1 += (te - y) + s1
        s1 = y
    s0 += c0
    s1 += c1
    if m <= 0.0:
        q = math.exp(m)
        z = 1.0 + q * s0
        mean = q * s1 / z
    else:
        q = math.exp(-m)
        z = q + s0
        mean = s1 / z
    s2 = 0.0
    c2 = 0.0
    for n in range(1, n_max + 1):
        t = math.exp(log_a + alpha * math.log(n) - b * n - m)
        d = spacing * n - mean
        td = t * d * d
        y = s2 + td
        if abs(s2) >= td:
            c2 += (s2 - y) + td
        else:
            c2 += (td - y) + s2
        s2 = y
    s2 += c2
    if m <= 0.0:
        var = (mean * mean + q * s2) / z
    else:
        var = (q * mean * mean + s2) / z
    return m + math.log(s0), mean, var


def _level_moments_loop(energies, logdeg, beta):
    """Moments of an explicit list of excited levels."""
    k = energies.shape[0]
    m = -math.inf
    for i in range(k):
        l = logdeg[i] - beta * energies[i]
        if l > m:
            m = l
    s0 = 0.0
    s1 = 0.0
    for i in range(k):
        t = math.exp(logdeg[i] - beta * energies[i] - m)
        s0 += t
        s1 += t * energies[i]
    if m <= 0.0:
        q = math.exp(m)
        z = 1.0 + q * s0
        mean = q * s1 / z
    else:
        q = math.exp(-m)
        z = q + s0
        mean = s1 / z
    s2 = 0.0
    for i in range(k):
        t = math.exp(logdeg[i] - beta * energies[i] - m)
        d = energies[i] - mean
        s2 += t * d * d
    if m <= 0.0:
        var = (mean * mean + q * s2) / z
    else:
        var = (q * mean * mean + s2) / z
    return m + math.log(s0), mean, var


def _jacobi_loop(a, tol, max_sweeps):
    """Cyclic Jacobi on a real symmetric matrix (modified in place)."""
    n = a.shape[0]
    for sweep in range(max_sweeps):
        off = 0.0
        for i in range(n):
            for j in range(n):
                if i != j:
                    off += a[i, j] * a[i, j]
        if math.sqrt(off) <= tol:
            return sweep
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= 1e-300 or abs(apq) <= 1e-18 * (abs(a[p, p]) + abs(a[q, q])):
                    a[p, q] = 0.0
                    a[q, p] = 0.0
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if theta >= 0.0:
                    t = 1.0 / (theta + math.sqrt(theta * theta + 1.0))
                else:
                    t = -1.0 / (-theta + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = c * akp - s * akq
                    a[k, q] = s * akp + c * akq
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = c * apk - s * aqk
                    a[q, k] = s * apk + c * aqk
                a[p, q] = 0.0
                a[q, p] = 0.0
    return -1


# --- numpy fallbacks -------------------------------------------------------

def _power_law_moments_numpy(n_max, spacing, alpha, log_a, beta):
    b = beta * spacing
    n_peak = alpha / b if b > 0.0 else float(n_max)
    cands = np.clip([math.floor(n_peak), math.ceil(n_peak)], 1, n_max)
    m = float(np.max(log_a + alpha * np.log(cands) - b * cands))
    s0_parts, s1_parts = [], []
    for start in range(1, n_max + 1, _CHUNK):
        n = np.arange(start, min(start + _CHUNK, n_max + 1), dtype=np.float64)
        t = np.exp(log_a + alpha * np.log(n) - b * n - m)
        s0_parts.append(t.sum())
        s1_parts.append((t * (spacing * n)).sum())
    s0 = math.fsum(s0_parts)
    s1 = math.fsum(s1_parts)
    q, mean, z = _loop_finish(m, s0, s1)
    s2_parts = []
    for start in range(1, n_max + 1, _CHUNK):
        n = np.arange(start, min(start + _CHUNK, n_max + 1), dtype=np.float64)
        t = np.exp(log_a + alpha * np.log(n) - b * n - m)
        s2_parts.append((t * (spacing * n - mean) ** 2).sum())
    s2 = math.fsum(s2_parts)
    if m <= 0.0:
        var = (mean * mean + q * s2) / z
    else:
        var = (q * mean * mean + s2) / z
    return m + math.log(s0), mean, var


def _level_moments_numpy(energies, logdeg, beta):
    l = logdeg - beta * energies
    m = float(l.max())
    t = np.exp(l - m)
    s0 = math.fsum(t)
    s1 = math.fsum(t * energies)
    q, mean, z = _loop_finish(m, s0, s1)
    s2 = math.fsum(t * (energies - mean) ** 2)
    if m <= 0.0:
        var = (mean * mean + q * s2) / z
    else:
        var = (q * mean * mean + s2) / z
    return m + math.log(s0), mean, var


def _jacobi_numpy(a, tol, max_sweeps):
    n = a.shape[0]
    for sweep in range(max_sweeps):
        off = float(np.linalg.norm(a - np.diag(np.diag(a))))
        if off <= tol:
            return sweep
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= 1e-300 or abs(apq) <= 1e-18 * (abs(a[p, p]) + abs(a[q, q])):
                    a[p, q] = 0.0
                    a[q, p] = 0.0
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                col_p = a[:, p].copy()
                a[:, p] = c * col_p - s * a[:, q]
                a[:, q] = s * col_p + c * a[:, q]
                row_p = a[p, :].copy()
                a[p, :] = c * row_p - s * a[q, :]
                a[q, :] = s * row_p + c * a[q, :]
                a[p, q] = 0.0
                a[q, p] = 0.0
    return -1


if HAVE_NUMBA:
    power_law_moments_numba = njit(_power_law_moments_loop)
    level_moments_numba = njit(_level_moments_loop)
    jacobi_numba = njit(_jacobi_loop)
    power_law_moments = power_law_moments_numba
    level_moments = level_moments_numba
    _jacobi = jacobi_numba
else:
    power_law_moments = _power_law_moments_numpy
    level_moments = _level_moments_numpy
    _jacobi = _jacobi_numpy

BACKEND = "numba" if HAVE_NUMBA else "numpy"


def symmetric_eigvals(a, tol=1e-13, max_sweeps=100, jacobi=None):
    """Ascending eigenvalues of a real symmetric matrix by cyclic Jacobi.

    ``tol`` bounds the final off-diagonal Frobenius norm, scaled by the
    matrix norm when that exceeds 1.
    """
    work = np.array(a, dtype=np.float64, copy=True)
    scale = max(1.0, float(np.linalg.norm(work)))
    sweeps = (jacobi or _jacobi)(work, tol * scale, max_sweeps)
    if sweeps < 0:
        from .errors import AccuracyError
        raise AccuracyError(f"Jacobi iteration did not converge in {max_sweeps} sweeps")
    return np.sort(np.diag(work))


def hermitian_eigvals(h, tol=1e-13, jacobi=None):
    """Ascending eigenvalues of a complex Hermitian matrix.

    Uses the real embedding ``[[Re, -Im], [Im, Re]]`` whose spectrum is that of
    ``h`` with every eigenvalue doubled.
    """
    h = np.asarray(h, dtype=np.complex128)
    re, im = h.real, h.imag
    if not np.any(im):
        return symmetric_eigvals(re, tol, jacobi=jacobi)
    big = np.block([[re, -im], [im, re]])
    return symmetric_eigvals(big, tol, jacobi=jacobi)[::2]
