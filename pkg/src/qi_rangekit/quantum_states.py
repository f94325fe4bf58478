"""Signal/idler correlation matrices for the two transmitter states.

Two transmitters are modeled: a two-mode squeezed vacuum (entangled
signal/idler pair from CW parametric down-conversion) and a pair of
correlated coherent states obtained by splitting one coherent field.  For
each, this module provides the closed-form 4x4 quadrature covariance matrix
and an independent oracle that recomputes the same matrix by brute-force
expectation values in a truncated Fock space.

Matrix convention
-----------------
Rows/columns are ordered (I_S, Q_S, I_I, Q_I), the in-phase and quadrature
voltage operators of signal then idler, with I = (a + a^dag)/sqrt(2) and
Q = (a - a^dag)/(i sqrt(2)).  Each entry is *twice* the symmetrized
non-central second moment, ``2 * <(R_j R_k + R_k R_j)/2>``.  Under this
normalization the TMSV matrix has diagonal S = 2*N_s + 1 and cross entries
+/- C_q with C_q = 2*sqrt(N_s*(N_s + 1)); the coherent pair has the same
diagonal with C_c = 2*N_s.

Known model/oracle discrepancy: the coherent-pair *model* matrix assigns
S to all four diagonal entries and -C_c to the (Q_S, Q_I) entry, but the
actual product state |alpha> x |alpha> with real alpha = sqrt(N_s/2) has
unit Q-variance and zero Q-sector cross correlation.  The model matrix is
what downstream computations use; the oracle reports the product-state
moments as computed so the difference stays visible.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import CutoffError, DomainError

# Index order of the quadrature basis.
SIGNAL_I, SIGNAL_Q, IDLER_I, IDLER_Q = 0, 1, 2, 3

#: Maximum probability mass the truncated state expansion may discard.
TAIL_TOLERANCE = 1e-12

_SQRT2 = math.sqrt(2.0)


def _require_mean_photons(n_s: float, allow_zero: bool = False) -> float:
    n_s = float(n_s)
    if not math.isfinite(n_s):
        raise DomainError(f"mean photon number must be finite, got {n_s!r}")
    if n_s < 0.0 or (n_s == 0.0 and not allow_zero):
        bound = ">= 0" if allow_zero else "> 0"
        raise DomainError(f"mean photon number must be {bound}, got {n_s!r}")
    return n_s


def _block_covariance(s: float, c: float) -> np.ndarray:
    """Assemble the 4x4 matrix with diagonal blocks diag(s, s) and
    signal/idler cross blocks diag(c, -c)."""
    cov = np.zeros((4, 4))
    cov[SIGNAL_I, SIGNAL_I] = cov[SIGNAL_Q, SIGNAL_Q] = s
    cov[IDLER_I, IDLER_I] = cov[IDLER_Q, IDLER_Q] = s
    cov[SIGNAL_I, IDLER_I] = cov[IDLER_I, SIGNAL_I] = c
    cov[SIGNAL_Q, IDLER_Q] = cov[IDLER_Q, SIGNAL_Q] = -c
    return cov


def tmsv_covariance(n_s: float) -> np.ndarray:
    """Covariance matrix of the entangled (two-mode squeezed vacuum) pair.

    Diagonal S = 2*n_s + 1, cross entries +/- C_q = 2*sqrt(n_s*(n_s + 1)).
    ``n_s = 0`` is admitted as the documented vacuum limit (S = 1, C_q = 0).
    """
    n_s = _require_mean_photons(n_s, allow_zero=True)
    s = 2.0 * n_s + 1.0
    c_q = 2.0 * math.sqrt(n_s * (n_s + 1.0))
    return _block_covariance(s, c_q)


def coherent_covariance(n_s: float) -> np.ndarray:
    """Model covariance matrix of the correlated coherent-state pair.

    Diagonal S = 2*n_s + 1, cross entries +/- C_c = 2*n_s.  This is the
    model matrix used downstream; see the module docstring for how it
    differs from the literal product coherent state in the Q sector.
    """
    n_s = _require_mean_photons(n_s, allow_zero=True)
    return _block_covariance(2.0 * n_s + 1.0, 2.0 * n_s)


def correlation_ratio(n_s: float) -> float:
    """Classical-to-quantum cross-correlation ratio C_c/C_q.

    Equals (1 + 1/n_s)^(-1/2): strictly inside (0, 1) and monotone
    increasing in n_s, approaching 1 from below as n_s grows.
    """
    n_s = _require_mean_photons(n_s)
    return (1.0 + 1.0 / n_s) ** -0.5


def min_fock_cutoff(n_s: float, tail_tolerance: float = TAIL_TOLERANCE) -> int:
    """Smallest truncation index n_max whose discarded thermal-weight tail
    sum_{n > n_max} n_s^n / (n_s + 1)^(n+1) stays below ``tail_tolerance``.

    The tail is geometric: (n_s/(n_s + 1))^(n_max + 1).
    """
    n_s = _require_mean_photons(n_s)
    ratio = n_s / (n_s + 1.0)
    # math.log(ratio) < 0, so the bound flips.
    needed = math.ceil(math.log(tail_tolerance) / math.log(ratio)) - 1
    n_max = max(1, needed)
    while _tmsv_tail(n_s, n_max) >= tail_tolerance:  # guard against rounding
        n_max += 1
    return n_max


def _tmsv_tail(n_s: float, n_max: int) -> float:
    return (n_s / (n_s + 1.0)) ** (n_max + 1)


def _poisson_tail(lam: float, n_max: int) -> float:
    """Upper-tail Poisson mass P[N > n_max] for mean ``lam``, summed directly
    from the (n_max + 1)-th term in log space to avoid cancellation."""
    if lam == 0.0:
        return 0.0
    log_term = -lam + (n_max + 1) * math.log(lam) - math.lgamma(n_max + 2)
    if log_term < -745.0:  # below exp underflow
        return 0.0
    term = math.exp(log_term)
    total = 0.0
    k = n_max + 1
    while term > total * 1e-18 + 1e-300:
        total += term
        k += 1
        term *= lam / k
    return total


def _lowering_operator(dim: int) -> np.ndarray:
    """Truncated single-mode annihilation operator a with a[n-1, n] = sqrt(n)."""
    a = np.zeros((dim, dim))
    ns = np.arange(1, dim)
    a[ns - 1, ns] = np.sqrt(ns)
    return a


def _second_moments(psi: np.ndarray) -> np.ndarray:
    """4x4 matrix of 2x symmetrized non-central quadrature moments for a
    two-mode state given by its Fock coefficient matrix ``psi[n_S, n_I]``.

    Quadrature operators are applied directly to the coefficient matrix
    (signal operators act on rows, idler operators on columns), so no
    analytic moment formulas enter: the result is a pure truncated sum.
    """
    dim = psi.shape[0]
    a = _lowering_operator(dim)
    psi_c = psi.astype(complex)

    applied = [
        (a @ psi_c + a.T @ psi_c) / _SQRT2,          # I_S
        (a @ psi_c - a.T @ psi_c) / (1j * _SQRT2),   # Q_S
        (psi_c @ a.T + psi_c @ a) / _SQRT2,          # I_I
        (psi_c @ a.T - psi_c @ a) / (1j * _SQRT2),   # Q_I
    ]

    cov = np.zeros((4, 4))
    for j in range(4):
        for k in range(j, 4):
            # <psi| R_j R_k |psi> = <R_j psi | R_k psi>; the real part is the
            # symmetrized moment since swapping j,k conjugates the product.
            moment = np.vdot(applied[j], applied[k]).real
            cov[j, k] = cov[k, j] = 2.0 * moment
    return cov


def tmsv_covariance_oracle(n_s: float, n_max: int | None = None) -> np.ndarray:
    """Recompute the entangled-pair covariance by truncated Fock sums.

    The state coefficients c_n = sqrt(n_s^n / (n_s + 1)^(n+1)) populate the
    diagonal of the two-mode coefficient matrix; all sixteen second moments
    are then evaluated numerically.  ``n_max`` defaults to the smallest
    cutoff satisfying the tail rule and is rejected if it violates it.
    """
    n_s = _require_mean_photons(n_s)
    if n_max is None:
        n_max = min_fock_cutoff(n_s)
    n_max = int(n_max)
    if n_max < 1:
        raise CutoffError(f"cutoff must be >= 1, got {n_max}")
    tail = _tmsv_tail(n_s, n_max)
    if tail >= TAIL_TOLERANCE:
        raise CutoffError(
            f"cutoff n_max={n_max} leaves tail probability {tail:.3e} "
            f">= {TAIL_TOLERANCE:g} for n_s={n_s!r}"
        )
    ns = np.arange(n_max + 1)
    coeffs = np.sqrt(n_s**ns / (n_s + 1.0) ** (ns + 1))
    psi = np.diag(coeffs)
    return _second_moments(psi)


def coherent_covariance_oracle(n_s: float, n_max: int | None = None) -> np.ndarray:
    """Second-moment matrix of the literal product coherent state.

    Uses alpha = sqrt(n_s/2), real and positive, for both modes, and the
    same truncated-sum machinery as the TMSV oracle.  The I-sector entries
    reproduce the model matrix (2*n_s + 1 diagonal, 2*n_s cross); the
    Q-sector comes out as the product state actually gives it (variance 1,
    zero cross correlation), which is the documented deviation from the
    model's -C_c entry.
    """
    n_s = _require_mean_photons(n_s, allow_zero=True)
    lam = n_s / 2.0  # photons per mode, |alpha|^2
    if n_max is None:
        n_max = 1
        while _poisson_tail(lam, n_max) >= TAIL_TOLERANCE:
            n_max += 1
    n_max = int(n_max)
    if n_max < 1:
        raise CutoffError(f"cutoff must be >= 1, got {n_max}")
    tail = _poisson_tail(lam, n_max)
    if tail >= TAIL_TOLERANCE:
        raise CutoffError(
            f"cutoff n_max={n_max} leaves Poisson tail mass {tail:.3e} "
            f">= {TAIL_TOLERANCE:g} for n_s={n_s!r}"
        )
    ns = np.arange(n_max + 1)
    # exp(-lam/2) * alpha^n / sqrt(n!) in log space; alpha = sqrt(lam).
    if lam > 0.0:
        log_amp = -lam / 2.0 + 0.5 * ns * math.log(lam) - 0.5 * np.array(
            [math.lgamma(n + 1) for n in range(n_max + 1)]
        )
        amplitudes = np.exp(log_amp)
    else:
        amplitudes = np.zeros(n_max + 1)
        amplitudes[0] = 1.0
    psi = np.outer(amplitudes, amplitudes)
    return _second_moments(psi)
