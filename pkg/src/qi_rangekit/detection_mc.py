"""Monte Carlo verification of the covariance synthesis and SNR chain.

Quadrature statistics of both transmitter states are exactly Gaussian, so
sampling the 4x4 covariance is an exact simulation.  Under the package-wide
"2x symmetrized second moment" convention, a covariance matrix ``cov``
corresponds to Gaussian vectors with ``E[x x^T] = cov / 2``;
:func:`sample_quadratures` and :func:`estimate_covariance` are inverse to
each other around that convention.

The return channel and receiver are this package's own constructions (the
analytic chain stops at the SNR ratio): a lossy thermal channel mixes the
signal mode with the background, and the receiver correlates the returned
mode against the retained idler through the statistic
D = I_R*I_I - Q_R*Q_I.  The quantum/classical deflection-SNR ratio of that
detector is checked for qualitative behavior (>= 1, growing as N_s
shrinks), not for a literal analytic factor.

Randomness is pinned to NumPy's PCG64 generator; fixed seeds reproduce
bit-identical streams, and internal sub-streams are split with
``SeedSequence.spawn`` so concurrent batches stay reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import CovarianceNotPSDError, DomainError, InsufficientTrialsError

_PSD_TOLERANCE = -1e-9


def _rng(seed_or_sequence) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed_or_sequence))


def _validate_seed(seed: int) -> int:
    seed = int(seed)
    if not (0 <= seed < 2**64):
        raise DomainError(f"seed must be an unsigned 64-bit integer, got {seed!r}")
    return seed


def _gaussian_factor(cov: np.ndarray) -> np.ndarray:
    """Factor L with L @ L.T = cov / 2, clamping round-off negatives.

    Eigenvalues below -1e-9 mean the matrix is genuinely not a covariance
    and raise with the offending value.
    """
    cov = np.asarray(cov, dtype=float)
    if cov.shape != (4, 4) or not np.allclose(cov, cov.T, rtol=0.0, atol=1e-12):
        raise DomainError("covariance must be a symmetric 4x4 matrix")
    eigenvalues, eigenvectors = np.linalg.eigh(cov)
    smallest = float(eigenvalues.min())
    if smallest < _PSD_TOLERANCE:
        raise CovarianceNotPSDError(
            f"covariance has eigenvalue {smallest!r} below the PSD tolerance",
            eigenvalue=smallest,
        )
    clamped = np.clip(eigenvalues, 0.0, None)
    return eigenvectors * np.sqrt(clamped / 2.0)


def _draw(cov: np.ndarray, n: int, rng: np.random.Generator) -> np.ndarray:
    factor = _gaussian_factor(cov)
    z = rng.standard_normal(size=(n, 4))
    return z @ factor.T


def sample_quadratures(cov: np.ndarray, n: int, seed: int) -> np.ndarray:
    """Draw ``n`` zero-mean Gaussian quadrature vectors consistent with ``cov``.

    Returns an (n, 4) array whose 2x sample second moments estimate ``cov``.
    Deterministic: the same seed yields bit-identical output.
    """
    n = int(n)
    if n < 1:
        raise DomainError(f"sample count must be >= 1, got {n!r}")
    return _draw(cov, n, _rng(_validate_seed(seed)))


def estimate_covariance(samples: np.ndarray) -> np.ndarray:
    """2x the sample non-central second-moment matrix (exactly symmetric)."""
    samples = np.asarray(samples, dtype=float)
    if samples.ndim != 2 or samples.shape[1] != 4:
        raise DomainError(f"samples must be (n, 4), got shape {samples.shape}")
    n = samples.shape[0]
    if n < 2:
        raise DomainError(f"need at least 2 samples, got {n}")
    moment = samples.T @ samples
    moment = (moment + moment.T) / 2.0
    return 2.0 * moment / n


@dataclass(frozen=True)
class ReturnChannelModel:
    """Lossy thermal return channel applied to a transmitter covariance.

    ``base`` is the 4x4 signal/idler covariance at the transmitter.  Under
    the target-present hypothesis the signal mode returns with transmissivity
    ``eta`` mixed into a background of ``n_b`` photons per mode: its diagonal
    becomes 2*(eta*N_s + (1 - eta)*N_B) + 1 and the signal/idler cross block
    scales by sqrt(eta).  Under target-absent the returned mode is pure
    thermal (diagonal 2*N_B + 1) with no idler correlation.
    """

    eta: float
    n_b: float
    base: np.ndarray

    def __post_init__(self) -> None:
        if not (math.isfinite(self.eta) and 0.0 < self.eta <= 1.0):
            raise DomainError(f"eta must be in (0, 1], got {self.eta!r}")
        if not (math.isfinite(self.n_b) and self.n_b >= 0.0):
            raise DomainError(f"n_b must be non-negative and finite, got {self.n_b!r}")
        base = np.asarray(self.base, dtype=float)
        if base.shape != (4, 4) or not np.allclose(base, base.T, rtol=0.0, atol=1e-12):
            raise DomainError("base covariance must be a symmetric 4x4 matrix")
        object.__setattr__(self, "base", base)

    def _signal_photons(self) -> float:
        # Mean photon number encoded in the signal diagonal block.
        return (self.base[0, 0] + self.base[1, 1] - 2.0) / 4.0

    def present_covariance(self) -> np.ndarray:
        out = self.base.copy()
        s_return = 2.0 * (self.eta * self._signal_photons() + (1.0 - self.eta) * self.n_b) + 1.0
        out[0, 0] = out[1, 1] = s_return
        out[0, 1] = out[1, 0] = 0.0
        root_eta = math.sqrt(self.eta)
        out[0:2, 2:4] *= root_eta
        out[2:4, 0:2] *= root_eta
        return out

    def absent_covariance(self) -> np.ndarray:
        out = self.base.copy()
        out[0:2, 0:2] = (2.0 * self.n_b + 1.0) * np.eye(2)
        out[0:2, 2:4] = 0.0
        out[2:4, 0:2] = 0.0
        return out


def _detector_statistic(samples: np.ndarray) -> np.ndarray:
    """Per-mode correlation statistic d = I_R*I_I - Q_R*Q_I."""
    return samples[:, 0] * samples[:, 2] - samples[:, 1] * samples[:, 3]


def _deflection_with_noise(
    d_present: np.ndarray, d_absent: np.ndarray
) -> tuple[float, float]:
    """Deflection SNR (E[D|p] - E[D|a])^2 / Var[D|a] and the first-order
    relative variance of its estimate (mean-shift noise dominates; the
    variance-estimate contribution is higher order and ignored)."""
    n = d_present.size
    shift = float(d_present.mean() - d_absent.mean())
    var_absent = float(d_absent.var())
    deflection = shift**2 / var_absent
    relative_variance = 4.0 * (float(d_present.var()) + var_absent) / (n * shift**2)
    return deflection, relative_variance


@dataclass(frozen=True)
class GainExperimentResult:
    """Measured quantum-over-classical deflection-SNR ratio with its error."""

    ratio: float
    standard_error: float
    deflection_quantum: float
    deflection_classical: float
    trials: int


def detector_gain_experiment(
    n_s: float,
    eta: float,
    n_b: float,
    trials: int,
    seed: int,
) -> GainExperimentResult:
    """Estimate the detector's quantum/classical SNR-gain ratio empirically.

    Builds present/absent return channels for both transmitters at the same
    (n_s, eta, n_b), runs ``trials`` modes through each, and forms the
    deflection SNR (E[D|present] - E[D|absent])^2 / Var[D|absent] per
    transmitter.  The reported standard error of the ratio propagates the
    mean-shift estimation noise of both deflections (first order); where the
    shifts are buried in noise the error is honestly enormous.
    """
    from .quantum_states import coherent_covariance, tmsv_covariance

    trials = int(trials)
    if trials < 10_000:
        raise DomainError(f"need at least 1e4 trials, got {trials!r}")
    if not (math.isfinite(n_s) and n_s > 0.0):
        raise DomainError(f"n_s must be positive and finite, got {n_s!r}")
    if not (math.isfinite(n_b) and n_b > 0.0):
        raise DomainError(f"n_b must be positive and finite, got {n_b!r}")

    streams = np.random.SeedSequence(_validate_seed(seed)).spawn(4)
    statistics: dict[str, tuple[np.ndarray, np.ndarray]] = {}
    for index, (label, base) in enumerate(
        (("quantum", tmsv_covariance(n_s)), ("classical", coherent_covariance(n_s)))
    ):
        model = ReturnChannelModel(eta=eta, n_b=n_b, base=base)
        d_present = _detector_statistic(
            _draw(model.present_covariance(), trials, _rng(streams[2 * index]))
        )
        d_absent = _detector_statistic(
            _draw(model.absent_covariance(), trials, _rng(streams[2 * index + 1]))
        )
        statistics[label] = (d_present, d_absent)

    deflection_q, rel_var_q = _deflection_with_noise(*statistics["quantum"])
    deflection_c, rel_var_c = _deflection_with_noise(*statistics["classical"])
    ratio = deflection_q / deflection_c
    standard_error = ratio * math.sqrt(rel_var_q + rel_var_c)

    return GainExperimentResult(
        ratio=ratio,
        standard_error=standard_error,
        deflection_quantum=deflection_q,
        deflection_classical=deflection_c,
        trials=trials,
    )


@dataclass(frozen=True)
class RocEstimate:
    """Empirical operating points: (p_fa, p_d) per threshold."""

    thresholds: tuple[float, ...]
    p_d: tuple[float, ...]
    p_fa: tuple[float, ...]
    trials: int


def roc_estimate(
    cov_present: np.ndarray,
    cov_absent: np.ndarray,
    thresholds: Sequence[float],
    trials: int,
    seed: int,
) -> RocEstimate:
    """Empirical ROC of the correlation detector between two hypotheses.

    Present/absent trial batches are drawn independently (split seed
    streams); each threshold yields the exceedance fractions of the
    per-mode statistic.  A probed false-alarm probability below 10/trials
    cannot be resolved and raises :class:`InsufficientTrialsError`.
    """
    trials = int(trials)
    if trials < 1:
        raise DomainError(f"trials must be >= 1, got {trials!r}")
    thresholds = tuple(float(t) for t in thresholds)
    if not thresholds:
        raise DomainError("thresholds must not be empty")

    stream_present, stream_absent = np.random.SeedSequence(_validate_seed(seed)).spawn(2)
    d_present = _detector_statistic(_draw(cov_present, trials, _rng(stream_present)))
    d_absent = _detector_statistic(_draw(cov_absent, trials, _rng(stream_absent)))

    p_d = tuple(float(np.mean(d_present > t)) for t in thresholds)
    p_fa = tuple(float(np.mean(d_absent > t)) for t in thresholds)

    floor = 10.0 / trials
    smallest = min(p_fa)
    if smallest < floor:
        raise InsufficientTrialsError(
            f"smallest probed p_fa {smallest!r} is below the 10/trials floor "
            f"{floor!r}; increase trials or relax the threshold"
        )
    return RocEstimate(thresholds=thresholds, p_d=p_d, p_fa=p_fa, trials=trials)
