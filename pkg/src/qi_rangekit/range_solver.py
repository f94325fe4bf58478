"""Maximum-range solutions for classical and quantum illumination.

With no atmospheric loss the range equation closes in a fourth root,

    R_max = (sigma * G * A * M * N_s / ((4*pi)^2 * N_B * SNR_min))^(1/4),

and the quantum transmitter extends it by (1 + 1/N_s)^(1/4), implemented as
a threshold rescaling SNR_min -> SNR_min / (1 + 1/N_s) so the range ratio
holds by construction.  With absorption the form factor F depends on R and
the equation becomes implicit; SNR_eff(R) is strictly decreasing in R
(R^-4 times F(R)^2), so the unique crossing of the threshold is bracketed
by [epsilon, R_max_free] and found by bisection.

Note the (4*pi) exponent: back-substituting the transmissivity into the
effective SNR gives (4*pi)^2 in the denominator, and that convention also
reproduces the expected range magnitudes.  The fourth power sometimes seen
in print is available behind ``four_pi_exponent=4`` for comparison runs.

Inside the solver the SNR chain is evaluated from the raw far-field
formula without the eta <= 1 guard of the public link-budget operation:
bracket endpoints necessarily probe the near field, and the monotone
root-find only ever reports the crossing itself.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .constants import TEXTBOOK, PhysicalConstants
from .errors import DomainError, NoDetectionError
from .link_budget import DetectionSpec, IntegrationSpec, RadarParams
from .quantum_states import correlation_ratio

_FOUR_PI = 4.0 * math.pi

# Lower bracket edge [m]; "near-zero range" for the no-detection test.
_BRACKET_LO_M = 1e-6
_RELATIVE_WIDTH_TOL = 1e-9
_MAX_ITERATIONS = 200
_RESIDUAL_TOL_DB = 1e-6


class Illumination(enum.Enum):
    """Transmitter choice: classical (coherent pair) or quantum (entangled pair)."""

    CI = "ci"
    QI = "qi"


@dataclass(frozen=True)
class RangeProblem:
    """One maximum-range question: scenario physics plus transmitter mode."""

    radar: RadarParams
    detection: DetectionSpec
    integration: IntegrationSpec
    n_s: float
    f_hz: float
    n_b: float
    gamma_db_per_km: float = 0.0
    mode: Illumination = Illumination.CI
    four_pi_exponent: int = 2
    constants: PhysicalConstants = TEXTBOOK

    def __post_init__(self) -> None:
        for name, value in (
            ("n_s", self.n_s),
            ("f_hz", self.f_hz),
            ("n_b", self.n_b),
        ):
            if not (math.isfinite(value) and value > 0.0):
                raise DomainError(f"{name} must be positive and finite, got {value!r}")
        if not (math.isfinite(self.gamma_db_per_km) and self.gamma_db_per_km >= 0.0):
            raise DomainError(
                f"gamma must be non-negative and finite, got {self.gamma_db_per_km!r}"
            )
        if self.four_pi_exponent not in (2, 4):
            raise DomainError(
                f"four_pi_exponent must be 2 or 4, got {self.four_pi_exponent!r}"
            )


@dataclass(frozen=True)
class RangeSolution:
    """Solved maximum range with solver diagnostics."""

    r_max_m: float
    residual_db: float
    iterations: int
    bracket: tuple[float, float]
    converged: bool


@dataclass(frozen=True)
class SweepSeries:
    """One curve of a sweep; ``None`` marks a point that failed to solve."""

    frequency_hz: float | None
    mode: Illumination | None
    values: tuple[float | None, ...]


@dataclass(frozen=True)
class SweepResult:
    axis: tuple[float, ...]
    series: tuple[SweepSeries, ...]


def quantum_advantage_factor(n_s: float) -> float:
    """Range-domain quantum gain (1 + 1/n_s)^(1/4); approaches 1 as n_s grows."""
    if not (math.isfinite(n_s) and n_s > 0.0):
        raise DomainError(f"n_s must be positive and finite, got {n_s!r}")
    return (1.0 + 1.0 / n_s) ** 0.25


def sensitivity_gain(n_s: float) -> float:
    """SNR-domain quantum gain 1 + 1/n_s used to rescale the threshold."""
    if not (math.isfinite(n_s) and n_s > 0.0):
        raise DomainError(f"n_s must be positive and finite, got {n_s!r}")
    return 1.0 + 1.0 / n_s


def threshold_linear(problem: RangeProblem) -> float:
    """Mode-adjusted detection threshold (linear): the configured SNR_min,
    divided by 1 + 1/N_s for the quantum transmitter."""
    threshold = problem.detection.snr_min_linear
    if problem.mode is Illumination.QI:
        threshold /= sensitivity_gain(problem.n_s)
    return threshold


def _chain_constant(problem: RangeProblem) -> float:
    """sigma*G*A*M*N_s / ((4*pi)^k * N_B): SNR_eff(R) = const * F(R)^2 / R^4."""
    gain = problem.radar.gain(problem.f_hz, problem.constants)
    return (
        problem.radar.sigma_m2
        * gain
        * problem.radar.aperture_m2
        * problem.integration.pulse_count
        * problem.n_s
    ) / (_FOUR_PI**problem.four_pi_exponent * problem.n_b)


def _snr_eff_at(problem: RangeProblem, r_m: float) -> float:
    # Raw far-field evaluation; see module docstring.
    f_form = 10.0 ** (-problem.gamma_db_per_km * (r_m / 1000.0) / 10.0)
    return _chain_constant(problem) * f_form**2 / r_m**4


def r_max_free(problem: RangeProblem) -> float:
    """Closed-form maximum range with absorption ignored (F = 1).

    For the quantum mode this equals the classical result times
    (1 + 1/N_s)^(1/4), via the threshold rescaling.
    """
    return (_chain_constant(problem) / threshold_linear(problem)) ** 0.25


def r_max(problem: RangeProblem) -> RangeSolution:
    """Maximum range with absorption: the unique R where SNR_eff(R) crosses
    the mode-adjusted threshold.

    Solved by bisection on [epsilon, r_max_free]; the free-space range is a
    guaranteed upper bound because F <= 1.  With gamma = 0 the closed form
    is returned directly.  Raises :class:`NoDetectionError` when the target
    is already below threshold at near-zero range.
    """
    threshold = threshold_linear(problem)
    r_free = r_max_free(problem)

    lo = _BRACKET_LO_M
    if _snr_eff_at(problem, lo) < threshold:
        raise NoDetectionError(
            f"SNR_eff at {lo} m is already below threshold; no detection range exists"
        )

    if problem.gamma_db_per_km == 0.0:
        residual = abs(10.0 * math.log10(_snr_eff_at(problem, r_free) / threshold))
        return RangeSolution(
            r_max_m=r_free,
            residual_db=residual,
            iterations=0,
            bracket=(r_free, r_free),
            converged=residual < _RESIDUAL_TOL_DB,
        )

    hi = r_free
    iterations = 0
    while iterations < _MAX_ITERATIONS:
        mid = 0.5 * (lo + hi)
        if (hi - lo) <= _RELATIVE_WIDTH_TOL * mid:
            break
        if _snr_eff_at(problem, mid) >= threshold:
            lo = mid
        else:
            hi = mid
        iterations += 1

    root = 0.5 * (lo + hi)
    residual = abs(10.0 * math.log10(_snr_eff_at(problem, root) / threshold))
    width_converged = (hi - lo) <= _RELATIVE_WIDTH_TOL * root
    converged = width_converged and residual < _RESIDUAL_TOL_DB
    return RangeSolution(
        r_max_m=root,
        residual_db=residual,
        iterations=iterations,
        bracket=(lo, hi),
        converged=converged,
    )


def _validated_grid(n_s_grid: Sequence[float]) -> tuple[float, ...]:
    grid = tuple(float(v) for v in n_s_grid)
    if not grid:
        raise DomainError("grid must not be empty")
    previous = None
    for value in grid:
        if not (math.isfinite(value) and value > 0.0):
            raise DomainError(f"grid values must be positive and finite, got {value!r}")
        if previous is not None and value <= previous:
            raise DomainError("grid must be strictly increasing")
        previous = value
    return grid


def sweep_range(
    make_problem: Callable[[float, float, Illumination], RangeProblem],
    n_s_grid: Sequence[float],
    frequencies_hz: Iterable[float],
    modes: Iterable[Illumination],
) -> SweepResult:
    """Solve r_max over the (N_s, frequency, mode) product grid.

    ``make_problem`` builds the point problem; points where no detection
    range exists are recorded as ``None``, never as zero.  Series order is
    frequency-major, then mode, then N_s.
    """
    grid = _validated_grid(n_s_grid)
    series: list[SweepSeries] = []
    for f_hz in frequencies_hz:
        for mode in modes:
            values: list[float | None] = []
            for n_s in grid:
                try:
                    values.append(r_max(make_problem(n_s, f_hz, mode)).r_max_m)
                except NoDetectionError:
                    values.append(None)
            series.append(
                SweepSeries(frequency_hz=float(f_hz), mode=mode, values=tuple(values))
            )
    return SweepResult(axis=grid, series=tuple(series))


def sweep_ratio(n_s_grid: Sequence[float]) -> SweepResult:
    """Classical/quantum correlation ratio over an N_s grid (single series)."""
    grid = _validated_grid(n_s_grid)
    values = tuple(correlation_ratio(n_s) for n_s in grid)
    return SweepResult(
        axis=grid,
        series=(SweepSeries(frequency_hz=None, mode=None, values=values),),
    )
