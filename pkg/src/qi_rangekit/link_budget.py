"""Monostatic link budget: antenna gain, channel transmissivity, SNR chain.

The chain is the standard radar one specialized to a photon-counting view:

* gain G = 4*pi*A / lambda^2 for effective aperture A,
* transmissivity eta = sigma * G * A * F^2 / ((4*pi)^2 * R^4),
* SNR = eta * N_s / N_B, identically equal to P_r / P_B,
* SNR_eff = M * SNR after lossless coherent integration over M = round(tau*B)
  independent measurements.

A computed eta > 1 is rejected, not clamped: it means the far-field model
was applied inside the near field and any downstream range solution would
be silently wrong.

The detection threshold SNR_min is a configured input.  The Albersheim
closed-form estimator is provided as an advisory cross-check only; for
P_d = 0.7, P_fa = 1e-6, M = 1 it returns ~12.1 dB where the configured
default is 10 dB, and it never silently substitutes the configured value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .constants import TEXTBOOK, PhysicalConstants
from .errors import DomainError, UnphysicalGeometryError

_FOUR_PI = 4.0 * math.pi


def _require_positive(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value) or value <= 0.0:
        raise DomainError(f"{name} must be positive and finite, got {value!r}")
    return value


@dataclass(frozen=True)
class RadarParams:
    """Target cross section and effective antenna aperture, both in m^2.

    Gain and wavelength are derived on demand from frequency, never stored.
    """

    sigma_m2: float
    aperture_m2: float

    def __post_init__(self) -> None:
        _require_positive("target cross section", self.sigma_m2)
        _require_positive("antenna aperture", self.aperture_m2)

    def gain(self, f_hz: float, constants: PhysicalConstants = TEXTBOOK) -> float:
        return antenna_gain(self.aperture_m2, f_hz, constants)


@dataclass(frozen=True)
class DetectionSpec:
    """Detection operating point: P_d, P_fa, and the configured SNR_min [dB]."""

    p_d: float
    p_fa: float
    snr_min_db: float

    def __post_init__(self) -> None:
        if not (0.0 < self.p_fa < self.p_d < 1.0):
            raise DomainError(
                f"need 0 < p_fa < p_d < 1, got p_fa={self.p_fa!r}, p_d={self.p_d!r}"
            )
        if not math.isfinite(self.snr_min_db):
            raise DomainError(f"snr_min_db must be finite, got {self.snr_min_db!r}")

    @property
    def snr_min_linear(self) -> float:
        return 10.0 ** (self.snr_min_db / 10.0)


@dataclass(frozen=True)
class IntegrationSpec:
    """Integration time and bandwidth; the measurement count M = round(tau*B)."""

    tau_s: float
    bandwidth_hz: float

    def __post_init__(self) -> None:
        _require_positive("integration time", self.tau_s)
        _require_positive("bandwidth", self.bandwidth_hz)
        if self.pulse_count < 1:
            raise DomainError(
                f"tau * B = {self.tau_s * self.bandwidth_hz!r} rounds below 1 measurement"
            )

    @property
    def pulse_count(self) -> int:
        return round(self.tau_s * self.bandwidth_hz)


@dataclass(frozen=True)
class LinkBudget:
    """Derived link quantities at one (range, N_s, frequency) point."""

    eta: float
    f_form: float
    snr: float
    snr_eff: float
    p_r_watts: float


def antenna_gain(
    aperture_m2: float, f_hz: float, constants: PhysicalConstants = TEXTBOOK
) -> float:
    """Antenna gain G = 4*pi*A/lambda^2 = 4*pi*A*f^2/c^2 (dimensionless)."""
    aperture_m2 = _require_positive("antenna aperture", aperture_m2)
    f_hz = _require_positive("frequency", f_hz)
    return _FOUR_PI * aperture_m2 * f_hz**2 / constants.c**2


def channel_transmissivity(
    sigma_m2: float,
    gain: float,
    aperture_m2: float,
    f_form: float,
    r_m: float,
) -> float:
    """Round-trip power transmissivity eta = sigma*G*A*F^2 / ((4*pi)^2 * R^4).

    ``f_form`` is the one-way atmospheric form factor; it enters squared here
    and nowhere else.  Raises :class:`UnphysicalGeometryError` if the result
    exceeds 1, which indicates a near-field query the model cannot describe.
    """
    sigma_m2 = _require_positive("target cross section", sigma_m2)
    gain = _require_positive("gain", gain)
    aperture_m2 = _require_positive("antenna aperture", aperture_m2)
    f_form = float(f_form)
    if not (0.0 < f_form <= 1.0):
        raise DomainError(f"form factor must be in (0, 1], got {f_form!r}")
    r_m = _require_positive("range", r_m)
    eta = sigma_m2 * gain * aperture_m2 * f_form**2 / (_FOUR_PI**2 * r_m**4)
    if eta > 1.0:
        raise UnphysicalGeometryError(
            f"computed transmissivity {eta!r} > 1 at range {r_m!r} m; "
            "the far-field model does not apply this close to the antenna"
        )
    return eta


def received_power(p_t_watts: float, eta: float) -> float:
    """Received signal power P_r = eta * P_t."""
    p_t_watts = _require_positive("transmit power", p_t_watts)
    eta = float(eta)
    if not (0.0 < eta <= 1.0):
        raise DomainError(f"transmissivity must be in (0, 1], got {eta!r}")
    return p_t_watts * eta


def snr(eta: float, n_s: float, n_b: float) -> float:
    """Single-measurement signal-to-noise ratio eta * N_s / N_B (linear)."""
    eta = float(eta)
    if not (0.0 < eta <= 1.0):
        raise DomainError(f"transmissivity must be in (0, 1], got {eta!r}")
    n_s = _require_positive("photons per mode", n_s)
    n_b = _require_positive("noise occupancy", n_b)
    return eta * n_s / n_b


def snr_eff(eta: float, m: int, n_s: float, n_b: float) -> float:
    """Effective SNR after integrating M i.i.d. measurements: M * eta * N_s / N_B."""
    m = int(m)
    if m < 1:
        raise DomainError(f"measurement count must be >= 1, got {m!r}")
    return m * snr(eta, n_s, n_b)


def evaluate_link(
    *,
    sigma_m2: float,
    aperture_m2: float,
    f_hz: float,
    b_hz: float,
    n_s: float,
    n_b: float,
    m: int,
    r_m: float,
    gamma_db_per_km: float = 0.0,
    constants: PhysicalConstants = TEXTBOOK,
) -> LinkBudget:
    """Assemble the full budget at one point: eta, F, SNR, SNR_eff, P_r."""
    from . import atmosphere, radiometry  # local to avoid a cycle at import time

    f_form = atmosphere.form_factor(gamma_db_per_km, r_m)
    gain = antenna_gain(aperture_m2, f_hz, constants)
    eta = channel_transmissivity(sigma_m2, gain, aperture_m2, f_form, r_m)
    p_t = radiometry.transmit_power(n_s, f_hz, b_hz, constants)
    return LinkBudget(
        eta=eta,
        f_form=f_form,
        snr=snr(eta, n_s, n_b),
        snr_eff=snr_eff(eta, m, n_s, n_b),
        p_r_watts=received_power(p_t, eta),
    )


def albersheim_snr_min(p_d: float, p_fa: float, m: int) -> float:
    """Albersheim's closed-form estimate of the required SNR [dB].

    Valid for 0.1 <= p_d <= 0.9, 1e-7 <= p_fa <= 1e-3, 1 <= m <= 8096;
    outside that box the approximation is not certified and a DomainError
    is raised.  Advisory only: it does not replace a configured threshold.
    """
    p_d = float(p_d)
    p_fa = float(p_fa)
    m = int(m)
    if not (0.1 <= p_d <= 0.9):
        raise DomainError(f"p_d={p_d!r} outside the Albersheim validity box [0.1, 0.9]")
    if not (1e-7 <= p_fa <= 1e-3):
        raise DomainError(f"p_fa={p_fa!r} outside the Albersheim validity box [1e-7, 1e-3]")
    if not (1 <= m <= 8096):
        raise DomainError(f"m={m!r} outside the Albersheim validity box [1, 8096]")
    a = math.log(0.62 / p_fa)
    b = math.log(p_d / (1.0 - p_d))
    return -5.0 * math.log10(m) + (6.2 + 4.54 / math.sqrt(m + 0.44)) * math.log10(
        a + 0.12 * a * b + 1.7 * b
    )
