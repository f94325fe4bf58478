"""Photon/power radiometry: photons-per-mode, transmit power, thermal noise.

All powers are plain floats in watts; dBm is a view obtained through
:func:`watts_to_dbm`.  The thermal occupancy uses the Rayleigh-Jeans form
N_B = k_B * T / (h * f) with no Bose-Einstein correction, so that
P_B = k_B * T_eff * B = N_B * h * f * B holds as an exact identity at every
frequency.
"""

from __future__ import annotations

import math

from .constants import TEXTBOOK, PhysicalConstants
from .errors import DomainError


def _require_positive(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value) or value <= 0.0:
        raise DomainError(f"{name} must be positive and finite, got {value!r}")
    return value


def watts_to_dbm(watts: float) -> float:
    """Power in dB relative to 1 mW.  Defined only for positive power."""
    watts = _require_positive("power in watts", watts)
    return 10.0 * math.log10(watts / 1e-3)


def dbm_to_watts(dbm: float) -> float:
    """Inverse of :func:`watts_to_dbm`."""
    dbm = float(dbm)
    if not math.isfinite(dbm):
        raise DomainError(f"power in dBm must be finite, got {dbm!r}")
    return 1e-3 * 10.0 ** (dbm / 10.0)


def transmit_power(
    n_s: float,
    f_hz: float,
    b_hz: float,
    constants: PhysicalConstants = TEXTBOOK,
) -> float:
    """Transmit power P_t = N_s * h * f * B in watts.

    A transmitter emitting ``n_s`` photons per mode at frequency ``f_hz``
    over bandwidth ``b_hz``.  Linear in each argument.
    """
    n_s = _require_positive("photons per mode", n_s)
    f_hz = _require_positive("frequency", f_hz)
    b_hz = _require_positive("bandwidth", b_hz)
    return n_s * constants.h * f_hz * b_hz


def photons_per_mode(
    watts: float,
    f_hz: float,
    b_hz: float,
    constants: PhysicalConstants = TEXTBOOK,
) -> float:
    """Photons per mode carried by ``watts`` at (f, B); inverse of
    :func:`transmit_power`."""
    watts = _require_positive("power in watts", watts)
    f_hz = _require_positive("frequency", f_hz)
    b_hz = _require_positive("bandwidth", b_hz)
    return watts / (constants.h * f_hz * b_hz)


def thermal_occupancy(
    t_kelvin: float,
    f_hz: float,
    constants: PhysicalConstants = TEXTBOOK,
) -> float:
    """Thermal photons per mode N_B = k_B * T / (h * f) (Rayleigh-Jeans)."""
    t_kelvin = _require_positive("temperature", t_kelvin)
    f_hz = _require_positive("frequency", f_hz)
    return constants.k_b * t_kelvin / (constants.h * f_hz)


def noise_power(
    t_kelvin: float,
    b_hz: float,
    constants: PhysicalConstants = TEXTBOOK,
) -> float:
    """Total thermal noise power P_B = k_B * T_eff * B in watts."""
    t_kelvin = _require_positive("temperature", t_kelvin)
    b_hz = _require_positive("bandwidth", b_hz)
    return constants.k_b * t_kelvin * b_hz


def t_eff_from_noise_power(
    p_b_watts: float,
    b_hz: float,
    constants: PhysicalConstants = TEXTBOOK,
) -> float:
    """Effective noise temperature implied by a noise power over a bandwidth;
    inverse of :func:`noise_power`."""
    p_b_watts = _require_positive("noise power in watts", p_b_watts)
    b_hz = _require_positive("bandwidth", b_hz)
    return p_b_watts / (constants.k_b * b_hz)
