"""Scenario configuration: the benchmark parameter set and JSON persistence.

The default :class:`ScenarioConfig` carries the benchmark scenario this
package reproduces: sigma = 1 m^2, A = 0.5 m^2, B = 1 GHz, tau = 1 s,
P_B = -63.82 dBm, SNR_min = 10 dB, P_d = 0.7, P_fa = 1e-6, and the
frequency set {7 GHz, 95 GHz, 1 THz}.  Configs persist as a flat JSON
object using the field names below; omitted fields fall back to these
defaults, unknown fields are rejected.

The noise budget is specified as a noise *power*, so the effective
temperature and the per-frequency occupancy N_B are always derived, never
configured directly.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass
from pathlib import Path

from . import atmosphere, radiometry
from .constants import TEXTBOOK, PhysicalConstants
from .errors import ConfigError, DomainError
from .link_budget import DetectionSpec, IntegrationSpec, RadarParams
from .range_solver import Illumination, RangeProblem

#: Environment variable consulted for a config path when none is given.
CONFIG_ENV_VAR = "QI_RANGEKIT_CONFIG"


@dataclass(frozen=True)
class ScenarioConfig:
    sigma_m2: float = 1.0
    aperture_m2: float = 0.5
    bandwidth_hz: float = 1e9
    tau_s: float = 1.0
    noise_power_dbm: float = -63.82
    snr_min_db: float = 10.0
    p_d: float = 0.7
    p_fa: float = 1e-6
    frequencies_hz: tuple[float, ...] = (7e9, 95e9, 1e12)
    attenuation_table_path: str | None = None
    four_pi_exponent: int = 2

    def __post_init__(self) -> None:
        for name in ("sigma_m2", "aperture_m2", "bandwidth_hz", "tau_s"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
                raise ConfigError(f"{name} must be positive and finite, got {value!r}")
        if not math.isfinite(self.noise_power_dbm):
            raise ConfigError(f"noise_power_dbm must be finite, got {self.noise_power_dbm!r}")
        if not (0.0 < self.p_fa < self.p_d < 1.0):
            raise ConfigError(
                f"need 0 < p_fa < p_d < 1, got p_fa={self.p_fa!r}, p_d={self.p_d!r}"
            )
        if not math.isfinite(self.snr_min_db):
            raise ConfigError(f"snr_min_db must be finite, got {self.snr_min_db!r}")
        frequencies = tuple(float(f) for f in self.frequencies_hz)
        if not frequencies:
            raise ConfigError("frequencies_hz must not be empty")
        for f_hz in frequencies:
            if not (math.isfinite(f_hz) and f_hz > 0):
                raise ConfigError(f"frequencies must be positive and finite, got {f_hz!r}")
        object.__setattr__(self, "frequencies_hz", frequencies)
        if self.four_pi_exponent not in (2, 4):
            raise ConfigError(
                f"four_pi_exponent must be 2 or 4, got {self.four_pi_exponent!r}"
            )

    # Derived scenario quantities -------------------------------------------

    def noise_power_watts(self) -> float:
        return radiometry.dbm_to_watts(self.noise_power_dbm)

    def t_eff_kelvin(self, constants: PhysicalConstants = TEXTBOOK) -> float:
        """Effective noise temperature implied by the configured noise power."""
        return radiometry.t_eff_from_noise_power(
            self.noise_power_watts(), self.bandwidth_hz, constants
        )

    def noise_occupancy(self, f_hz: float, constants: PhysicalConstants = TEXTBOOK) -> float:
        """Thermal photons per mode at a frequency; frequency dependent."""
        return radiometry.thermal_occupancy(self.t_eff_kelvin(constants), f_hz, constants)

    def radar_params(self) -> RadarParams:
        return RadarParams(sigma_m2=self.sigma_m2, aperture_m2=self.aperture_m2)

    def detection_spec(self) -> DetectionSpec:
        return DetectionSpec(p_d=self.p_d, p_fa=self.p_fa, snr_min_db=self.snr_min_db)

    def integration_spec(self) -> IntegrationSpec:
        return IntegrationSpec(tau_s=self.tau_s, bandwidth_hz=self.bandwidth_hz)

    def load_attenuation_table(self) -> atmosphere.AttenuationTable | None:
        if self.attenuation_table_path is None:
            return None
        return atmosphere.load_table(self.attenuation_table_path)

    def make_problem(
        self,
        n_s: float,
        f_hz: float,
        mode: Illumination,
        table: atmosphere.AttenuationTable | None = None,
        constants: PhysicalConstants = TEXTBOOK,
    ) -> RangeProblem:
        """Assemble the range problem for one (N_s, frequency, mode) point.

        ``table`` overrides the configured attenuation table; with neither,
        the path is lossless (gamma = 0).
        """
        gamma = 0.0
        if table is not None:
            gamma = atmosphere.gamma_at(table, f_hz)
        return RangeProblem(
            radar=self.radar_params(),
            detection=self.detection_spec(),
            integration=self.integration_spec(),
            n_s=n_s,
            f_hz=f_hz,
            n_b=self.noise_occupancy(f_hz, constants),
            gamma_db_per_km=gamma,
            mode=mode,
            four_pi_exponent=self.four_pi_exponent,
            constants=constants,
        )


def dump_config(config: ScenarioConfig) -> str:
    """Serialize to JSON that :func:`parse_config` reloads identically."""
    payload = asdict(config)
    payload["frequencies_hz"] = list(config.frequencies_hz)
    return json.dumps(payload, indent=2) + "\n"


def parse_config(text: str) -> ScenarioConfig:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from exc
    if not isinstance(payload, dict):
        raise ConfigError("config must be a JSON object")
    known = set(ScenarioConfig.__dataclass_fields__)
    unknown = set(payload) - known
    if unknown:
        raise ConfigError(f"unknown config fields: {sorted(unknown)}")
    if "frequencies_hz" in payload:
        value = payload["frequencies_hz"]
        if not isinstance(value, list):
            raise ConfigError("frequencies_hz must be a JSON array")
        payload["frequencies_hz"] = tuple(value)
    try:
        return ScenarioConfig(**payload)
    except DomainError as exc:
        raise ConfigError(str(exc)) from exc


def load_config(path: str | Path) -> ScenarioConfig:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    return parse_config(text)
