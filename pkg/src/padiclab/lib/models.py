# Pydantic models for padiclab scenario documents and JSON reports

import hashlib
import json
from enum import StrEnum
from pathlib import Path
from typing import Any

from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    NonNegativeInt,
    PositiveFloat,
    PositiveInt,
    ValidationError,
    model_validator,
)

from padiclab import __version__
from padiclab.lib.constants import MIN_SCREEN_BINS
from padiclab.lib.exceptions import ScenarioError
from padiclab.lib.padic_core import is_prime


class ScenarioName(StrEnum):
    SEQUENTIAL = "sequential"
    FRESH_APPARATUS = "fresh-apparatus-ensemble"
    CYCLE_RESET = "cycle-reset"
    RATE_SWEEP = "rate-sweep"
    EXPONENTIAL_SCHEDULE = "exponential-schedule"
    RANDOM_TWO_SLIT = "random-two-slit"
    SCREENS_ONLY = "screens-only"


class KernelSite(StrEnum):
    SOURCE = "source"
    APERTURE = "aperture"
    SCREEN = "screen"


class ApparatusConfig(BaseModel):
    """Point-slit geometry; the screen spans [-screen_half_width, screen_half_width]."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    slit_positions: tuple[float, ...] = Field(default=(-5e-5, 5e-5), min_length=1)
    wavelength: PositiveFloat = 5e-7
    screen_distance: PositiveFloat = 1.0
    screen_bins: int = Field(default=41, ge=MIN_SCREEN_BINS)
    screen_half_width: PositiveFloat = 0.01025

    @classmethod
    def uniform(cls, slit_count: int, spacing: float = 1e-4, **kwargs: Any) -> "ApparatusConfig":
        """`slit_count` slits spaced `spacing` apart, centered on the axis."""
        offset = (slit_count - 1) * spacing / 2
        return cls(slit_positions=tuple(j * spacing - offset for j in range(slit_count)), **kwargs)

    @property
    def slit_count(self) -> int:
        return len(self.slit_positions)


class MemoryKernel(BaseModel):
    """Inter-trial memory; strength 0 switches memory off (standard quantum sampling)."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    site: KernelSite = KernelSite.APERTURE
    strength: float = Field(default=0.0, ge=0.0, le=1.0)
    effective_strength: float = Field(default=1.0, ge=0.0, le=1.0)
    time_constant: PositiveFloat | None = None  # None means no decay
    recency_window: PositiveInt = 100


class RenewalPolicy(BaseModel):
    """Apparatus parts replaced after every trial."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    source: bool = False
    shield: bool = False
    screen: bool = False


SCENARIO_RENEWAL = {
    ScenarioName.FRESH_APPARATUS: RenewalPolicy(source=True, shield=True, screen=True),
    ScenarioName.RANDOM_TWO_SLIT: RenewalPolicy(screen=True),
    ScenarioName.SCREENS_ONLY: RenewalPolicy(screen=True),
}


class ScenarioSpec(BaseModel):
    """A complete, seeded description of one simulator run."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    scenario: ScenarioName
    trials: PositiveInt
    seed: NonNegativeInt
    apparatus: ApparatusConfig = ApparatusConfig()
    kernel: MemoryKernel = MemoryKernel()
    renewal: RenewalPolicy | None = None
    rate: PositiveFloat = 1.0
    open_slits: tuple[NonNegativeInt, ...] | None = None
    cycle_length: PositiveInt | None = None
    rates: tuple[PositiveFloat, ...] | None = None
    prime: int | None = None
    time_unit: PositiveFloat = 1.0
    window: PositiveFloat | None = None  # Counting window (seconds) for the Poisson test

    @model_validator(mode="after")
    def _check_scenario(self) -> "ScenarioSpec":
        slit_count = self.apparatus.slit_count
        if self.open_slits is not None:
            if not self.open_slits:
                raise ValueError("open_slits must not be empty")
            bad = [j for j in self.open_slits if j >= slit_count]
            if bad:
                raise ValueError(f"open_slits {bad} outside 0..{slit_count - 1}")
        if self.scenario is ScenarioName.CYCLE_RESET and self.cycle_length is None:
            raise ValueError("cycle-reset requires cycle_length")
        if self.scenario is ScenarioName.RATE_SWEEP and not self.rates:
            raise ValueError("rate-sweep requires a non-empty rates list")
        if self.scenario is ScenarioName.EXPONENTIAL_SCHEDULE and (
            self.prime is None or not is_prime(self.prime)
        ):
            raise ValueError(f"exponential-schedule requires a prime, got {self.prime!r}")
        if self.scenario is ScenarioName.RANDOM_TWO_SLIT and (
            slit_count < 2 or slit_count & (slit_count - 1)
        ):
            raise ValueError(f"random-two-slit needs a power-of-two slit count, got {slit_count}")
        return self

    @property
    def renewal_policy(self) -> RenewalPolicy:
        if self.renewal is not None:
            return self.renewal
        return SCENARIO_RENEWAL.get(self.scenario, RenewalPolicy())

    def canonical_json(self) -> str:
        return json.dumps(self.model_dump(mode="json"), sort_keys=True, separators=(",", ":"))

    def spec_hash(self) -> str:
        return hashlib.sha256(self.canonical_json().encode("utf-8")).hexdigest()


def format_validation_errors(error: ValidationError) -> list[str]:
    return [
        f"{'.'.join(str(part) for part in item['loc']) or '<root>'}: {item['msg']}"
        for item in error.errors()
    ]


def load_scenario(source: str | Path | dict[str, Any]) -> ScenarioSpec:
    """Validate a scenario document, reporting every violation at once."""
    try:
        if isinstance(source, dict):
            return ScenarioSpec.model_validate(source)
        text = Path(source).read_text(encoding="utf-8")
        return ScenarioSpec.model_validate_json(text)
    except ValidationError as e:
        problems = format_validation_errors(e)
        raise ScenarioError(
            f"Scenario has {len(problems)} problem(s):\n  - " + "\n  - ".join(problems)
        ) from e


# -------------Reports---------------


class Provenance(BaseModel):
    tool: str = "padiclab"
    version: str = __version__
    command: str
    seed: int | None = None
    spec_hash: str | None = None
    parameters: dict[str, Any] = {}


class DispersionSummary(BaseModel):
    windows: int
    mean: float
    dispersion: float
    statistic: float
    p_value: float
    verdict: str


class SimulationSummary(BaseModel):
    provenance: Provenance
    scenario: ScenarioName
    trials: int
    visibility: float
    group_coherence: dict[str, float] = {}
    pooled_coherence: float | None = None
    chi_square_p_value: float | None = None
    poisson: DispersionSummary | None = None
    artifacts: dict[str, str] = {}


class StabilizationSummary(BaseModel):
    topology: str
    status: str
    limit: str | None = None
    complement_limit: str | None = None
    evidence: str | None = None


class VerdictReport(BaseModel):
    provenance: Provenance
    length: int
    prime: int
    collective: str
    real: StabilizationSummary
    padic: StabilizationSummary
    growth: dict[str, Any] | None = None
