from pydantic import BaseModel, BeforeValidator, ConfigDict, Field, PlainSerializer, computed_field, field_validator
from typing import Annotated, Any, Optional
from pathlib import Path
from enum import Enum
import math

import numpy as np

import config


def _to_complex(value: Any) -> complex:
    if isinstance(value, (list, tuple)):
        return complex(float(value[0]), float(value[1]))
    return complex(value)


# Complex numbers travel through JSON as [re, im]
ComplexPair = Annotated[
    complex,
    BeforeValidator(_to_complex),
    PlainSerializer(lambda z: [float(z.real), float(z.imag)], return_type=list),
]


# --- Enumerations ---

class Variant(str, Enum):
    """The two normalizations of a logharmonic map."""
    NONVANISHING = "NONVANISHING"  # f = e^h conj(e^g)
    ORIGIN_FIXED = "ORIGIN_FIXED"  # f = z e^h conj(e^g)


class Preset(str, Enum):
    """Named closed-form analytic maps."""
    IDENTITY = "IDENTITY"
    KOEBE_LOG = "KOEBE_LOG"
    LOG1P = "LOG1P"
    QUAD = "QUAD"
    MOBIUS = "MOBIUS"
    MOBIUS_PLUS = "MOBIUS_PLUS"
    SCALEZ = "SCALEZ"
    NEGZ = "NEGZ"
    CONST = "CONST"
    BLASCHKE = "BLASCHKE"
    HERGLOTZ = "HERGLOTZ"
    DILATATION = "DILATATION"
    PRIMITIVE = "PRIMITIVE"


class MapKind(str, Enum):
    SERIES = "SERIES"
    PRESET = "PRESET"


class DeriveMode(str, Enum):
    """How a manifest turns a dilatation into g."""
    SERIES = "series"
    CLOSED_FORM = "closed_form"


class Verdict(str, Enum):
    PASS_CRITERION = "PASS_CRITERION"
    FAIL_CRITERION = "FAIL_CRITERION"
    FIELD_NEGATIVE = "FIELD_NEGATIVE"


class GrowthReading(str, Enum):
    """Which closed form of the growth bound agrees with the quadrature oracle."""
    PROOF = "PROOF"
    PRINTED = "PRINTED"
    BOTH = "BOTH"
    NEITHER = "NEITHER"


class Subcommand(str, Enum):
    NORM = "norm"
    BLOCH = "bloch"
    HARMONIC_NORM = "harmonic-norm"
    VERIFY_SHARPNESS = "verify-sharpness"
    VERIFY_GROWTH = "verify-growth"
    STARLIKE = "starlike"
    RENDER = "render"
    RANDOM_SUITE = "random-suite"


class OutputFormat(str, Enum):
    JSON = "json"
    CSV = "csv"
    SVG = "svg"


# --- Grids ---

class GridSpec(BaseModel):
    """Discretization of the disk used by every supremum or minimum search."""
    model_config = ConfigDict(frozen=True)

    radii_count: int = Field(default=config.NORM_RADII, ge=8)
    angles_count: int = Field(default=config.NORM_ANGLES, ge=8)
    r_max: float = Field(default=config.NORM_R_MAX, gt=0.0, le=1 - 1e-6)
    refine_iters: int = Field(default=config.REFINE_ITERS, ge=0)
    bracket_tol: float = Field(default=config.BRACKET_TOL, gt=0.0)

    @classmethod
    def class_r_default(cls) -> "GridSpec":
        return cls(radii_count=config.CLASS_R_RADII, angles_count=config.CLASS_R_ANGLES, r_max=config.CLASS_R_R_MAX)

    @classmethod
    def starlike_default(cls) -> "GridSpec":
        return cls(radii_count=config.STARLIKE_RADII, angles_count=config.STARLIKE_ANGLES, r_max=config.STARLIKE_R_MAX)

    def chebyshev_radii(self) -> np.ndarray:
        """
        0 = r_0 < ... < r_n = r_max with r_i = r_max sin(pi i / 2n), clustered
        towards r_max. Doubling n keeps every radius, so refined grids are nested.
        """
        i = np.arange(self.radii_count + 1)
        return self.r_max * np.sin(np.pi * i / (2 * self.radii_count))

    def uniform_radii(self, r_min: float = 0.0) -> np.ndarray:
        return np.linspace(r_min, self.r_max, self.radii_count)

    def angles(self) -> np.ndarray:
        return 2 * np.pi * np.arange(self.angles_count) / self.angles_count

    def refined(self) -> "GridSpec":
        """The grid with both counts doubled."""
        return self.model_copy(update={"radii_count": 2 * self.radii_count, "angles_count": 2 * self.angles_count})


# --- Reports ---

class SupremumReport(BaseModel):
    """Result of a search for sup (1 - |z|^2) |P(z)| over the disk."""
    value: float
    argmax: ComplexPair
    boundary_divergent: bool
    radial_profile: list[tuple[float, float]]
    failed_points: int = 0


class ClassRCertificate(BaseModel):
    min_re_hprime: float
    argmin: ComplexPair
    grid_spec: GridSpec
    normalized: bool

    @computed_field
    @property
    def member(self) -> bool:
        # numerical evidence only
        return self.min_re_hprime > 0 and self.normalized


class SharpnessScan(BaseModel):
    t: float
    sup_E: float
    argmax_r: float
    samples: list[tuple[float, float]] = []


class SharpnessSweep(BaseModel):
    """sharpness_scan over an increasing family of t values."""
    scans: list[SharpnessScan]
    monotone: bool
    extrapolated_limit: Optional[float] = None
    max_E: float

    @computed_field
    @property
    def bound_respected(self) -> bool:
        return self.max_E <= 11 + 1e-9


class NormCrossCheck(BaseModel):
    t: float
    disk_sup: float
    axis_sup: float
    difference: float
    disk_argmax: ComplexPair
    argmax_is_real: bool


class GrowthBoundReport(BaseModel):
    alpha: float
    r_samples: list[float]
    lhs: list[float]
    rhs_paper_formula: list[float]
    rhs_proof_reading: list[float]
    rhs_oracle: list[float]
    max_violation: float
    max_relative_gap: float
    oracle_confirms: GrowthReading


class StarlikeReport(BaseModel):
    model_config = ConfigDict(ser_json_inf_nan="strings")

    coefficient_sum: float
    tail_bound: float
    min_re_field: float
    witness: ComplexPair
    grid_spec: GridSpec
    verdict: Verdict
    oracle_discrepancy: Optional[float] = None
    conclusion: str = "fully starlike (criterion)"
    univalence: str = "untested"

    @property
    def criterion_decided(self) -> bool:
        return math.isfinite(self.tail_bound)


# --- Curves ---

class Curve(BaseModel):
    """A sampled image curve; ``parameter`` is r for circles and theta for rays."""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    parameter: float
    radii: np.ndarray
    thetas: np.ndarray
    points: np.ndarray

    @property
    def closed(self) -> bool:
        return bool(abs(self.points[0] - self.points[-1]) <= 1e-9)


class CurveSet(BaseModel):
    circles: list[Curve] = []
    rays: list[Curve] = []
    meta: dict[str, Any] = {}

    @property
    def curves(self) -> list[Curve]:
        return self.circles + self.rays

    @property
    def is_empty(self) -> bool:
        return not self.circles and not self.rays

    def outermost(self) -> Curve:
        return max(self.circles, key=lambda c: c.parameter)


# --- Random Suite ---

class SuiteInstance(BaseModel):
    """One random L_R instance: eps = e^{i phi} s z B_eps and omega = e^{i psi} s B_omega."""
    epsilon_zeros: list[ComplexPair] = []
    epsilon_rotation: float = 0.0
    omega_zeros: list[ComplexPair]
    omega_rotation: float = 0.0
    scale: float = Field(default=0.99, gt=0.0, lt=1.0)

    @field_validator("epsilon_zeros", "omega_zeros")
    @classmethod
    def _inside_disk(cls, zeros: list[complex]) -> list[complex]:
        if any(abs(a) >= 1 for a in zeros):
            raise ValueError("Blaschke zeros must lie in the open unit disk")
        return zeros


class InstanceResult(BaseModel):
    index: int
    norm: float
    bloch: float
    harmonic_norm: float
    growth_violation: Optional[float] = None
    norm_argmax: ComplexPair = 0j


class SuiteReport(BaseModel):
    seed: int
    count: int
    results: list[InstanceResult]
    max_norm: float
    max_bloch: float
    max_harmonic_norm: float
    max_growth_violation: Optional[float] = None
    violations: list[dict[str, Any]] = []

    @computed_field
    @property
    def bounds_hold(self) -> bool:
        return not self.violations


# --- CLI ---

class RunConfig(BaseModel):
    """Everything a single CLI invocation needs."""
    subcommand: Subcommand
    manifest: Optional[Path] = None
    grid_radii: Optional[int] = None
    grid_angles: Optional[int] = None
    r_max: Optional[float] = None
    refine_iters: Optional[int] = None
    order: int = Field(default=config.SERIES_ORDER, ge=1)
    seed: int = 0
    count: int = Field(default=200, ge=1)
    out: Optional[Path] = None
    format: OutputFormat = OutputFormat.JSON
    alphas: list[Annotated[float, Field(ge=0.0, le=1.0)]] = []
    ts: list[Annotated[float, Field(gt=0.0, lt=1.0)]] = []
    oracle_radius: Optional[float] = Field(default=None, gt=0.0, lt=1.0)
    instances: Optional[Path] = None
    growth_probes: int = Field(default=8, ge=0)
    cross_check: bool = False

    def grid(self, base: GridSpec) -> GridSpec:
        """``base`` with the command-line overrides applied."""
        overrides = {
            "radii_count": self.grid_radii,
            "angles_count": self.grid_angles,
            "r_max": self.r_max,
            "refine_iters": self.refine_iters,
        }
        return GridSpec(**{**base.model_dump(), **{k: v for k, v in overrides.items() if v is not None}})
