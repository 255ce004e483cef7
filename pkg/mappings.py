# mappings.py
"""
Analytic maps, logharmonic maps and the quantities derived from them.

An ``AnalyticMap`` is either a truncated Taylor series or a named closed form
(see ``presets``). A ``LogharmonicMap`` pairs two analytic maps with one of the
two normalizations

    NONVANISHING:  f(z) = e^{h(z)} conj(e^{g(z)})
    ORIGIN_FIXED:  f(z) = z e^{h(z)} conj(e^{g(z)})
"""

import logging
from functools import cached_property
from typing import Any, Optional, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, PrivateAttr, model_validator

import presets
from complexseries import ComplexSeries, antiderivative, derivative, div, evaluate
from exceptions import (
    DegenerateDerivativeError,
    DilatationNotVanishingAtZeroError,
    EvaluationFailureError,
    OriginSingularityError,
    ZeroConstantTermError,
)
from models import ClassRCertificate, GridSpec, MapKind, Preset, Variant

logger = logging.getLogger(__name__)

ORIGIN_TOL = 1e-12
NORMALIZATION_TOL = 1e-10


def as_points(z) -> tuple[np.ndarray, bool]:
    """Returns ``z`` as a complex array and whether the caller passed a scalar."""
    array = np.asarray(z, dtype=complex)
    return array, array.ndim == 0


def restore(values: np.ndarray, scalar: bool):
    return complex(values) if scalar else values


class AnalyticMap(BaseModel):
    """An analytic function on the unit disk, given as a series or a closed form."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    kind: MapKind
    preset: Optional[Preset] = None
    params: dict[str, Any] = {}
    operands: list["AnalyticMap"] = []
    series: Optional[ComplexSeries] = None
    # SERIES only: the coefficients beyond the stored order are exactly zero
    exact: bool = False

    @model_validator(mode="after")
    def _check_representation(self) -> "AnalyticMap":
        if self.kind == MapKind.SERIES:
            if self.series is None:
                raise ValueError("a SERIES map needs its coefficients")
            return self
        if self.preset is None:
            raise ValueError("a PRESET map needs a preset name")
        missing = [name for name in presets.REQUIRED_PARAMS.get(self.preset, ()) if name not in self.params]
        if missing:
            raise ValueError(f"{self.preset.value} is missing parameters {missing}")
        expected = presets.OPERAND_COUNT.get(self.preset, 0)
        if len(self.operands) != expected:
            raise ValueError(f"{self.preset.value} takes {expected} operand maps, got {len(self.operands)}")
        return self

    # --- Constructors ---

    @classmethod
    def from_series(cls, series: ComplexSeries | Sequence[complex], exact: bool = True) -> "AnalyticMap":
        if not isinstance(series, ComplexSeries):
            series = ComplexSeries(coeffs=series)
        return cls(kind=MapKind.SERIES, series=series, exact=exact)

    @classmethod
    def from_preset(cls, preset: Preset | str, operands: Sequence["AnalyticMap"] = (), **params: Any) -> "AnalyticMap":
        return cls(kind=MapKind.PRESET, preset=Preset(preset), params=params, operands=list(operands))

    # --- Evaluation ---

    def derivative_values(self, z, k: int = 0, strict: bool = True):
        """The k-th derivative (k = 0, 1, 2) at ``z``; NaN marks failures when ``strict`` is off."""
        points, scalar = as_points(z)
        if self.kind == MapKind.SERIES:
            values = np.asarray(evaluate(_differentiate(self.series, k), points), dtype=complex)
        else:
            values = presets.evaluate_preset(self.preset, self.params, self.operands, points, k)
        if strict and not np.all(np.isfinite(values)):
            bad = points[~np.isfinite(values)] if not scalar else points
            error = DegenerateDerivativeError if self.preset == Preset.DILATATION else EvaluationFailureError
            raise error(f"{self.label} (derivative {k}) is not finite at {np.ravel(bad)[:3]}")
        return restore(values, scalar)

    def __call__(self, z, strict: bool = True):
        return self.derivative_values(z, 0, strict)

    def d1(self, z, strict: bool = True):
        return self.derivative_values(z, 1, strict)

    def d2(self, z, strict: bool = True):
        return self.derivative_values(z, 2, strict)

    # --- Taylor Series ---

    def to_series(self, order: int) -> ComplexSeries:
        if self.kind == MapKind.SERIES:
            if order <= self.series.order:
                return self.series.truncate(order)
            if not self.exact:
                logger.warning(f"Series of order {self.series.order} requested at order {order}; keeping the shorter series.")
                return self.series
            padded = np.zeros(order + 1, dtype=complex)
            padded[: self.series.order + 1] = self.series.coeffs
            return ComplexSeries(coeffs=padded)
        if self.preset == Preset.PRIMITIVE:
            h, omega = self.operands
            return solve_g_from_dilatation(h, omega, Variant(self.params["variant"]), order).series
        if self.preset == Preset.DILATATION:
            g, h = self.operands
            return _dilatation_series(g.to_series(order + 1), h.to_series(order + 1), Variant(self.params["variant"]))
        return presets.preset_series(self.preset, self.params, self.operands, order)

    @property
    def polynomial_degree(self) -> Optional[int]:
        if self.kind == MapKind.SERIES:
            if not self.exact:
                return None
            nonzero = np.flatnonzero(self.series.coeffs)
            return int(nonzero[-1]) if nonzero.size else 0
        if self.preset == Preset.PRIMITIVE:
            h, omega = self.operands
            if h.polynomial_degree is None or omega.polynomial_degree is None:
                return None
            return h.polynomial_degree + omega.polynomial_degree
        return presets.polynomial_degree(self.preset, self.params)

    @property
    def is_polynomial(self) -> bool:
        return self.polynomial_degree is not None

    @property
    def label(self) -> str:
        if self.kind == MapKind.SERIES:
            return f"SERIES(order={self.series.order})"
        inner = ", ".join(operand.label for operand in self.operands)
        name = presets.describe(self.preset, self.params)
        return f"{name}({inner})" if inner else name


def _differentiate(s: ComplexSeries, k: int) -> ComplexSeries:
    for _ in range(k):
        if s.order == 0:
            return ComplexSeries.constant(0.0, 0)
        s = derivative(s)
    return s


# --- Shorthand Constructors ---


def identity() -> AnalyticMap:
    return AnalyticMap.from_preset(Preset.IDENTITY)


def koebe_log() -> AnalyticMap:
    return AnalyticMap.from_preset(Preset.KOEBE_LOG)


def log1p() -> AnalyticMap:
    return AnalyticMap.from_preset(Preset.LOG1P)


def quad(alpha: float) -> AnalyticMap:
    return AnalyticMap.from_preset(Preset.QUAD, alpha=alpha)


def mobius(t: float) -> AnalyticMap:
    return AnalyticMap.from_preset(Preset.MOBIUS, t=t)


def mobius_plus(alpha: float) -> AnalyticMap:
    return AnalyticMap.from_preset(Preset.MOBIUS_PLUS, alpha=alpha)


def scalez() -> AnalyticMap:
    return AnalyticMap.from_preset(Preset.SCALEZ)


def negz() -> AnalyticMap:
    return AnalyticMap.from_preset(Preset.NEGZ)


def const(c: complex) -> AnalyticMap:
    return AnalyticMap.from_preset(Preset.CONST, c=c)


def blaschke(zeros: Sequence[complex], scale: float = 1.0, rotation: float = 0.0) -> AnalyticMap:
    return AnalyticMap.from_preset(Preset.BLASCHKE, zeros=[complex(a) for a in zeros], scale=scale, rotation=rotation)


def herglotz(epsilon: AnalyticMap) -> AnalyticMap:
    """The class-R map with h' = (1 + eps) / (1 - eps) and h(0) = 0."""
    return AnalyticMap.from_preset(Preset.HERGLOTZ, operands=[epsilon])


AnalyticMap.model_rebuild()


# --- Logharmonic Maps ---


class LogharmonicMap(BaseModel):
    model_config = ConfigDict(frozen=True)

    h: AnalyticMap
    g: AnalyticMap
    variant: Variant = Variant.NONVANISHING
    # the dilatation a map was built from, if any
    _omega: Optional[AnalyticMap] = PrivateAttr(default=None)

    @model_validator(mode="after")
    def _vanish_at_origin(self) -> "LogharmonicMap":
        for name, part in (("h", self.h), ("g", self.g)):
            at_origin = part(0.0, strict=False)
            if not np.isfinite(at_origin) or abs(at_origin) > ORIGIN_TOL:
                raise ValueError(f"{name}(0) must vanish, got {at_origin}")
        return self

    @classmethod
    def from_dilatation(
        cls, h: AnalyticMap, omega: AnalyticMap, variant: Variant = Variant.NONVANISHING, order: Optional[int] = None
    ) -> "LogharmonicMap":
        """
        Builds f from h and its dilatation. ``order=None`` keeps g in closed
        form (exact up to the boundary); an integer expands g as a series.
        """
        if order is not None:
            f = cls(h=h, g=solve_g_from_dilatation(h, omega, variant, order), variant=variant)
        else:
            if variant == Variant.ORIGIN_FIXED:
                _require_vanishing_dilatation(omega)
            g = AnalyticMap.from_preset(Preset.PRIMITIVE, operands=[h, omega], variant=variant.value)
            f = cls(h=h, g=g, variant=variant)
        f._omega = omega
        return f

    @cached_property
    def dilatation(self) -> AnalyticMap:
        if self._omega is not None:
            return self._omega
        return dilatation(self)

    def __call__(self, z):
        return evaluate_f(self, z)


# --- Operations ---


def check_class_R(h: AnalyticMap, grid: Optional[GridSpec] = None) -> ClassRCertificate:
    """Probes Re h' > 0 on a polar grid. A certificate, not a proof."""
    grid = grid or GridSpec.class_r_default()
    points = grid.uniform_radii()[:, None] * np.exp(1j * grid.angles())[None, :]
    re_hprime = h.d1(points).real
    index = np.unravel_index(np.argmin(re_hprime), re_hprime.shape)
    normalized = abs(h(0.0)) <= NORMALIZATION_TOL and abs(h.d1(0.0) - 1) <= NORMALIZATION_TOL
    certificate = ClassRCertificate(
        min_re_hprime=float(re_hprime[index]),
        argmin=complex(points[index]),
        grid_spec=grid,
        normalized=normalized,
    )
    logger.info(f"Class R probe of {h.label}: min Re h' = {certificate.min_re_hprime:.6g}, member={certificate.member}")
    return certificate


def _dilatation_series(g_series: ComplexSeries, h_series: ComplexSeries, variant: Variant) -> ComplexSeries:
    g1, h1 = derivative(g_series), derivative(h_series)
    try:
        if variant == Variant.NONVANISHING:
            return div(g1, h1)
        z = ComplexSeries.variable(g1.order)
        return div(z * g1, ComplexSeries.constant(1.0, h1.order) + z * h1)
    except ZeroConstantTermError as e:
        raise DegenerateDerivativeError(f"dilatation denominator vanishes at 0: {e}") from e


def _dilatation(f: LogharmonicMap, variant: Variant) -> AnalyticMap:
    if f.variant != variant:
        raise ValueError(f"expected a {variant.value} map, got {f.variant.value}")
    if f.h.kind == MapKind.SERIES and f.g.kind == MapKind.SERIES:
        orders = (f.h.series.order, f.g.series.order)
        # exact polynomials can be padded, anything else is cut to the shorter series
        order = max(max(orders), 1) if f.h.exact and f.g.exact else min(orders)
        omega = _dilatation_series(f.g.to_series(order), f.h.to_series(order), variant)
        return AnalyticMap.from_series(omega, exact=False)
    return AnalyticMap.from_preset(Preset.DILATATION, operands=[f.g, f.h], variant=variant.value)


def dilatation_nonvanishing(f: LogharmonicMap) -> AnalyticMap:
    """omega = g'/h'."""
    return _dilatation(f, Variant.NONVANISHING)


def dilatation_origin_fixed(f: LogharmonicMap) -> AnalyticMap:
    """omega = z g' / (1 + z h'), which vanishes at 0."""
    return _dilatation(f, Variant.ORIGIN_FIXED)


def dilatation(f: LogharmonicMap) -> AnalyticMap:
    if f.variant == Variant.NONVANISHING:
        return dilatation_nonvanishing(f)
    return dilatation_origin_fixed(f)


def _require_vanishing_dilatation(omega: AnalyticMap) -> None:
    at_origin = omega(0.0, strict=False)
    if not abs(at_origin) <= ORIGIN_TOL:
        raise DilatationNotVanishingAtZeroError(f"origin-fixed maps need omega(0) = 0, got {at_origin}")


def solve_g_from_dilatation(h: AnalyticMap, omega: AnalyticMap, variant: Variant, order: int) -> AnalyticMap:
    """
    Recovers g (with g(0) = 0) as a series of the given order, integrating

        g' = omega h'                  (NONVANISHING)
        g' = (omega / z)(1 + z h')     (ORIGIN_FIXED)

    directly, so no logarithm of G = e^g is ever taken.
    """
    h_series = h.to_series(order)
    omega_series = omega.to_series(order)
    if variant == Variant.NONVANISHING:
        g_prime = omega_series.truncate(order - 1) * derivative(h_series)
    else:
        _require_vanishing_dilatation(omega)
        h_prime = derivative(h_series)
        z = ComplexSeries.variable(h_prime.order)
        g_prime = omega_series.shift_down() * (ComplexSeries.constant(1.0, h_prime.order) + z * h_prime)
    g_series = antiderivative(g_prime)
    exact = (
        h.is_polynomial
        and omega.is_polynomial
        and h.polynomial_degree + omega.polynomial_degree <= order
    )
    return AnalyticMap.from_series(g_series, exact=exact)


def evaluate_f(f: LogharmonicMap, z):
    points, scalar = as_points(z)
    values = np.exp(f.h(points, strict=False) + np.conj(f.g(points, strict=False)))
    if f.variant == Variant.ORIGIN_FIXED:
        values = points * values
    return restore(values, scalar)


def f_z(f: LogharmonicMap, z, strict: bool = True):
    """The Wirtinger derivative df/dz."""
    points, scalar = as_points(z)
    h1 = f.h.d1(points, strict=strict)
    exponential = np.exp(f.h(points, strict=strict) + np.conj(f.g(points, strict=strict)))
    if f.variant == Variant.NONVANISHING:
        values = h1 * exponential
    else:
        values = (1 + points * h1) * exponential
    return restore(values, scalar)


def jacobian(f: LogharmonicMap, z, strict: bool = True):
    """J_f = |f_z|^2 (1 - |omega|^2)."""
    points, scalar = as_points(z)
    if f.variant == Variant.ORIGIN_FIXED and np.any(points == 0):
        raise OriginSingularityError("the Jacobian of an origin-fixed map is not evaluated at z = 0")
    omega = f.dilatation(points, strict=strict)
    values = np.abs(f_z(f, points, strict=strict)) ** 2 * (1 - np.abs(omega) ** 2)
    return float(values) if scalar else values
