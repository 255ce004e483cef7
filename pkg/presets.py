# presets.py
"""
Closed-form evaluators for the named analytic maps.

Every evaluator has the signature ``(params, operands, z, k) -> ndarray`` and
returns the k-th derivative (k = 0, 1, 2) at the points ``z``. Points where a
denominator vanishes come back as NaN; the caller decides whether that is an
error or a skipped probe.
"""

import logging
from typing import Any, Callable

import numpy as np

import config
from complexseries import ComplexSeries, antiderivative, div, mul
from models import Preset, Variant
from quadrature import path_integral

logger = logging.getLogger(__name__)

DEGENERACY_TOL = 1e-12
ORIGIN_TAYLOR_RADIUS = 1e-6

Evaluator = Callable[[dict, list, np.ndarray, int], np.ndarray]


def complex_param(params: dict, name: str, default: complex = 0.0) -> complex:
    """Reads a complex parameter given as a number or an [re, im] pair."""
    value = params.get(name, default)
    if isinstance(value, (list, tuple)):
        return complex(value[0], value[1])
    return complex(value)


def zeros_param(params: dict) -> list[complex]:
    return [complex(a[0], a[1]) if isinstance(a, (list, tuple)) else complex(a) for a in params.get("zeros", [])]


def _unsupported(preset: Preset, k: int) -> ValueError:
    return ValueError(f"{preset.value} does not provide derivative order {k}")


def _guarded_quotient(num: np.ndarray, den: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore", invalid="ignore"):
        out = num / den
    return np.where(np.abs(den) < DEGENERACY_TOL, np.nan + 0j, out)


# --- Elementary Presets ---


def _identity(params, operands, z, k):
    return [z, np.ones_like(z), np.zeros_like(z)][k]


def _negz(params, operands, z, k):
    return -_identity(params, operands, z, k)


def _const(params, operands, z, k):
    c = complex_param(params, "c")
    return np.full_like(z, c) if k == 0 else np.zeros_like(z)


def _quad(params, operands, z, k):
    alpha = float(params.get("alpha", 0.0))
    if k == 0:
        return z + alpha * z**2 / 2
    if k == 1:
        return 1 + alpha * z
    return np.full_like(z, alpha)


def _koebe_log(params, operands, z, k):
    # h(z) = -z - 2 log(1 - z), the extremal element of class R
    with np.errstate(divide="ignore", invalid="ignore"):
        if k == 0:
            return -z - 2 * np.log(1 - z)
        if k == 1:
            return (1 + z) / (1 - z)
        return 2 / (1 - z) ** 2


def _log1p(params, operands, z, k):
    with np.errstate(divide="ignore", invalid="ignore"):
        if k == 0:
            return np.log(1 + z)
        if k == 1:
            return 1 / (1 + z)
        return -1 / (1 + z) ** 2


def _mobius(params, operands, z, k):
    # (t - z) / (1 - t z), the sharpness dilatation
    t = float(params["t"])
    den = 1 - t * z
    with np.errstate(divide="ignore", invalid="ignore"):
        if k == 0:
            return (t - z) / den
        if k == 1:
            return (t * t - 1) / den**2
        return 2 * t * (t * t - 1) / den**3


def _mobius_plus(params, operands, z, k):
    # (alpha + z) / (1 + alpha z), extremal for the growth bound
    alpha = float(params["alpha"])
    den = 1 + alpha * z
    with np.errstate(divide="ignore", invalid="ignore"):
        if k == 0:
            return (alpha + z) / den
        if k == 1:
            return (1 - alpha * alpha) / den**2
        return -2 * alpha * (1 - alpha * alpha) / den**3


def _blaschke(params, operands, z, k):
    """scale * e^{i rotation} * prod (z - a) / (1 - conj(a) z), by Leibniz up to order k."""
    lead = float(params.get("scale", 1.0)) * np.exp(1j * float(params.get("rotation", 0.0)))
    p0 = np.full_like(z, lead)
    p1 = np.zeros_like(z)
    p2 = np.zeros_like(z)
    for a in zeros_param(params):
        den = 1 - np.conj(a) * z
        b0 = (z - a) / den
        if k == 0:
            p0 = p0 * b0
            continue
        weight = 1 - abs(a) ** 2
        b1 = weight / den**2
        if k == 2:
            b2 = 2 * np.conj(a) * b1 / den
            p2 = p2 * b0 + 2 * p1 * b1 + p0 * b2
        p0, p1 = p0 * b0, p1 * b0 + p0 * b1
    return [p0, p1, p2][k]


# --- Composite Presets ---


def _herglotz(params, operands, z, k):
    """Class-R map with h' = (1 + eps) / (1 - eps) for a self-map eps with eps(0) = 0."""
    (epsilon,) = operands
    if k == 0:
        nodes = int(params.get("nodes", config.PATH_NODES))
        return path_integral(lambda w: _herglotz(params, operands, w, 1), z, nodes)
    eps = epsilon.derivative_values(z, 0, strict=False)
    if k == 1:
        return _guarded_quotient(1 + eps, 1 - eps)
    eps1 = epsilon.derivative_values(z, 1, strict=False)
    return _guarded_quotient(2 * eps1, (1 - eps) ** 2)


def _dilatation(params, operands, z, k):
    """omega = g'/h' (nonvanishing) or z g'/(1 + z h') (origin fixed)."""
    g, h = operands
    variant = Variant(params["variant"])
    if k > 1:
        raise _unsupported(Preset.DILATATION, k)
    g1 = g.derivative_values(z, 1, strict=False)
    h1 = h.derivative_values(z, 1, strict=False)
    if variant == Variant.NONVANISHING:
        num, den = g1, h1
    else:
        num, den = z * g1, 1 + z * h1
    if k == 0:
        return _guarded_quotient(num, den)
    g2 = g.derivative_values(z, 2, strict=False)
    h2 = h.derivative_values(z, 2, strict=False)
    if variant == Variant.NONVANISHING:
        num1, den1 = g2, h2
    else:
        num1, den1 = g1 + z * g2, h1 + z * h2
    return _guarded_quotient(num1 * den - num * den1, den**2)


def _primitive(params, operands, z, k):
    """g with g' = omega h' (nonvanishing) or omega (1 + z h') / z (origin fixed), g(0) = 0."""
    h, omega = operands
    variant = Variant(params["variant"])
    if k == 0:
        nodes = int(params.get("nodes", config.PATH_NODES))
        return path_integral(lambda w: _primitive(params, operands, w, 1), z, nodes)
    w0 = omega.derivative_values(z, 0, strict=False)
    h1 = h.derivative_values(z, 1, strict=False)
    if variant == Variant.NONVANISHING and k == 1:
        return w0 * h1
    w1 = omega.derivative_values(z, 1, strict=False)
    if variant == Variant.NONVANISHING:
        h2 = h.derivative_values(z, 2, strict=False)
        return w1 * h1 + w0 * h2
    # omega(0) = 0, so omega / z is analytic; its value at 0 is omega'(0)
    at_origin = z == 0
    safe_z = np.where(at_origin, 1.0, z)
    q = np.where(at_origin, w1, w0 / safe_z)
    if k == 1:
        return q * (1 + z * h1)
    w2 = omega.derivative_values(z, 2, strict=False)
    h2 = h.derivative_values(z, 2, strict=False)
    near_origin = np.abs(z) < ORIGIN_TAYLOR_RADIUS
    safe_z = np.where(near_origin, 1.0, z)
    q1 = np.where(near_origin, w2 / 2, (w1 * safe_z - w0) / safe_z**2)
    return q1 * (1 + z * h1) + q * (h1 + z * h2)


EVALUATORS: dict[Preset, Evaluator] = {
    Preset.IDENTITY: _identity,
    Preset.SCALEZ: _identity,
    Preset.NEGZ: _negz,
    Preset.CONST: _const,
    Preset.QUAD: _quad,
    Preset.KOEBE_LOG: _koebe_log,
    Preset.LOG1P: _log1p,
    Preset.MOBIUS: _mobius,
    Preset.MOBIUS_PLUS: _mobius_plus,
    Preset.BLASCHKE: _blaschke,
    Preset.HERGLOTZ: _herglotz,
    Preset.DILATATION: _dilatation,
    Preset.PRIMITIVE: _primitive,
}

REQUIRED_PARAMS: dict[Preset, tuple[str, ...]] = {
    Preset.QUAD: ("alpha",),
    Preset.MOBIUS: ("t",),
    Preset.MOBIUS_PLUS: ("alpha",),
    Preset.CONST: ("c",),
    Preset.DILATATION: ("variant",),
    Preset.PRIMITIVE: ("variant",),
}

OPERAND_COUNT: dict[Preset, int] = {
    Preset.HERGLOTZ: 1,
    Preset.DILATATION: 2,
    Preset.PRIMITIVE: 2,
}


def evaluate_preset(preset: Preset, params: dict, operands: list, z: np.ndarray, k: int) -> np.ndarray:
    if k not in (0, 1, 2):
        raise _unsupported(preset, k)
    return np.asarray(EVALUATORS[preset](params, operands, z, k), dtype=complex)


# --- Taylor Coefficients at the Origin ---


def preset_series(preset: Preset, params: dict, operands: list, order: int) -> ComplexSeries:
    """Taylor series at 0 of the elementary presets and of HERGLOTZ/BLASCHKE."""
    k = np.arange(order + 1)
    coeffs = np.zeros(order + 1, dtype=complex)
    if preset in (Preset.IDENTITY, Preset.SCALEZ, Preset.NEGZ):
        return ComplexSeries.variable(order).scaled(-1.0 if preset == Preset.NEGZ else 1.0)
    if preset == Preset.CONST:
        return ComplexSeries.constant(complex_param(params, "c"), order)
    if preset == Preset.QUAD:
        coeffs[1 : min(order, 2) + 1] = [1.0, float(params["alpha"]) / 2][: min(order, 2)]
        return ComplexSeries(coeffs=coeffs)
    if preset == Preset.KOEBE_LOG:
        coeffs[1:] = 2.0 / k[1:]
        if order >= 1:
            coeffs[1] = 1.0
        return ComplexSeries(coeffs=coeffs)
    if preset == Preset.LOG1P:
        coeffs[1:] = (-1.0) ** (k[1:] + 1) / k[1:]
        return ComplexSeries(coeffs=coeffs)
    if preset == Preset.MOBIUS:
        t = float(params["t"])
        coeffs[0] = t
        coeffs[1:] = t ** (k[1:] - 1) * (t * t - 1)
        return ComplexSeries(coeffs=coeffs)
    if preset == Preset.MOBIUS_PLUS:
        alpha = float(params["alpha"])
        coeffs[0] = alpha
        coeffs[1:] = (-alpha) ** (k[1:] - 1) * (1 - alpha * alpha)
        return ComplexSeries(coeffs=coeffs)
    if preset == Preset.BLASCHKE:
        lead = float(params.get("scale", 1.0)) * np.exp(1j * float(params.get("rotation", 0.0)))
        product = ComplexSeries.constant(lead, order)
        for a in zeros_param(params):
            numerator = ComplexSeries(coeffs=np.r_[-a, 1.0, np.zeros(max(order - 1, 0))][: order + 1])
            denominator = ComplexSeries(coeffs=np.r_[1.0, -np.conj(a), np.zeros(max(order - 1, 0))][: order + 1])
            product = mul(product, div(numerator, denominator))
        return product
    if preset == Preset.HERGLOTZ:
        eps = operands[0].to_series(max(order - 1, 0))
        one = ComplexSeries.constant(1.0, eps.order)
        return antiderivative(div(one + eps, one - eps))
    raise ValueError(f"{preset.value} has no elementary series; expand it through mappings")


def polynomial_degree(preset: Preset, params: dict) -> int | None:
    """Degree of the polynomial presets, None for transcendental ones."""
    if preset in (Preset.IDENTITY, Preset.SCALEZ, Preset.NEGZ):
        return 1
    if preset == Preset.CONST:
        return 0
    if preset == Preset.QUAD:
        return 2 if float(params["alpha"]) != 0 else 1
    return None


def describe(preset: Preset, params: dict[str, Any]) -> str:
    shown = {key: value for key, value in params.items() if key not in ("nodes",)}
    return f"{preset.value}{shown}" if shown else preset.value
