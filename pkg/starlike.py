# starlike.py
"""
Starlikeness checks for origin-fixed maps f = z e^h conj(e^g).

Full starlikeness is equivalent to Re(Df/f) > 0 away from the origin, where
Df/f = 1 + z h' - conj(z g'). The coefficient criterion bounds that field from
below by 1 - (|1 - b_1| + sum n |a_n - b_n|).
"""

import logging
import math
from typing import Optional

import numpy as np

import config
from exceptions import NotNormalizedError, OriginExcludedError, ZeroOnCircleError
from mappings import LogharmonicMap, as_points, evaluate_f, log1p, negz, quad, restore, scalez
from models import GridSpec, StarlikeReport, Variant, Verdict

logger = logging.getLogger(__name__)

NORMALIZATION_TOL = 1e-12
CRITERION_TOL = 1e-12
PROOF_CHAIN_TOL = 1e-9
ORACLE_THETA_STEPS = 4096


def _require_origin_fixed(f: LogharmonicMap) -> None:
    if f.variant != Variant.ORIGIN_FIXED:
        raise ValueError(f"starlikeness is checked for ORIGIN_FIXED maps, got {f.variant.value}")


def f_alpha(alpha: float, order: int = config.SERIES_ORDER) -> LogharmonicMap:
    """h = z + alpha z^2 / 2 with dilatation z, so g = z + z^2/2 + alpha z^3/3."""
    return LogharmonicMap.from_dilatation(quad(alpha), scalez(), Variant.ORIGIN_FIXED, order=order)


def counterexample() -> LogharmonicMap:
    """h = log(1 + z) with dilatation -z; Re(Df/f) = Re(1 + 2z) changes sign."""
    return LogharmonicMap.from_dilatation(log1p(), negz(), Variant.ORIGIN_FIXED)


def coefficient_criterion(f: LogharmonicMap, order: int = config.SERIES_ORDER) -> tuple[float, float]:
    """
    Returns (S_N, tail) with S_N = |1 - b_1| + sum_{n=2}^N n |a_n - b_n|.

    The tail is 0 when h and g are polynomials of degree <= N and infinite
    otherwise, in which case the criterion is inconclusive.
    """
    _require_origin_fixed(f)
    a = f.h.to_series(order).coeffs
    b = f.g.to_series(order).coeffs
    if abs(a[1] - 1) > NORMALIZATION_TOL:
        raise NotNormalizedError(f"h'(0) = {a[1]} but the criterion needs h'(0) = 1")
    n = min(len(a), len(b))
    degrees = np.arange(2, n)
    total = float(abs(1 - b[1]) + np.sum(degrees * np.abs(a[2:n] - b[2:n])))
    h_degree, g_degree = f.h.polynomial_degree, f.g.polynomial_degree
    decided = h_degree is not None and g_degree is not None and max(h_degree, g_degree) <= n - 1
    return total, 0.0 if decided else math.inf


def radial_field(f: LogharmonicMap, z, strict: bool = True):
    """Df/f = 1 + z h'(z) - conj(z g'(z))."""
    _require_origin_fixed(f)
    points, scalar = as_points(z)
    at_origin = points == 0
    if strict and np.any(at_origin):
        raise OriginExcludedError("Df/f is not evaluated at z = 0")
    values = 1 + points * f.h.d1(points, strict=strict) - np.conj(points * f.g.d1(points, strict=strict))
    values = np.where(at_origin, np.nan + 0j, values)
    return restore(values, scalar)


def argument_monotonicity_oracle(f: LogharmonicMap, r: float, theta_steps: int = ORACLE_THETA_STEPS) -> float:
    """
    Max over the circle |z| = r of |d/dtheta arg f(r e^{i theta}) - Re(Df/f)|, with the
    angular derivative taken by central differences of the unwrapped argument.
    """
    if not 0 < r < 1:
        raise ValueError(f"the oracle radius must lie in (0, 1), got {r}")
    step = 2 * np.pi / theta_steps
    thetas = step * np.arange(-1, theta_steps + 1)
    points = r * np.exp(1j * thetas)
    values = evaluate_f(f, points)
    if np.any(np.abs(values) == 0) or not np.all(np.isfinite(values)):
        raise ZeroOnCircleError(f"f vanishes or fails on |z| = {r}")
    phase = np.unwrap(np.angle(values))
    slope = (phase[2:] - phase[:-2]) / (2 * step)
    field = radial_field(f, points[1:-1]).real
    return float(np.max(np.abs(slope - field)))


def field_scan(
    f: LogharmonicMap,
    grid: Optional[GridSpec] = None,
    order: int = config.SERIES_ORDER,
    oracle_radius: Optional[float] = None,
    theta_steps: int = ORACLE_THETA_STEPS,
) -> StarlikeReport:
    """Minimum of Re(Df/f) on the annular grid r_min <= |z| <= r_max plus the coefficient criterion."""
    _require_origin_fixed(f)
    grid = grid or GridSpec.starlike_default()
    points = grid.uniform_radii(config.STARLIKE_R_MIN)[:, None] * np.exp(1j * grid.angles())[None, :]
    re_field = radial_field(f, points, strict=False).real
    re_field = np.where(np.isfinite(re_field), re_field, np.inf)
    index = np.unravel_index(np.argmin(re_field), re_field.shape)
    min_re_field = float(re_field[index])

    total, tail = coefficient_criterion(f, order)
    if min_re_field <= 0:
        verdict = Verdict.FIELD_NEGATIVE
    elif total + tail <= 1 + CRITERION_TOL:
        verdict = Verdict.PASS_CRITERION
    else:
        verdict = Verdict.FAIL_CRITERION

    discrepancy = None
    if oracle_radius is not None:
        discrepancy = argument_monotonicity_oracle(f, oracle_radius, theta_steps)

    report = StarlikeReport(
        coefficient_sum=total,
        tail_bound=tail,
        min_re_field=min_re_field,
        witness=complex(points[index]),
        grid_spec=grid,
        verdict=verdict,
        oracle_discrepancy=discrepancy,
    )
    logger.info(f"Starlike scan: S_N = {total:.12g}, tail = {tail}, min Re(Df/f) = {min_re_field:.6g}, {verdict.value}")
    if verdict == Verdict.FIELD_NEGATIVE:
        logger.warning(f"Re(Df/f) = {min_re_field:.6g} at {report.witness:.6f}")
    return report


def proof_chain_holds(report: StarlikeReport) -> Optional[bool]:
    """min Re(Df/f) >= 1 - S_N for polynomial maps; None when the criterion is undecided."""
    if not report.criterion_decided:
        return None
    return report.min_re_field >= 1 - report.coefficient_sum - PROOF_CHAIN_TOL
