# schwarz.py
"""
Pre-Schwarzian derivatives, the Bloch seminorm and the disk supremum search.

Pointwise functions accept a scalar or an array of points. With
``strict=True`` they raise on a degenerate point; with ``strict=False`` they
return NaN there, which is what the search uses to skip and count failures.
"""

import logging
from typing import Callable, Optional

import numpy as np

from exceptions import AllPointsFailedError, DegenerateDerivativeError, DilatationOnBoundaryError
from mappings import AnalyticMap, LogharmonicMap, as_points, restore
from models import GridSpec, Preset, SupremumReport, Variant

logger = logging.getLogger(__name__)

DEGENERACY_TOL = 1e-12
BOUNDARY_TOL = 1e-12
INV_PHI = (np.sqrt(5.0) - 1) / 2
POLISH_CANDIDATES = 3
POLISH_ROUNDS = 6
POLISH_TOL = 1e-15
DIVERGENCE_FACTOR = 10.0

Field = Callable[[np.ndarray], np.ndarray]


# --- Pointwise Pre-Schwarzians ---


def _mask_degenerate(values: np.ndarray, bad: np.ndarray, strict: bool, error: type, message: str) -> np.ndarray:
    if np.any(bad):
        if strict:
            raise error(message)
        values = np.where(bad, np.nan + 0j, values)
    return values


def _values(part: AnalyticMap, points: np.ndarray, k: int, strict: bool) -> np.ndarray:
    # scalar points come back as Python complex, which raises on division by zero
    return np.asarray(part.derivative_values(points, k, strict=strict), dtype=complex)


def _analytic_part(h: AnalyticMap, points: np.ndarray, strict: bool) -> tuple[np.ndarray, np.ndarray]:
    """h''/h' and h' at the points."""
    h1 = _values(h, points, 1, strict)
    h2 = _values(h, points, 2, strict)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = h2 / h1
    bad = ~(np.abs(h1) > DEGENERACY_TOL)
    ratio = _mask_degenerate(ratio, bad, strict, DegenerateDerivativeError, f"h' vanishes near {np.ravel(points)[:1]}")
    return ratio, h1


def pre_schwarzian_analytic(h: AnalyticMap, z, strict: bool = True):
    """h''/h'."""
    points, scalar = as_points(z)
    ratio, _ = _analytic_part(h, points, strict)
    return restore(ratio, scalar)


def _dilatation_term(omega: AnalyticMap, points: np.ndarray, strict: bool) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """omega, conj(omega) omega' / (1 - |omega|^2) and the boundary mask."""
    w0 = _values(omega, points, 0, strict)
    w1 = _values(omega, points, 1, strict)
    with np.errstate(divide="ignore", invalid="ignore"):
        term = np.conj(w0) * w1 / (1 - np.abs(w0) ** 2)
    return w0, term, ~(np.abs(w0) < 1 - BOUNDARY_TOL)


def _g_prime(f: LogharmonicMap, points: np.ndarray, h1: np.ndarray, w0: np.ndarray, strict: bool) -> np.ndarray:
    """g', reusing omega h' when g is the closed-form primitive of that product."""
    if f.g.preset == Preset.PRIMITIVE and f.variant == Variant.NONVANISHING:
        return w0 * h1
    return _values(f.g, points, 1, strict)


def pre_schwarzian_logharmonic(f: LogharmonicMap, z, strict: bool = True):
    """P_f = (log J_f)_z = h''/h' + h' + g' - conj(omega) omega' / (1 - |omega|^2)."""
    if f.variant != Variant.NONVANISHING:
        raise ValueError("the logharmonic pre-Schwarzian is defined here for NONVANISHING maps")
    points, scalar = as_points(z)
    ratio, h1 = _analytic_part(f.h, points, strict)
    w0, term, on_boundary = _dilatation_term(f.dilatation, points, strict)
    values = ratio + h1 + _g_prime(f, points, h1, w0, strict) - term
    values = _mask_degenerate(values, on_boundary, strict, DilatationOnBoundaryError, "|omega| reached 1")
    return restore(values, scalar)


def pre_schwarzian_harmonic(h: AnalyticMap, omega: AnalyticMap, z, strict: bool = True):
    """h''/h' - conj(omega) omega' / (1 - |omega|^2), the pre-Schwarzian of h + conj(log G)."""
    points, scalar = as_points(z)
    _, term, on_boundary = _dilatation_term(omega, points, strict)
    ratio, _ = _analytic_part(h, points, strict)
    values = _mask_degenerate(ratio - term, on_boundary, strict, DilatationOnBoundaryError, "|omega| reached 1")
    return restore(values, scalar)


def bloch_density(f: LogharmonicMap, z, strict: bool = True):
    """|h'| + |g'|; the Bloch seminorm is the sup of (1 - |z|^2) times this."""
    points, scalar = as_points(z)
    h1 = _values(f.h, points, 1, strict)
    if f.g.preset == Preset.PRIMITIVE and f.variant == Variant.NONVANISHING:
        g1 = _values(f.dilatation, points, 0, strict) * h1
    else:
        g1 = _values(f.g, points, 1, strict)
    values = (np.abs(h1) + np.abs(g1)).astype(complex)
    return restore(values, scalar)


def logharmonic_koebe_pre_schwarzian(z):
    """
    P_K of the logharmonic Koebe map with H = z/(1-z) e^{2z/(1-z)} and
    G = (1-z) e^{2z/(1-z)}, whose dilatation is z.
    """
    points, scalar = as_points(z)
    with np.errstate(divide="ignore", invalid="ignore"):
        values = (
            1 / (1 + points)
            + 2 / (1 - points)
            + 4 / (1 - points) ** 2
            - np.conj(points) / (1 - np.abs(points) ** 2)
        )
    return restore(values, scalar)


# --- Field Builders ---


def analytic_field(h: AnalyticMap) -> Field:
    return lambda z: pre_schwarzian_analytic(h, z, strict=False)


def logharmonic_field(f: LogharmonicMap) -> Field:
    return lambda z: pre_schwarzian_logharmonic(f, z, strict=False)


def harmonic_field(h: AnalyticMap, omega: AnalyticMap) -> Field:
    return lambda z: pre_schwarzian_harmonic(h, omega, z, strict=False)


def bloch_field(f: LogharmonicMap) -> Field:
    return lambda z: bloch_density(f, z, strict=False)


# --- Supremum Search ---


class SupremumSearch:
    """
    Two-stage estimate of sup (1 - |z|^2)|P(z)| over the disk.

    A polar grid with Chebyshev-spaced radii is scanned first. Each radius then
    gets a golden-section refinement in theta around its best angle (all radii
    at once). The largest local maxima of the radial profile are polished
    together by alternating searches in r and theta, each round closed by a
    line search along the round's displacement. Every evaluated point competes
    for the maximum, and a doubled grid contains the coarse one.
    """

    def __init__(self, grid: Optional[GridSpec] = None):
        self.grid = grid or GridSpec()

    @staticmethod
    def _weighted(field: Field, z: np.ndarray) -> np.ndarray:
        values = (1 - np.abs(z) ** 2) * np.abs(field(z))
        return np.where(np.isfinite(values), values, -np.inf)

    def _golden(self, objective: Callable[[np.ndarray], np.ndarray], lo, hi, best_x, best_val):
        """Vectorised golden-section maximisation on independent brackets, one new evaluation per step."""
        a, b = np.array(lo, dtype=float), np.array(hi, dtype=float)
        best_x, best_val = np.array(best_x, dtype=float), np.array(best_val, dtype=float)
        c = b - INV_PHI * (b - a)
        d = a + INV_PHI * (b - a)
        fc, fd = objective(c), objective(d)
        for x, fx in ((c, fc), (d, fd)):
            better = fx > best_val
            best_x = np.where(better, x, best_x)
            best_val = np.where(better, fx, best_val)
        for _ in range(self.grid.refine_iters):
            if np.all(b - a < self.grid.bracket_tol):
                break
            keep_left = fc >= fd
            b = np.where(keep_left, d, b)
            a = np.where(keep_left, a, c)
            x_new = np.where(keep_left, b - INV_PHI * (b - a), a + INV_PHI * (b - a))
            value = objective(x_new)
            c, d = np.where(keep_left, x_new, d), np.where(keep_left, c, x_new)
            fc, fd = np.where(keep_left, value, fd), np.where(keep_left, fc, value)
            better = value > best_val
            best_x = np.where(better, x_new, best_x)
            best_val = np.where(better, value, best_val)
        return best_x, best_val

    def _is_divergent(self, radii: np.ndarray, profile: np.ndarray) -> bool:
        tail = profile[-max(2, len(profile) // 4) :]
        increasing = bool(np.all(np.diff(tail) > 0))
        midpoint = float(np.interp(self.grid.r_max / 2, radii, profile))
        return increasing and profile[-1] > DIVERGENCE_FACTOR * midpoint

    @staticmethod
    def _peaks(profile: np.ndarray) -> np.ndarray:
        """Indices of the largest local maxima of the radial profile."""
        padded = np.concatenate(([-np.inf], profile, [-np.inf]))
        is_peak = (profile >= padded[:-2]) & (profile >= padded[2:]) & np.isfinite(profile)
        peaks = np.flatnonzero(is_peak)
        order = np.argsort(-profile[peaks], kind="stable")
        return peaks[order[:POLISH_CANDIDATES]]

    def _polish(self, field: Field, radii: np.ndarray, thetas: np.ndarray, profile: np.ndarray, step: float):
        index = self._peaks(profile)
        r, theta, value = radii[index], thetas[index], profile[index]
        r_lo, r_hi = radii[np.maximum(index - 1, 0)], radii[np.minimum(index + 1, len(radii) - 1)]

        def at(rr: np.ndarray, th: np.ndarray) -> np.ndarray:
            inside = (rr >= r_lo) & (rr <= r_hi)
            return np.where(inside, self._weighted(field, np.clip(rr, r_lo, r_hi) * np.exp(1j * th)), -np.inf)

        for _ in range(POLISH_ROUNDS):
            r_start, theta_start, value_start = r, theta, value
            r, value = self._golden(lambda x: at(x, theta), r_lo, r_hi, r, value)
            theta, value = self._golden(lambda x: at(r, x), theta - step, theta + step, theta, value)
            dr, dtheta = r - r_start, theta - theta_start
            ones = np.ones_like(r)
            s, value = self._golden(lambda x: at(r + x * dr, theta + x * dtheta), -ones, 2 * ones, 0 * ones, value)
            r, theta = r + s * dr, theta + s * dtheta
            if np.all(value - value_start <= POLISH_TOL * np.maximum(1.0, np.abs(value_start))):
                break
        return r, theta, value

    def run(self, field: Field) -> SupremumReport:
        radii = self.grid.chebyshev_radii()
        thetas = self.grid.angles()
        step = 2 * np.pi / self.grid.angles_count

        weighted = self._weighted(field, radii[:, None] * np.exp(1j * thetas)[None, :])
        failed = int(np.count_nonzero(~np.isfinite(weighted)))
        if failed == weighted.size:
            raise AllPointsFailedError("every probe point of the supremum search failed")
        if failed:
            logger.warning(f"Supremum search skipped {failed} of {weighted.size} probe points.")

        best_index = np.argmax(weighted, axis=1)
        profile = weighted[np.arange(len(radii)), best_index]
        best_theta, profile = self._golden(
            lambda th: self._weighted(field, radii * np.exp(1j * th)),
            thetas[best_index] - step,
            thetas[best_index] + step,
            thetas[best_index],
            profile,
        )
        boundary_divergent = self._is_divergent(radii, profile)

        r_peaks, theta_peaks, peak_values = self._polish(field, radii, best_theta, profile, step)
        i = int(np.argmax(peak_values))
        r_star, theta_star, value = float(r_peaks[i]), float(theta_peaks[i]), float(peak_values[i])

        radial_profile = sorted(
            [(float(r), float(m)) for r, m in zip(radii, profile) if np.isfinite(m)]
            + [(float(r), float(m)) for r, m in zip(r_peaks, peak_values)]
        )
        if boundary_divergent:
            logger.warning(f"Field grows towards the boundary: {profile[-1]:.4g} at r = {radii[-1]:.6f}.")
        return SupremumReport(
            value=value,
            argmax=complex(r_star * np.exp(1j * theta_star)),
            boundary_divergent=boundary_divergent,
            radial_profile=radial_profile,
            failed_points=failed,
        )


def norm_estimate(field: Field, grid: Optional[GridSpec] = None) -> SupremumReport:
    return SupremumSearch(grid).run(field)


# --- Norms of Maps ---


def analytic_norm(h: AnalyticMap, grid: Optional[GridSpec] = None) -> SupremumReport:
    return norm_estimate(analytic_field(h), grid)


def logharmonic_norm(f: LogharmonicMap, grid: Optional[GridSpec] = None) -> SupremumReport:
    report = norm_estimate(logharmonic_field(f), grid)
    logger.info(f"||P_f|| ~ {report.value:.8f} at {report.argmax:.6f}")
    return report


def harmonic_norm(h: AnalyticMap, omega: AnalyticMap, grid: Optional[GridSpec] = None) -> SupremumReport:
    return norm_estimate(harmonic_field(h, omega), grid)


def bloch_seminorm(f: LogharmonicMap, grid: Optional[GridSpec] = None) -> SupremumReport:
    if f.variant != Variant.NONVANISHING:
        raise ValueError("the Bloch seminorm is computed for NONVANISHING maps")
    report = norm_estimate(bloch_field(f), grid)
    logger.info(f"beta_f ~ {report.value:.8f} at {report.argmax:.6f}")
    return report


def koebe_norm(grid: Optional[GridSpec] = None) -> SupremumReport:
    """Supremum search on the logharmonic Koebe map, which has no finite norm."""
    return norm_estimate(logharmonic_koebe_pre_schwarzian, grid)
