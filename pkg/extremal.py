# extremal.py
"""
Extremal families and independent oracles for the norm and growth bounds.

The sharpness family f_t has h(z) = -z - 2 log(1 - z) and dilatation
(t - z)/(1 - t z); on the positive radius its weighted pre-Schwarzian reduces
to the closed form ``E(r, t)``. The growth family uses the same h with the
dilatation (alpha + z)/(1 + alpha z).
"""

import logging
from typing import Optional, Sequence

import numpy as np

import config
from mappings import LogharmonicMap, evaluate_f, koebe_log, mobius, mobius_plus, scalez
from models import GridSpec, GrowthBoundReport, GrowthReading, NormCrossCheck, SharpnessScan, SharpnessSweep, Variant
from quadrature import adaptive_simpson
from schwarz import logharmonic_norm

logger = logging.getLogger(__name__)

SCAN_R_END = 1 - 1e-9
SCAN_RESOLUTION = 2000
GOLDEN_ITERS = 200
READING_RTOL = 1e-8
INV_PHI = (np.sqrt(5.0) - 1) / 2


# --- Sharpness of the Norm Bound ---


def E(r, t):
    """Weighted pre-Schwarzian of f_t on the positive radius."""
    r = np.asarray(r, dtype=float)
    values = np.abs(2 + ((1 + t) * (1 + r) * (1 - r**2) + (t - r)) / (1 - t * r))
    return float(values) if values.ndim == 0 else values


def sharpness_family(t: float, order: Optional[int] = None) -> LogharmonicMap:
    return LogharmonicMap.from_dilatation(koebe_log(), mobius(t), Variant.NONVANISHING, order=order)


def _scan_grid(resolution: int) -> np.ndarray:
    # uniform on [0, 1) plus geometric clustering at r = 1, where N_t lives for t near 1
    uniform = np.linspace(0.0, SCAN_R_END, resolution)
    clustered = 1 - np.geomspace(1.0, 1 - SCAN_R_END, resolution)
    return np.unique(np.concatenate([uniform, clustered]))


def sharpness_scan(t: float, resolution: int = SCAN_RESOLUTION) -> SharpnessScan:
    """N_t = sup over r in [0, 1 - 1e-9] of E(r, t), by dense scan and golden section."""
    if not 0 < t < 1:
        raise ValueError(f"t must lie in (0, 1), got {t}")
    r = _scan_grid(resolution)
    values = E(r, t)
    i = int(np.argmax(values))
    a, b = r[max(i - 1, 0)], r[min(i + 1, len(r) - 1)]
    best_r, best = float(r[i]), float(values[i])
    for _ in range(GOLDEN_ITERS):
        if b - a < 1e-16:
            break
        c, d = b - INV_PHI * (b - a), a + INV_PHI * (b - a)
        fc, fd = E(c, t), E(d, t)
        for x, fx in ((c, fc), (d, fd)):
            if fx > best:
                best_r, best = float(x), fx
        if fc >= fd:
            b = d
        else:
            a = c
    return SharpnessScan(
        t=t,
        sup_E=best,
        argmax_r=best_r,
        samples=[(float(x), float(y)) for x, y in zip(r, values)],
    )


def geometric_ts(k_max: int = 20, k_min: int = 1) -> list[float]:
    """t = 1 - 2^{-k} for k = k_min .. k_max."""
    return [1 - 2.0**-k for k in range(k_min, k_max + 1)]


def richardson_limit(t1: float, n1: float, t2: float, n2: float) -> float:
    """Extrapolates N_t to t = 1 assuming N_t = L - C sqrt(1 - t)."""
    rho = np.sqrt((1 - t2) / (1 - t1))
    return float((n2 - rho * n1) / (1 - rho))


def sharpness_sweep(ts: Sequence[float], resolution: int = SCAN_RESOLUTION) -> SharpnessSweep:
    scans = [sharpness_scan(t, resolution) for t in sorted(ts)]
    sups = [scan.sup_E for scan in scans]
    monotone = all(earlier <= later + 1e-9 for earlier, later in zip(sups, sups[1:]))
    if not monotone:
        logger.warning(f"N_t is not monotone on the scanned family: {sups}")
    limit = None
    if len(scans) >= 2:
        limit = richardson_limit(scans[-2].t, scans[-2].sup_E, scans[-1].t, scans[-1].sup_E)
        logger.info(f"Extrapolated lim N_t = {limit:.8f} from t = {scans[-2].t}, {scans[-1].t}")
    return SharpnessSweep(scans=scans, monotone=monotone, extrapolated_limit=limit, max_E=max(sups))


def cross_check_norm_vs_E(t: float, grid: Optional[GridSpec] = None) -> NormCrossCheck:
    """Compares the generic disk supremum for f_t with the real-axis scan of E."""
    disk = logharmonic_norm(sharpness_family(t), grid)
    axis = sharpness_scan(t)
    argmax = complex(disk.argmax)
    check = NormCrossCheck(
        t=t,
        disk_sup=disk.value,
        axis_sup=axis.sup_E,
        difference=disk.value - axis.sup_E,
        disk_argmax=argmax,
        argmax_is_real=abs(argmax.imag) <= 1e-6,
    )
    if check.difference < -1e-8:
        logger.warning(f"Disk supremum {disk.value} is below the real-axis supremum {axis.sup_E} for t = {t}")
    return check


# --- Growth Bound ---


def growth_bound_paper(alpha: float, r: float) -> tuple[float, float]:
    """
    The closed-form upper bound for |f(z)|, |z| = r, in two readings:
    exponent (1/alpha - alpha)^2 on log(1 + alpha r), and ((1 - alpha)/alpha)^2.
    Returned as (printed, proof).
    """
    if not 0 <= alpha < 1 or not 0 <= r < 1:
        raise ValueError(f"need 0 <= alpha < 1 and 0 <= r < 1, got alpha={alpha}, r={r}")
    if alpha == 0:
        value = np.exp(-3 * r - r * r / 2) / (1 - r) ** 4
        return float(value), float(value)
    base = np.exp(-r * (1 + alpha) / alpha) / (1 - r) ** 4
    printed = base * (1 + alpha * r) ** ((1 / alpha - alpha) ** 2)
    proof = base * (1 + alpha * r) ** (((1 - alpha) / alpha) ** 2)
    return float(printed), float(proof)


def growth_bound_oracle(
    alpha: float, r: float, tol: float = config.QUAD_TOL, max_depth: int = config.QUAD_MAX_DEPTH
) -> float:
    """exp(-r - 2 log(1 - r)) * exp(int_0^r (alpha + s)(1 + s) / ((1 + alpha s)(1 - s)) ds)."""
    integral = adaptive_simpson(
        lambda s: (alpha + s) * (1 + s) / ((1 + alpha * s) * (1 - s)), 0.0, r, tol=tol, max_depth=max_depth
    )
    return float(np.exp(-r - 2 * np.log1p(-r) + integral))


def growth_family(alpha: float, order: Optional[int] = None) -> LogharmonicMap:
    """The equality case: alpha = 0 uses omega = z, otherwise (alpha + z)/(1 + alpha z)."""
    omega = scalez() if alpha == 0 else mobius_plus(alpha)
    return LogharmonicMap.from_dilatation(koebe_log(), omega, Variant.NONVANISHING, order=order)


def _confirmed_reading(printed: np.ndarray, proof: np.ndarray, oracle: np.ndarray) -> GrowthReading:
    printed_ok = bool(np.all(np.abs(printed - oracle) <= READING_RTOL * oracle))
    proof_ok = bool(np.all(np.abs(proof - oracle) <= READING_RTOL * oracle))
    if printed_ok and proof_ok:
        return GrowthReading.BOTH
    if proof_ok:
        return GrowthReading.PROOF
    if printed_ok:
        return GrowthReading.PRINTED
    return GrowthReading.NEITHER


def growth_verify(f: LogharmonicMap, alpha: float, r_grid: Sequence[float], angles: int = 1) -> GrowthBoundReport:
    """
    Compares max |f(r e^{i theta})| over ``angles`` equally spaced directions
    with the growth bound at every r of ``r_grid``. ``alpha`` is |omega(0)|.
    """
    r = np.asarray(r_grid, dtype=float)
    thetas = 2 * np.pi * np.arange(angles) / angles
    lhs = np.abs(evaluate_f(f, r[:, None] * np.exp(1j * thetas)[None, :])).max(axis=1)
    readings = np.array([growth_bound_paper(alpha, x) for x in r])
    oracle = np.array([growth_bound_oracle(alpha, x) for x in r])
    report = GrowthBoundReport(
        alpha=alpha,
        r_samples=r.tolist(),
        lhs=lhs.tolist(),
        rhs_paper_formula=readings[:, 0].tolist(),
        rhs_proof_reading=readings[:, 1].tolist(),
        rhs_oracle=oracle.tolist(),
        max_violation=float(np.max(lhs - oracle)),
        max_relative_gap=float(np.max(np.abs(lhs - oracle) / oracle)),
        oracle_confirms=_confirmed_reading(readings[:, 0], readings[:, 1], oracle),
    )
    if report.max_violation > 1e-8:
        logger.warning(f"Growth bound exceeded by {report.max_violation:.3e} (alpha = {alpha})")
    return report
