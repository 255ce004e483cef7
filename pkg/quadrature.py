# quadrature.py
"""
Numerical integration used by the closed-form maps and the growth oracle.

``path_integral`` integrates an analytic derivative along the segment [0, z]
with a fixed Gauss-Legendre rule. ``adaptive_simpson`` is the tolerance-driven
integrator behind the growth-bound oracle.
"""

import logging
from functools import lru_cache
from typing import Callable

import numpy as np

import config
from exceptions import QuadratureNonConvergenceError

logger = logging.getLogger(__name__)

PATH_CHUNK = 4096


@lru_cache(maxsize=16)
def _unit_interval_rule(nodes: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights mapped from [-1, 1] to [0, 1]."""
    x, w = np.polynomial.legendre.leggauss(nodes)
    return (x + 1) / 2, w / 2


def path_integral(derivative: Callable[[np.ndarray], np.ndarray], z, nodes: int = config.PATH_NODES) -> np.ndarray:
    """Computes int_0^z F'(zeta) d zeta = z * int_0^1 F'(s z) ds for every point of ``z``."""
    z = np.asarray(z, dtype=complex)
    s, w = _unit_interval_rule(nodes)
    flat = z.ravel()
    out = np.empty_like(flat)
    for start in range(0, flat.size, PATH_CHUNK):
        block = flat[start : start + PATH_CHUNK]
        values = derivative(s[:, None] * block[None, :])
        out[start : start + PATH_CHUNK] = block * (w @ values)
    return out.reshape(z.shape)


def adaptive_simpson(
    func: Callable[[float], float],
    a: float,
    b: float,
    tol: float = config.QUAD_TOL,
    max_depth: int = config.QUAD_MAX_DEPTH,
) -> float:
    """
    Adaptive Simpson quadrature with absolute tolerance ``tol``.

    Each bisection halves the tolerance; a panel is accepted once the
    Richardson difference is below 15 times its share. Raises
    QuadratureNonConvergenceError if a panel still fails at ``max_depth``.
    """
    if a == b:
        return 0.0
    fa, fb = func(a), func(b)
    m = (a + b) / 2
    fm = func(m)
    whole = (b - a) / 6 * (fa + 4 * fm + fb)
    return _simpson_panel(func, a, b, fa, fm, fb, whole, tol, max_depth)


def _simpson_panel(func, a, b, fa, fm, fb, whole, tol, depth):
    m = (a + b) / 2
    lm, rm = (a + m) / 2, (m + b) / 2
    flm, frm = func(lm), func(rm)
    left = (m - a) / 6 * (fa + 4 * flm + fm)
    right = (b - m) / 6 * (fm + 4 * frm + fb)
    delta = left + right - whole
    if abs(delta) <= 15 * tol:
        return left + right + delta / 15
    if depth <= 0:
        raise QuadratureNonConvergenceError(
            f"adaptive Simpson did not reach tolerance {tol:.1e} on [{a:.6g}, {b:.6g}]"
        )
    return _simpson_panel(func, a, m, fa, flm, fm, left, tol / 2, depth - 1) + _simpson_panel(
        func, m, b, fm, frm, fb, right, tol / 2, depth - 1
    )
