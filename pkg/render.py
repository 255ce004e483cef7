# render.py
"""
Image curves f(|z| = r) and f(arg z = theta), with SVG and CSV output.
"""

import logging
from pathlib import Path
from typing import Any, Optional, Sequence

import numpy as np
import pandas as pd
import svgwrite

import config
from exceptions import EmptyCurveSetError, EvaluationFailureError, IOFailureError
from mappings import LogharmonicMap, evaluate_f
from models import Curve, CurveSet
from starlike import f_alpha

logger = logging.getLogger(__name__)

GAP_FRACTION = 0.01
MAX_DENSITY = 8
VIEWBOX_PAD = 0.05
CANVAS_PX = 800
MAX_SEGMENTS = 4096
SEGMENT_BLOCK = 256
FIGURE1_ALPHAS = (0.2, 0.6, 0.8, 1.0)


# --- Sampling ---


def _evaluate(f: LogharmonicMap, z: np.ndarray) -> np.ndarray:
    values = evaluate_f(f, z)
    if not np.all(np.isfinite(values)):
        raise EvaluationFailureError(f"f is not finite on {np.ravel(z[~np.isfinite(values)])[:3]}")
    return values


def _bbox_diagonal(points: np.ndarray) -> float:
    return float(np.hypot(np.ptp(points.real), np.ptp(points.imag)))


def _sample_circle(f: LogharmonicMap, r: float, theta_count: int) -> Curve:
    thetas = np.linspace(0.0, 2 * np.pi, theta_count + 1)
    points = _evaluate(f, r * np.exp(1j * thetas))
    points[-1] = points[0]
    limit = MAX_DENSITY * theta_count + 1
    while len(thetas) < limit:
        gaps = np.abs(np.diff(points))
        wide = np.flatnonzero(gaps > GAP_FRACTION * _bbox_diagonal(points))
        if wide.size == 0:
            break
        wide = wide[: limit - len(thetas)]
        midpoints = (thetas[wide] + thetas[wide + 1]) / 2
        thetas = np.insert(thetas, wide + 1, midpoints)
        points = np.insert(points, wide + 1, _evaluate(f, r * np.exp(1j * midpoints)))
    return Curve(parameter=r, radii=np.full_like(thetas, r), thetas=thetas, points=points)


def _sample_ray(f: LogharmonicMap, theta: float, r_max: float, count: int) -> Curve:
    radii = np.linspace(0.0, r_max, count)
    points = _evaluate(f, radii * np.exp(1j * theta))
    return Curve(parameter=theta, radii=radii, thetas=np.full_like(radii, theta), points=points)


def sample_image(
    f: LogharmonicMap,
    radii: Optional[Sequence[float]] = None,
    theta_count: int = config.RENDER_THETA,
    ray_count: int = config.RENDER_RAYS,
    meta: Optional[dict[str, Any]] = None,
) -> CurveSet:
    """
    Samples the images of concentric circles and of ``ray_count`` radial
    segments. Circles are refined where neighbouring image points are more
    than 1% of the bounding-box diagonal apart, up to 8x the base density.
    """
    if theta_count < 64:
        raise ValueError(f"theta_count must be at least 64, got {theta_count}")
    if radii is None:
        radii = np.linspace(config.RENDER_R_MAX / config.RENDER_CIRCLES, config.RENDER_R_MAX, config.RENDER_CIRCLES)
    radii = sorted(float(r) for r in radii)
    if any(not 0 < r < 1 for r in radii):
        raise ValueError(f"circle radii must lie in (0, 1), got {radii}")
    circles = [_sample_circle(f, r, theta_count) for r in radii]
    rays = [
        _sample_ray(f, 2 * np.pi * j / ray_count, radii[-1], theta_count)
        for j in range(ray_count)
    ]
    logger.info(f"Sampled {len(circles)} circles and {len(rays)} rays up to r = {radii[-1]}")
    return CurveSet(circles=circles, rays=rays, meta=meta or {})


# --- Output ---


def _fmt(x: float, precision: int) -> str:
    text = f"{x:.{precision}f}"
    return "0" if text.strip("-0.") == "" else text


def _path_data(points: np.ndarray, closed: bool, precision: int) -> str:
    coords = [f"{_fmt(p.real, precision)},{_fmt(-p.imag, precision)}" for p in points]
    data = "M " + " L ".join(coords)
    return data + " Z" if closed else data


def emit_svg(curves: CurveSet, path: str | Path, precision: int = 6) -> Path:
    """
    Writes a standalone SVG (y axis flipped so that Im f points up). The
    viewBox is the bounding box padded by 5%; the outermost circle is drawn
    heavier. Output depends only on the curve set.
    """
    if curves.is_empty:
        raise EmptyCurveSetError("nothing to draw")
    path = Path(path)
    everything = np.concatenate([c.points for c in curves.curves])
    xmin, xmax = everything.real.min(), everything.real.max()
    ymin, ymax = (-everything.imag).min(), (-everything.imag).max()
    span = max(xmax - xmin, ymax - ymin, 1e-12)
    pad = VIEWBOX_PAD * span
    x0, y0 = xmin - pad, ymin - pad
    width, height = (xmax - xmin) + 2 * pad, (ymax - ymin) + 2 * pad
    viewbox = " ".join(_fmt(v, precision) for v in (x0, y0, width, height))
    stroke = _fmt(0.002 * span, precision)

    dwg = svgwrite.Drawing(filename=str(path), size=(f"{CANVAS_PX}px", f"{CANVAS_PX}px"), viewBox=viewbox, debug=False)
    dwg.add(dwg.rect(insert=(_fmt(x0, precision), _fmt(y0, precision)), size=(_fmt(width, precision), _fmt(height, precision)), fill="white"))
    for ray in curves.rays:
        dwg.add(dwg.path(d=_path_data(ray.points, False, precision), stroke="#999999", stroke_width=stroke, fill="none"))
    outermost = curves.outermost() if curves.circles else None
    for circle in curves.circles:
        width_attr = _fmt(0.006 * span, precision) if circle is outermost else stroke
        color = "#000000" if circle is outermost else "#1f4e9c"
        dwg.add(dwg.path(d=_path_data(circle.points[:-1], True, precision), stroke=color, stroke_width=width_attr, fill="none"))
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        dwg.save(pretty=False)
    except OSError as e:
        raise IOFailureError(f"could not write {path}: {e}") from e
    logger.info(f"SVG written to {path}")
    return path


def curves_frame(curves: CurveSet) -> pd.DataFrame:
    """One row (r, theta, re, im) per sampled point, circles first."""
    frames = [
        pd.DataFrame({"r": c.radii, "theta": c.thetas, "re": c.points.real, "im": c.points.imag})
        for c in curves.curves
    ]
    return pd.concat(frames, ignore_index=True)


def emit_csv(curves: CurveSet, path: str | Path) -> Path:
    if curves.is_empty:
        raise EmptyCurveSetError("nothing to write")
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        curves_frame(curves).to_csv(path, index=False, float_format="%.12g")
    except OSError as e:
        raise IOFailureError(f"could not write {path}: {e}") from e
    logger.info(f"CSV written to {path}")
    return path


# --- Curve Diagnostics ---


def self_intersections(points: np.ndarray, max_segments: int = MAX_SEGMENTS) -> list[tuple[int, int]]:
    """
    Index pairs of non-adjacent polyline segments that cross properly.
    Longer polylines are decimated to ``max_segments`` segments first.
    """
    points = np.asarray(points, dtype=complex)
    closed = len(points) > 2 and points[0] == points[-1]
    if len(points) - 1 > max_segments:
        stride = int(np.ceil((len(points) - 1) / max_segments))
        kept = points[::stride]
        points = np.append(kept, points[-1]) if kept[-1] != points[-1] else kept
    a, b = points[:-1], points[1:]
    n = len(a)

    def cross(u, v):
        return u.real * v.imag - u.imag * v.real

    pairs: list[tuple[int, int]] = []
    for start in range(0, n, SEGMENT_BLOCK):
        i = np.arange(start, min(start + SEGMENT_BLOCK, n))[:, None]
        j = np.arange(n)[None, :]
        ai, bi, aj, bj = a[i], b[i], a[j], b[j]
        o1 = cross(bi - ai, aj - ai)
        o2 = cross(bi - ai, bj - ai)
        o3 = cross(bj - aj, ai - aj)
        o4 = cross(bj - aj, bi - aj)
        hit = (o1 * o2 < 0) & (o3 * o4 < 0) & (j > i + 1)
        if closed:
            hit &= ~((i == 0) & (j == n - 1))
        rows, cols = np.nonzero(hit)
        pairs.extend((int(i[r, 0]), int(c)) for r, c in zip(rows, cols))
    return pairs


def conjugate_symmetry_defect(f: LogharmonicMap, r: float, count: int = config.RENDER_THETA) -> float:
    """max |f(conj z) - conj f(z)| on |z| = r; zero for maps with real coefficients."""
    z = r * np.exp(2j * np.pi * np.arange(count) / count)
    return float(np.max(np.abs(evaluate_f(f, np.conj(z)) - np.conj(evaluate_f(f, z)))))


def argument_increments(points: np.ndarray) -> np.ndarray:
    """Successive increments of the unwrapped argument along a polyline."""
    return np.diff(np.unwrap(np.angle(np.asarray(points, dtype=complex))))


def figure1(
    alphas: Sequence[float] = FIGURE1_ALPHAS,
    out_dir: str | Path = config.OUTPUT_DIR,
    theta_count: int = config.RENDER_THETA,
) -> list[Path]:
    """Renders f_alpha(D) for each alpha into ``out_dir/f_alpha_<alpha>.svg``."""
    written = []
    for alpha in alphas:
        f = f_alpha(alpha)
        curves = sample_image(f, theta_count=theta_count, meta={"family": "f_alpha", "alpha": alpha})
        written.append(emit_svg(curves, Path(out_dir) / f"f_alpha_{alpha:g}.svg"))
    return written
