# sampling.py
"""
Seeded random members of L_R and the suite that checks the three norm bounds
(plus the growth bound) on them.

All randomness comes from ``numpy.random.default_rng(seed)``, i.e. PCG64.
Instances can also be read from an explicit JSON list so that a suite is
reproducible independently of the generator.
"""

import logging
from pathlib import Path
from typing import Optional, Sequence

import numpy as np
from pydantic import TypeAdapter
from tqdm import tqdm

from exceptions import IOFailureError
from extremal import growth_verify
from mappings import AnalyticMap, LogharmonicMap, blaschke, herglotz
from models import GridSpec, InstanceResult, SuiteInstance, SuiteReport, Variant
from schwarz import bloch_seminorm, harmonic_norm, logharmonic_norm

logger = logging.getLogger(__name__)

ZERO_RADIUS = 0.9
MAX_DEGREE = 4
SCALE = 0.99
NORM_BOUND = 11.0
BLOCH_BOUND = 8.0
HARMONIC_BOUND = 3.0
BOUND_TOL = 1e-6
GROWTH_TOL = 1e-8

_instances_adapter = TypeAdapter(list[SuiteInstance])


def _random_zeros(rng: np.random.Generator, count: int) -> list[complex]:
    # uniform in the disk |z| <= 0.9
    radii = ZERO_RADIUS * np.sqrt(rng.random(count))
    angles = 2 * np.pi * rng.random(count)
    return [complex(z) for z in radii * np.exp(1j * angles)]


def random_instance(rng: np.random.Generator) -> SuiteInstance:
    """eps carries the factor z plus up to three zeros; omega has one to four zeros."""
    epsilon_zeros = _random_zeros(rng, int(rng.integers(0, MAX_DEGREE)))
    epsilon_rotation = float(2 * np.pi * rng.random())
    omega_zeros = _random_zeros(rng, int(rng.integers(1, MAX_DEGREE + 1)))
    omega_rotation = float(2 * np.pi * rng.random())
    return SuiteInstance(
        epsilon_zeros=epsilon_zeros,
        epsilon_rotation=epsilon_rotation,
        omega_zeros=omega_zeros,
        omega_rotation=omega_rotation,
        scale=SCALE,
    )


def random_instances(count: int, seed: int = 0) -> list[SuiteInstance]:
    rng = np.random.default_rng(seed)
    return [random_instance(rng) for _ in range(count)]


def build(instance: SuiteInstance) -> tuple[AnalyticMap, AnalyticMap, LogharmonicMap]:
    """Returns (h, omega, f) with h' = (1 + eps)/(1 - eps) and g in closed form."""
    epsilon = blaschke([0j, *instance.epsilon_zeros], scale=instance.scale, rotation=instance.epsilon_rotation)
    omega = blaschke(instance.omega_zeros, scale=instance.scale, rotation=instance.omega_rotation)
    h = herglotz(epsilon)
    return h, omega, LogharmonicMap.from_dilatation(h, omega, Variant.NONVANISHING)


def dump_instances(instances: Sequence[SuiteInstance], path: str | Path) -> Path:
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_bytes(_instances_adapter.dump_json(list(instances), indent=2))
    except OSError as e:
        raise IOFailureError(f"could not write {path}: {e}") from e
    return path


def load_instances(path: str | Path) -> list[SuiteInstance]:
    return _instances_adapter.validate_json(Path(path).read_bytes())


def _check_instance(index: int, instance: SuiteInstance, grid: GridSpec, growth_probes: int) -> tuple[InstanceResult, list[dict]]:
    h, omega, f = build(instance)
    norm = logharmonic_norm(f, grid)
    bloch = bloch_seminorm(f, grid)
    harmonic = harmonic_norm(h, omega, grid)
    growth = None
    if growth_probes:
        alpha = abs(omega(0.0))
        r_grid = np.linspace(0.1, 0.9, growth_probes)
        growth = growth_verify(f, alpha, r_grid, angles=growth_probes).max_violation

    violations = []
    for name, report, bound in (("norm", norm, NORM_BOUND), ("bloch", bloch, BLOCH_BOUND), ("harmonic_norm", harmonic, HARMONIC_BOUND)):
        if report.value > bound + BOUND_TOL:
            violations.append({"instance": index, "quantity": name, "value": report.value, "bound": bound,
                               "witness": [report.argmax.real, report.argmax.imag], "parameters": instance.model_dump(mode="json")})
    if growth is not None and growth > GROWTH_TOL:
        violations.append({"instance": index, "quantity": "growth", "value": growth, "bound": 0.0,
                           "parameters": instance.model_dump(mode="json")})
    result = InstanceResult(
        index=index,
        norm=norm.value,
        bloch=bloch.value,
        harmonic_norm=harmonic.value,
        growth_violation=growth,
        norm_argmax=norm.argmax,
    )
    return result, violations


def run_suite(
    instances: Sequence[SuiteInstance],
    grid: Optional[GridSpec] = None,
    growth_probes: int = 8,
    seed: int = 0,
) -> SuiteReport:
    """Checks ||P_f|| <= 11, beta_f <= 8 and ||P_F|| <= 3 (and the growth bound) on every instance."""
    grid = grid or GridSpec()
    results: list[InstanceResult] = []
    violations: list[dict] = []
    for index, instance in enumerate(tqdm(instances, desc="Random suite", unit=" map", ncols=100)):
        result, found = _check_instance(index, instance, grid, growth_probes)
        results.append(result)
        violations.extend(found)
        for v in found:
            logger.warning(f"Instance {index}: {v['quantity']} = {v['value']:.10g} exceeds {v['bound']}")

    growth_values = [r.growth_violation for r in results if r.growth_violation is not None]
    report = SuiteReport(
        seed=seed,
        count=len(results),
        results=results,
        max_norm=max(r.norm for r in results),
        max_bloch=max(r.bloch for r in results),
        max_harmonic_norm=max(r.harmonic_norm for r in results),
        max_growth_violation=max(growth_values) if growth_values else None,
        violations=violations,
    )
    logger.info(
        f"Suite of {report.count}: max ||P_f|| = {report.max_norm:.6f}, max beta = {report.max_bloch:.6f}, "
        f"max ||P_F|| = {report.max_harmonic_norm:.6f}, violations = {len(violations)}"
    )
    return report
