import json
import logging
from pathlib import Path
from typing import Callable

import click
import pandas as pd
from pydantic import TypeAdapter, ValidationError

import config
from exceptions import (
    BoundViolationError,
    DilatationNotVanishingAtZeroError,
    InputError,
    IOFailureError,
    LogharmonicError,
    NotNormalizedError,
)
from extremal import cross_check_norm_vs_E, growth_family, growth_verify, sharpness_sweep
from manifest import MappingManifest, load_manifest
from mappings import LogharmonicMap, check_class_R
from models import GridSpec, GrowthBoundReport, OutputFormat, RunConfig, Subcommand, Variant
from render import emit_csv, emit_svg, figure1, sample_image
from sampling import load_instances, random_instances, run_suite
from schwarz import bloch_seminorm, harmonic_norm, logharmonic_norm
from starlike import f_alpha, field_scan

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INPUT = 2
EXIT_FAILURE = 3

BOUNDS = {Subcommand.NORM: 11.0, Subcommand.BLOCH: 8.0, Subcommand.HARMONIC_NORM: 3.0}
BOUND_TOL = 1e-6
GROWTH_TOL = 1e-8
DEFAULT_SHARPNESS_TS = [1 - 10.0**-k for k in range(1, 7)]
DEFAULT_GROWTH_ALPHAS = [0.0, 0.25, 0.5, 0.75]
GROWTH_RADII = [round(0.1 * k, 1) for k in range(1, 10)]


# --- Helper Functions ---

def _write(run_config: RunConfig, payload: str) -> None:
    """Writes a report to --out, or to stdout when no path is given."""
    if run_config.out is None:
        click.echo(payload)
        return
    try:
        run_config.out.parent.mkdir(parents=True, exist_ok=True)
        run_config.out.write_text(payload + "\n", encoding="utf-8")
    except OSError as e:
        raise IOFailureError(f"could not write {run_config.out}: {e}") from e
    logger.info(f"Report written to {run_config.out}")


def _write_frame(run_config: RunConfig, frame: pd.DataFrame) -> None:
    _write(run_config, frame.to_csv(index=False, float_format="%.12g").rstrip("\n"))


def _manifest(run_config: RunConfig) -> MappingManifest:
    if run_config.manifest is None:
        raise InputError(f"{run_config.subcommand.value} needs --manifest")
    return load_manifest(run_config.manifest)


def _nonvanishing(run_config: RunConfig) -> tuple[MappingManifest, LogharmonicMap]:
    manifest = _manifest(run_config)
    f = manifest.build(run_config.order)
    if f.variant != Variant.NONVANISHING:
        raise InputError(f"{run_config.subcommand.value} works on NONVANISHING maps")
    return manifest, f


def _check_bound(run_config: RunConfig, f: LogharmonicMap, value: float, argmax: complex) -> None:
    """Raises when a map with h in class R exceeds the bound of the subcommand."""
    bound = BOUNDS[run_config.subcommand]
    if value <= bound + BOUND_TOL:
        return
    if not check_class_R(f.h).member:
        logger.info(f"Value {value:.6f} exceeds {bound}, but h is not certified in class R; no bound applies.")
        return
    raise BoundViolationError(
        f"{run_config.subcommand.value} = {value:.10g} exceeds {bound}",
        witness={"value": value, "argmax": [argmax.real, argmax.imag], "bound": bound},
    )


# --- Subcommand Handlers ---

def _run_norm(run_config: RunConfig) -> int:
    _, f = _nonvanishing(run_config)
    report = logharmonic_norm(f, run_config.grid(GridSpec()))
    _write(run_config, report.model_dump_json(indent=2))
    if not report.boundary_divergent:
        _check_bound(run_config, f, report.value, report.argmax)
    return EXIT_OK


def _run_bloch(run_config: RunConfig) -> int:
    _, f = _nonvanishing(run_config)
    report = bloch_seminorm(f, run_config.grid(GridSpec()))
    _write(run_config, report.model_dump_json(indent=2))
    _check_bound(run_config, f, report.value, report.argmax)
    return EXIT_OK


def _run_harmonic_norm(run_config: RunConfig) -> int:
    manifest, f = _nonvanishing(run_config)
    omega = manifest.dilatation_map() or f.dilatation
    report = harmonic_norm(f.h, omega, run_config.grid(GridSpec()))
    _write(run_config, report.model_dump_json(indent=2))
    _check_bound(run_config, f, report.value, report.argmax)
    return EXIT_OK


def _run_verify_sharpness(run_config: RunConfig) -> int:
    ts = run_config.ts or DEFAULT_SHARPNESS_TS
    sweep = sharpness_sweep(ts)
    if run_config.format == OutputFormat.CSV:
        _write_frame(run_config, pd.DataFrame(
            [(scan.t, r, e) for scan in sweep.scans for r, e in scan.samples], columns=["t", "r", "E"]
        ))
    else:
        payload = sweep.model_dump(mode="json")
        if run_config.cross_check:
            grid = run_config.grid(GridSpec())
            payload["cross_checks"] = [cross_check_norm_vs_E(t, grid).model_dump(mode="json") for t in ts]
        _write(run_config, json.dumps(payload, indent=2))
    if not sweep.bound_respected:
        raise BoundViolationError(f"sup E = {sweep.max_E} exceeds 11", witness={"max_E": sweep.max_E})
    return EXIT_OK


def _run_verify_growth(run_config: RunConfig) -> int:
    reports: list[GrowthBoundReport] = []
    if run_config.manifest is not None:
        manifest, f = _nonvanishing(run_config)
        omega = manifest.dilatation_map() or f.dilatation
        alpha = abs(omega(0.0))
        reports.append(growth_verify(f, alpha, GROWTH_RADII, angles=max(run_config.growth_probes, 1)))
    else:
        if any(alpha >= 1 for alpha in run_config.alphas):
            raise InputError("the growth bound needs |omega(0)| < 1")
        for alpha in run_config.alphas or DEFAULT_GROWTH_ALPHAS:
            reports.append(growth_verify(growth_family(alpha), alpha, GROWTH_RADII))

    if run_config.format == OutputFormat.CSV:
        _write_frame(run_config, pd.DataFrame(
            [
                (rep.alpha, r, lhs, printed, proof, oracle)
                for rep in reports
                for r, lhs, printed, proof, oracle in zip(
                    rep.r_samples, rep.lhs, rep.rhs_paper_formula, rep.rhs_proof_reading, rep.rhs_oracle
                )
            ],
            columns=["alpha", "r", "lhs", "rhs_printed", "rhs_proof", "rhs_oracle"],
        ))
    else:
        _write(run_config, TypeAdapter(list[GrowthBoundReport]).dump_json(reports, indent=2).decode())

    worst = max(reports, key=lambda rep: rep.max_violation)
    if worst.max_violation > GROWTH_TOL:
        raise BoundViolationError(
            f"growth bound exceeded by {worst.max_violation:.3e}",
            witness={"alpha": worst.alpha, "max_violation": worst.max_violation},
        )
    return EXIT_OK


def _starlike_map(run_config: RunConfig) -> LogharmonicMap:
    if run_config.manifest is not None:
        return _manifest(run_config).build(run_config.order)
    if len(run_config.alphas) == 1:
        return f_alpha(run_config.alphas[0], run_config.order)
    raise InputError(f"{run_config.subcommand.value} needs --manifest or a single --alpha")


def _run_starlike(run_config: RunConfig) -> int:
    f = _starlike_map(run_config)
    if f.variant != Variant.ORIGIN_FIXED:
        raise InputError("starlike works on ORIGIN_FIXED maps")
    report = field_scan(
        f,
        run_config.grid(GridSpec.starlike_default()),
        order=run_config.order,
        oracle_radius=run_config.oracle_radius,
    )
    _write(run_config, report.model_dump_json(indent=2))
    if report.coefficient_sum + report.tail_bound <= 1 + 1e-12 and report.min_re_field <= 0:
        raise BoundViolationError(
            "coefficient criterion holds but Re(Df/f) is not positive",
            witness={"min_re_field": report.min_re_field, "witness": [report.witness.real, report.witness.imag]},
        )
    return EXIT_OK


def _run_render(run_config: RunConfig) -> int:
    if run_config.manifest is None and len(run_config.alphas) > 1:
        out_dir = run_config.out or Path(config.OUTPUT_DIR)
        written = figure1(run_config.alphas, out_dir)
        click.echo("\n".join(str(p) for p in written))
        return EXIT_OK

    if run_config.manifest is not None:
        manifest = _manifest(run_config)
        f, meta = manifest.build(run_config.order), manifest.echo()
    else:
        f, meta = _starlike_map(run_config), {"family": "f_alpha", "alpha": run_config.alphas[0]}
    curves = sample_image(f, meta=meta)
    fmt = run_config.format if run_config.format != OutputFormat.JSON else OutputFormat.SVG
    out = run_config.out or Path(config.OUTPUT_DIR) / f"image.{fmt.value}"
    if fmt == OutputFormat.CSV:
        emit_csv(curves, out)
    else:
        emit_svg(curves, out)
    click.echo(str(out))
    return EXIT_OK


def _run_random_suite(run_config: RunConfig) -> int:
    if run_config.instances is not None:
        instances = load_instances(run_config.instances)
    else:
        instances = random_instances(run_config.count, run_config.seed)
    report = run_suite(instances, run_config.grid(GridSpec()), run_config.growth_probes, run_config.seed)
    _write(run_config, report.model_dump_json(indent=2))
    if report.violations:
        raise BoundViolationError(f"{len(report.violations)} bound violations", witness=report.violations[0])
    return EXIT_OK


INPUT_ERRORS = (
    InputError,
    ValidationError,
    json.JSONDecodeError,
    FileNotFoundError,
    NotNormalizedError,
    DilatationNotVanishingAtZeroError,
)

HANDLERS: dict[Subcommand, Callable[[RunConfig], int]] = {
    Subcommand.NORM: _run_norm,
    Subcommand.BLOCH: _run_bloch,
    Subcommand.HARMONIC_NORM: _run_harmonic_norm,
    Subcommand.VERIFY_SHARPNESS: _run_verify_sharpness,
    Subcommand.VERIFY_GROWTH: _run_verify_growth,
    Subcommand.STARLIKE: _run_starlike,
    Subcommand.RENDER: _run_render,
    Subcommand.RANDOM_SUITE: _run_random_suite,
}


def run(run_config: RunConfig) -> int:
    """
    Executes one subcommand. Exit code 0 on success, 1 on a bound violation,
    2 on bad input and 3 when a computation or an output write fails.
    """
    try:
        return HANDLERS[run_config.subcommand](run_config)
    except BoundViolationError as e:
        logger.error(f"Bound violation: {e} witness={json.dumps(e.witness, default=str)}")
        return EXIT_VIOLATION
    except INPUT_ERRORS as e:
        logger.error(f"Input error: {e}")
        return EXIT_INPUT
    except LogharmonicError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return EXIT_FAILURE


# --- Command Line ---

def _grid_options(command: Callable) -> Callable:
    options = [
        click.option("--grid-radii", type=int, default=None, help="Number of radii in the search grid."),
        click.option("--grid-angles", type=int, default=None, help="Number of angles in the search grid."),
        click.option("--r-max", type=float, default=None, help="Largest probed radius."),
        click.option("--refine-iters", type=int, default=None, help="Golden-section iterations."),
    ]
    for option in reversed(options):
        command = option(command)
    return command


def _output_options(command: Callable) -> Callable:
    options = [
        click.option("--manifest", type=click.Path(path_type=Path), default=None, help="Mapping manifest (JSON)."),
        click.option("--order", type=int, default=config.SERIES_ORDER, show_default=True, help="Series truncation order."),
        click.option("--out", type=click.Path(path_type=Path), default=None, help="Output path (stdout if omitted)."),
        click.option("--format", "output_format", type=click.Choice([f.value for f in OutputFormat]), default="json", show_default=True),
    ]
    for option in reversed(options):
        command = option(command)
    return command


def _invoke(ctx: click.Context, subcommand: Subcommand, **options) -> None:
    fmt = options.pop("output_format", OutputFormat.JSON.value)
    options = {key: value for key, value in options.items() if value is not None}
    try:
        run_config = RunConfig(subcommand=subcommand, format=OutputFormat(fmt), **options)
    except ValidationError as e:
        logger.error(f"Invalid options: {e}")
        ctx.exit(EXIT_INPUT)
    ctx.exit(run(run_config))


@click.group()
@click.option("--log-level", default=config.LOG_LEVEL, show_default=True, help="Logging level.")
def cli(log_level: str) -> None:
    """
    Logharmonic mappings: pre-Schwarzian norms, growth, starlikeness and image rendering.

    \b
    Exit codes:
      0  success
      1  a bound was exceeded (the witness is logged)
      2  bad input (manifest, flags, instance file)
      3  a computation failed (no valid probe point, quadrature did not
         converge, a map could not be evaluated) or an output could not be written
    """
    logging.basicConfig(level=log_level.upper(), format="%(asctime)s - %(levelname)s - %(message)s")


@cli.command("norm")
@_output_options
@_grid_options
@click.pass_context
def norm_command(ctx, **options):
    """sup (1 - |z|^2)|P_f(z)| for a NONVANISHING map."""
    _invoke(ctx, Subcommand.NORM, **options)


@cli.command("bloch")
@_output_options
@_grid_options
@click.pass_context
def bloch_command(ctx, **options):
    """The Bloch seminorm sup (1 - |z|^2)(|h'| + |g'|)."""
    _invoke(ctx, Subcommand.BLOCH, **options)


@cli.command("harmonic-norm")
@_output_options
@_grid_options
@click.pass_context
def harmonic_norm_command(ctx, **options):
    """Norm of the harmonic pre-Schwarzian h''/h' - conj(w) w' / (1 - |w|^2)."""
    _invoke(ctx, Subcommand.HARMONIC_NORM, **options)


@cli.command("verify-sharpness")
@_output_options
@_grid_options
@click.option("--t", "ts", type=click.FloatRange(0, 1, min_open=True, max_open=True), multiple=True, help="Sharpness parameter t in (0, 1); repeatable.")
@click.option("--cross-check/--no-cross-check", default=False, help="Also run the disk search for every t.")
@click.pass_context
def verify_sharpness_command(ctx, ts, **options):
    """Scans N_t = sup_r E(r, t) towards the limit 11."""
    _invoke(ctx, Subcommand.VERIFY_SHARPNESS, ts=list(ts), **options)


@cli.command("verify-growth")
@_output_options
@click.option("--alpha", "alphas", type=click.FloatRange(0, 1, max_open=True), multiple=True, help="|omega(0)| of the equality family; repeatable.")
@click.option("--growth-probes", type=int, default=8, show_default=True, help="Probe angles for a manifest map.")
@click.pass_context
def verify_growth_command(ctx, alphas, **options):
    """Compares |f(r)| with both closed-form growth bounds and the quadrature oracle."""
    _invoke(ctx, Subcommand.VERIFY_GROWTH, alphas=list(alphas), **options)


@cli.command("starlike")
@_output_options
@_grid_options
@click.option("--alpha", "alphas", type=click.FloatRange(0, 1), multiple=True, help="Use f_alpha instead of a manifest.")
@click.option("--oracle-radius", type=float, default=None, help="Radius for the argument-monotonicity oracle.")
@click.pass_context
def starlike_command(ctx, alphas, **options):
    """Coefficient criterion and Re(Df/f) scan for an ORIGIN_FIXED map."""
    _invoke(ctx, Subcommand.STARLIKE, alphas=list(alphas), **options)


@cli.command("render")
@_output_options
@click.option("--alpha", "alphas", type=click.FloatRange(0, 1), multiple=True, help="Render f_alpha; repeat for several panels.")
@click.pass_context
def render_command(ctx, alphas, **options):
    """Writes the image of concentric circles and rays as SVG or CSV."""
    _invoke(ctx, Subcommand.RENDER, alphas=list(alphas), **options)


@cli.command("random-suite")
@_output_options
@_grid_options
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--count", type=int, default=200, show_default=True)
@click.option("--instances", type=click.Path(path_type=Path), default=None, help="Explicit instance list (JSON).")
@click.option("--growth-probes", type=int, default=8, show_default=True)
@click.pass_context
def random_suite_command(ctx, **options):
    """Checks the bounds 11, 8 and 3 on seeded random members of L_R."""
    _invoke(ctx, Subcommand.RANDOM_SUITE, **options)


if __name__ == "__main__":
    cli()
