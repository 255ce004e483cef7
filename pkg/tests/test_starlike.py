import numpy as np
import pytest

from exceptions import NotNormalizedError, OriginExcludedError, ZeroOnCircleError
from mappings import AnalyticMap, LogharmonicMap, identity, quad
from models import GridSpec, Variant, Verdict
from starlike import (
    argument_monotonicity_oracle,
    coefficient_criterion,
    f_alpha,
    field_scan,
    proof_chain_holds,
    radial_field,
)

ALPHAS = [round(0.1 * k, 1) for k in range(11)]
ORACLE_STEP = 2 * np.pi / 4096


# --- Coefficient Criterion ---


@pytest.mark.parametrize("alpha", ALPHAS)
def test_f_alpha_sits_on_the_criterion_boundary(alpha):
    """|1 - b_1| + 2|a_2 - b_2| + 3|b_3| = (1 - alpha) + alpha = 1."""
    # Act
    total, tail = coefficient_criterion(f_alpha(alpha))

    # Assert
    assert total == pytest.approx(1.0, abs=1e-12)
    assert tail == 0.0


def test_criterion_is_zero_when_g_equals_h():
    f = LogharmonicMap(h=identity(), g=AnalyticMap.from_series([0, 1]), variant=Variant.ORIGIN_FIXED)
    assert coefficient_criterion(f) == (0.0, 0.0)


def test_criterion_is_undecided_for_transcendental_maps(cex):
    _, tail = coefficient_criterion(cex)
    assert tail == float("inf")


def test_criterion_needs_normalized_h():
    f = LogharmonicMap(
        h=AnalyticMap.from_series([0, 2]), g=AnalyticMap.from_series([0, 1]), variant=Variant.ORIGIN_FIXED
    )
    with pytest.raises(NotNormalizedError):
        coefficient_criterion(f)


def test_criterion_rejects_nonvanishing_maps():
    f = LogharmonicMap(h=identity(), g=AnalyticMap.from_series([0, 0]))
    with pytest.raises(ValueError):
        coefficient_criterion(f)


# --- Radial Field ---


def test_radial_field_of_f_one(f_one):
    """1 + z h' - conj(z g') at z = 1/2 is 1 + 0.75 - 0.875."""
    assert radial_field(f_one, 0.5) == pytest.approx(0.875, abs=1e-12)


def test_radial_field_is_one_when_h_equals_g():
    f = LogharmonicMap(h=quad(0.5), g=quad(0.5), variant=Variant.ORIGIN_FIXED)
    z = np.array([0.3, -0.5j, 0.7 + 0.1j])
    np.testing.assert_allclose(radial_field(f, z).real, 1.0, atol=1e-14)


def test_radial_field_tends_to_one_at_origin(f_one):
    assert radial_field(f_one, 1e-8) == pytest.approx(1.0, abs=1e-7)


def test_radial_field_excludes_origin(f_one):
    with pytest.raises(OriginExcludedError):
        radial_field(f_one, 0.0)
    assert np.isnan(radial_field(f_one, 0.0, strict=False))


def test_counterexample_field_is_re_one_plus_two_z(cex):
    # Arrange
    z = np.array([-0.75, 0.5, 0.3j, -0.4 + 0.4j])

    # Act
    values = radial_field(cex, z)

    # Assert
    np.testing.assert_allclose(values.real, (1 + 2 * z).real, atol=1e-12)
    assert values[0].real == pytest.approx(-0.5, abs=1e-12)


# --- Field Scan ---


@pytest.mark.parametrize("alpha", ALPHAS)
def test_f_alpha_field_is_positive(alpha):
    # Act
    report = field_scan(f_alpha(alpha))

    # Assert
    assert report.min_re_field > 0
    assert report.verdict == Verdict.PASS_CRITERION
    assert proof_chain_holds(report)


def _random_polynomial_map(seed):
    rng = np.random.default_rng(seed)
    a = 0.15 * (rng.normal(size=3) + 1j * rng.normal(size=3))
    b = 0.15 * (rng.normal(size=4) + 1j * rng.normal(size=4))
    h = AnalyticMap.from_series([0, 1, *a])
    g = AnalyticMap.from_series([0, *b])
    return LogharmonicMap(h=h, g=g, variant=Variant.ORIGIN_FIXED)


@pytest.mark.parametrize("seed", range(8))
def test_field_never_drops_below_the_coefficient_bound(seed):
    """min Re(Df/f) >= 1 - S_N for every polynomial map, whether or not S_N <= 1."""
    # Act
    report = field_scan(_random_polynomial_map(seed), GridSpec(radii_count=24, angles_count=96, r_max=0.999))

    # Assert
    assert report.criterion_decided
    assert proof_chain_holds(report)


def test_counterexample_is_field_negative(cex):
    # Act
    report = field_scan(cex)

    # Assert
    assert report.verdict == Verdict.FIELD_NEGATIVE
    assert report.min_re_field < 0
    assert report.witness.real < -0.5
    assert not report.criterion_decided
    assert proof_chain_holds(report) is None


def test_scan_runs_the_oracle_when_asked(f_one):
    report = field_scan(f_one, oracle_radius=0.7)
    assert report.oracle_discrepancy is not None
    assert report.oracle_discrepancy <= 1e-4


def test_report_serializes_infinite_tail(cex):
    assert '"tail_bound":"Infinity"' in field_scan(cex).model_dump_json()


# --- Argument Oracle ---


@pytest.mark.parametrize("alpha", [0.0, 0.6, 1.0])
def test_oracle_agrees_with_field_for_f_alpha(alpha):
    discrepancy = argument_monotonicity_oracle(f_alpha(alpha), 0.7)
    assert discrepancy <= 5 * ORACLE_STEP**2 + 1e-9


def test_oracle_for_the_identity_map(identity_f):
    assert argument_monotonicity_oracle(identity_f, 0.5) <= 1e-9


def test_oracle_sees_the_argument_turn_back(cex):
    """arg f = theta + 1.8 sin(theta) on |z| = 0.9, which decreases near theta = pi."""
    # Act
    discrepancy = argument_monotonicity_oracle(cex, 0.9)

    # Assert
    assert discrepancy <= 1e-4
    assert radial_field(cex, -0.9).real < 0


def test_oracle_rejects_radius_outside_disk(f_one):
    with pytest.raises(ValueError):
        argument_monotonicity_oracle(f_one, 1.0)


def test_oracle_for_z_exp_z():
    f = LogharmonicMap(h=identity(), g=AnalyticMap.from_series([0, 0]), variant=Variant.ORIGIN_FIXED)
    assert argument_monotonicity_oracle(f, 0.5) <= 5 * ORACLE_STEP**2 + 1e-9


def test_oracle_detects_zero_on_circle(mocker, f_one):
    # Arrange
    mocker.patch("starlike.evaluate_f", return_value=np.zeros(4098, dtype=complex))

    # Act / Assert
    with pytest.raises(ZeroOnCircleError):
        argument_monotonicity_oracle(f_one, 0.5)
