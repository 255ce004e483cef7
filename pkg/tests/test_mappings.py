import numpy as np
import pytest

from exceptions import (
    DilatationNotVanishingAtZeroError,
    EvaluationFailureError,
    OriginSingularityError,
)
from mappings import (
    AnalyticMap,
    LogharmonicMap,
    blaschke,
    check_class_R,
    const,
    dilatation_nonvanishing,
    dilatation_origin_fixed,
    evaluate_f,
    herglotz,
    identity,
    jacobian,
    koebe_log,
    log1p,
    mobius,
    mobius_plus,
    quad,
    scalez,
    solve_g_from_dilatation,
)
from models import GridSpec, MapKind, Variant
from sampling import build, random_instances

RNG = np.random.default_rng(2024)


def _disk_points(count, radius):
    r = radius * np.sqrt(RNG.uniform(0, 1, count))
    return r * np.exp(1j * RNG.uniform(0, 2 * np.pi, count))


# --- Class R ---


def test_identity_is_in_class_R():
    # Act
    certificate = check_class_R(identity())

    # Assert
    assert certificate.min_re_hprime == pytest.approx(1.0)
    assert certificate.normalized
    assert certificate.member


def test_koebe_log_minimum_sits_on_negative_axis():
    """Re (1+z)/(1-z) is smallest at z = -r, where it equals (1-r)/(1+r)."""
    # Arrange
    grid = GridSpec(radii_count=64, angles_count=256, r_max=0.999)

    # Act
    certificate = check_class_R(koebe_log(), grid)

    # Assert
    assert certificate.member
    assert certificate.min_re_hprime == pytest.approx(0.001 / 1.999, rel=1e-6)
    assert certificate.argmin == pytest.approx(-0.999)


def test_z_plus_z_squared_is_not_in_class_R():
    grid = GridSpec(radii_count=64, angles_count=256, r_max=0.9)
    certificate = check_class_R(AnalyticMap.from_series([0, 1, 1]), grid)
    assert certificate.min_re_hprime < 0
    assert not certificate.member


# --- Dilatations ---


def test_dilatation_of_nonvanishing_series_map():
    """h = z, g = z^2/2 gives omega(z) = z."""
    # Arrange
    f = LogharmonicMap(h=AnalyticMap.from_series([0, 1]), g=AnalyticMap.from_series([0, 0, 0.5]))
    z = _disk_points(50, 0.9)

    # Act
    omega = dilatation_nonvanishing(f)

    # Assert
    np.testing.assert_allclose(omega(z), z, atol=1e-12)


def test_dilatation_of_preset_map():
    f = LogharmonicMap(h=identity(), g=AnalyticMap.from_series([0, 0, 0.5]))
    assert dilatation_nonvanishing(f)(0.3) == pytest.approx(0.3)


def test_dilatation_of_zero_g_vanishes():
    f = LogharmonicMap(h=koebe_log(), g=const(0.0))
    z = _disk_points(20, 0.9)
    np.testing.assert_allclose(dilatation_nonvanishing(f)(z), 0, atol=1e-15)


def test_dilatation_of_origin_fixed_map():
    """h = z + 0.3 z^2 and g = z + z^2/2 + 0.2 z^3 give omega(z) = z."""
    # Arrange
    f = LogharmonicMap(
        h=AnalyticMap.from_series([0, 1, 0.3]),
        g=AnalyticMap.from_series([0, 1, 0.5, 0.2]),
        variant=Variant.ORIGIN_FIXED,
    )
    z = _disk_points(50, 0.9)

    # Act
    omega = dilatation_origin_fixed(f)

    # Assert
    np.testing.assert_allclose(omega(z), z, atol=1e-12)


def test_dilatation_rejects_wrong_variant():
    f = LogharmonicMap(h=identity(), g=const(0.0))
    with pytest.raises(ValueError):
        dilatation_origin_fixed(f)


# --- Solving for g ---


def test_solve_g_with_zero_dilatation_is_zero():
    g = solve_g_from_dilatation(identity(), const(0.0), Variant.NONVANISHING, order=8)
    assert np.all(g.series.coeffs == 0)


def test_solve_g_for_f_one_is_exact_polynomial():
    """h = z + z^2/2 with omega = z gives g = z + z^2/2 + z^3/3."""
    # Act
    g = solve_g_from_dilatation(quad(1.0), scalez(), Variant.ORIGIN_FIXED, order=8)

    # Assert
    assert g.kind == MapKind.SERIES
    assert g.exact
    np.testing.assert_allclose(g.series.coeffs, [0, 1, 0.5, 1 / 3, 0, 0, 0, 0, 0], atol=1e-15)


def test_solve_g_for_koebe_log():
    """g(r) = -2r - r^2/2 - 2 log(1 - r); g(0.5) = 0.261294..."""
    # Act
    series_g = solve_g_from_dilatation(koebe_log(), scalez(), Variant.NONVANISHING, order=64)
    closed = LogharmonicMap.from_dilatation(koebe_log(), scalez())

    # Assert
    expected = -1.0 - 0.125 - 2 * np.log(0.5)
    assert series_g(0.5) == pytest.approx(expected, abs=1e-12)
    assert closed.g(0.5) == pytest.approx(expected, abs=1e-12)
    assert not series_g.exact


def test_solve_g_origin_fixed_requires_vanishing_dilatation():
    with pytest.raises(DilatationNotVanishingAtZeroError):
        solve_g_from_dilatation(identity(), const(0.5), Variant.ORIGIN_FIXED, order=16)
    with pytest.raises(DilatationNotVanishingAtZeroError):
        LogharmonicMap.from_dilatation(identity(), const(0.5), Variant.ORIGIN_FIXED)


def test_dilatation_round_trip_through_solve_g():
    """dilatation(solve_g(h, omega)) reproduces omega inside |z| <= 0.7."""
    # Arrange
    omega = mobius(0.5)
    z = _disk_points(200, 0.7)

    # Act
    f = LogharmonicMap.from_dilatation(koebe_log(), omega, order=128)
    recovered = dilatation_nonvanishing(f)

    # Assert
    np.testing.assert_allclose(recovered(z), omega(z), atol=1e-9)


@pytest.mark.parametrize("instance", random_instances(6, seed=21))
def test_dilatation_round_trip_on_random_maps(instance):
    """A random class-R h with a polynomial omega, |omega| < 1 on the disk."""
    # Arrange
    h, _, _ = build(instance)
    omega = AnalyticMap.from_series([0.3 * np.exp(1j * instance.omega_rotation), *(0.15 * a for a in instance.omega_zeros)])
    z = _disk_points(200, 0.7)

    # Act
    f = LogharmonicMap.from_dilatation(h, omega, order=128)
    recovered = dilatation_nonvanishing(f)

    # Assert
    np.testing.assert_allclose(recovered(z), omega(z), atol=1e-9)


@pytest.mark.parametrize("instance", random_instances(4, seed=22))
def test_origin_fixed_dilatation_vanishes_exactly_at_origin(instance):
    # Arrange
    h, _, _ = build(instance)
    omega = blaschke([0j, *instance.omega_zeros], scale=instance.scale, rotation=instance.omega_rotation)

    # Act
    series_f = LogharmonicMap.from_dilatation(h, omega, Variant.ORIGIN_FIXED, order=32)
    closed_f = LogharmonicMap.from_dilatation(h, omega, Variant.ORIGIN_FIXED)

    # Assert
    assert dilatation_origin_fixed(series_f)(0.0) == 0
    assert dilatation_origin_fixed(closed_f)(0.0) == 0


def test_map_built_from_a_dilatation_keeps_it():
    omega = mobius(0.5)
    assert LogharmonicMap.from_dilatation(koebe_log(), omega).dilatation is omega
    assert LogharmonicMap.from_dilatation(koebe_log(), omega, order=32).dilatation is omega
    assert LogharmonicMap(h=koebe_log(), g=const(0.0)).dilatation.preset is not None


def test_closed_form_primitive_matches_series_near_origin():
    # Arrange
    closed = LogharmonicMap.from_dilatation(quad(0.6), scalez(), Variant.ORIGIN_FIXED)
    z = _disk_points(50, 0.9)

    # Act / Assert
    np.testing.assert_allclose(closed.g(z), z + z**2 / 2 + 0.2 * z**3, atol=1e-12)
    np.testing.assert_allclose(closed.g.d1(z), 1 + z + 0.6 * z**2, atol=1e-12)
    assert closed.g.d1(0.0) == pytest.approx(1.0)


@pytest.mark.parametrize(
    "h",
    [koebe_log(), log1p(), mobius(0.4), mobius_plus(0.5), blaschke([0.3, -0.2j], 0.9, 0.7), herglotz(blaschke([0, 0.4])) ],
    ids=["koebe", "log1p", "mobius", "mobius_plus", "blaschke", "herglotz"],
)
def test_closed_forms_agree_with_their_series(h):
    z = _disk_points(30, 0.3)
    series = h.to_series(64)
    np.testing.assert_allclose(series(z), h(z), atol=1e-12)


# --- Evaluation ---


def test_origin_fixed_map_vanishes_at_origin():
    f = LogharmonicMap.from_dilatation(quad(0.6), scalez(), Variant.ORIGIN_FIXED)
    assert evaluate_f(f, 0.0) == 0


def test_nonvanishing_map_with_zero_parts_is_one():
    f = LogharmonicMap(h=const(0.0), g=const(0.0))
    assert evaluate_f(f, 0.4 + 0.2j) == pytest.approx(1.0)


def test_f_one_value_at_one_half(f_one):
    """f_1(0.5) = 0.5 exp(0.625 + 2/3)."""
    assert evaluate_f(f_one, 0.5) == pytest.approx(0.5 * np.exp(0.625 + 2 / 3), rel=1e-12)
    assert abs(evaluate_f(f_one, 0.5) - 1.819423) <= 1e-6


def test_modulus_identity():
    """|f| = |z| exp(Re h + Re g) for origin-fixed maps."""
    # Arrange
    f = LogharmonicMap.from_dilatation(koebe_log(), scalez(), Variant.ORIGIN_FIXED)
    z = _disk_points(100, 0.95)

    # Act
    values = evaluate_f(f, z)

    # Assert
    np.testing.assert_allclose(np.abs(values), np.abs(z) * np.exp(f.h(z).real + f.g(z).real), rtol=1e-12)


def test_pole_of_log1p_derivative_fails_strictly():
    h = log1p()
    with pytest.raises(EvaluationFailureError):
        h.d1(-1.0)
    assert not np.isfinite(h.d1(-1.0, strict=False))


# --- Jacobian ---


def test_jacobian_of_identity():
    f = LogharmonicMap(h=identity(), g=const(0.0))
    assert jacobian(f, 0.0) == pytest.approx(1.0)


def test_jacobian_of_sharpness_family_at_origin():
    """f_z(0) = 1 and |omega(0)| = 1/2 give J = 3/4."""
    f = LogharmonicMap.from_dilatation(koebe_log(), mobius(0.5))
    assert jacobian(f, 0.0) == pytest.approx(0.75, abs=1e-12)


def test_jacobian_at_origin_of_origin_fixed_map_raises(f_one):
    with pytest.raises(OriginSingularityError):
        jacobian(f_one, 0.0)


@pytest.mark.parametrize("instance", random_instances(8, seed=9))
def test_jacobian_is_positive_on_random_instances(instance):
    # Arrange
    _, _, f = build(instance)
    z = _disk_points(500, 0.98)

    # Act
    values = jacobian(f, z)

    # Assert
    assert np.all(values > 0)


def test_map_parts_must_vanish_at_origin():
    with pytest.raises(ValueError):
        LogharmonicMap(h=const(1.0), g=const(0.0))
