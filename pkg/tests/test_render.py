import numpy as np
import pandas as pd
import pytest

from exceptions import EmptyCurveSetError, IOFailureError
from models import CurveSet
from render import (
    argument_increments,
    conjugate_symmetry_defect,
    emit_csv,
    emit_svg,
    figure1,
    sample_image,
    self_intersections,
)
from starlike import f_alpha

PANEL_ALPHAS = [0.2, 0.6, 0.8, 1.0]


@pytest.fixture
def unit_circle_curves(identity_f):
    return sample_image(identity_f, radii=[0.99], ray_count=0)


# --- Sampling ---


def test_identity_map_draws_circles(identity_f):
    # Act
    curves = sample_image(identity_f, radii=[0.25, 0.5], ray_count=4)

    # Assert
    assert len(curves.circles) == 2
    assert len(curves.rays) == 4
    for circle in curves.circles:
        np.testing.assert_allclose(np.abs(circle.points), circle.parameter, atol=1e-12)
        assert circle.closed


def test_first_point_of_f_one_circle(f_one):
    curves = sample_image(f_one, radii=[0.5], ray_count=0)
    assert curves.circles[0].points[0] == pytest.approx(0.5 * np.exp(0.625 + 2 / 3), rel=1e-12)


def test_sample_image_validates_arguments(identity_f):
    with pytest.raises(ValueError):
        sample_image(identity_f, radii=[1.0])
    with pytest.raises(ValueError):
        sample_image(identity_f, theta_count=16)


def test_adaptive_refinement_is_capped():
    """The outer curve of f_1 gets denser where it moves fast, never beyond 8x."""
    curves = sample_image(f_alpha(1.0), radii=[0.995], theta_count=64, ray_count=0)
    count = len(curves.circles[0].points)
    assert 65 <= count <= 8 * 64 + 1


# --- Geometry ---


@pytest.mark.parametrize("alpha", PANEL_ALPHAS)
def test_f_alpha_images_are_symmetric(alpha):
    assert conjugate_symmetry_defect(f_alpha(alpha), 0.995) <= 1e-12


@pytest.mark.parametrize("alpha", PANEL_ALPHAS)
def test_outer_curve_is_simple_and_turns_forward(alpha):
    # Arrange
    outer = sample_image(f_alpha(alpha), radii=[0.995], ray_count=0).outermost()

    # Act
    crossings = self_intersections(outer.points)
    increments = argument_increments(outer.points)

    # Assert
    assert crossings == []
    assert np.all(increments > -1e-10)


def test_bowtie_crosses_itself():
    bowtie = np.array([0, 1 + 1j, 1, 1j])
    assert self_intersections(bowtie) == [(0, 2)]


# --- Output ---


def test_svg_contains_one_closed_path(unit_circle_curves, tmp_path):
    # Act
    path = emit_svg(unit_circle_curves, tmp_path / "circle.svg")

    # Assert
    text = path.read_text()
    assert text.count("<path") == 1
    assert " Z" in text
    assert "viewBox" in text


def test_svg_output_is_deterministic(f_one, tmp_path):
    # Arrange
    curves = sample_image(f_one, ray_count=4)

    # Act
    first = emit_svg(curves, tmp_path / "a.svg").read_bytes()
    second = emit_svg(curves, tmp_path / "b.svg").read_bytes()

    # Assert
    assert first == second


def test_empty_curve_set_is_rejected(tmp_path):
    with pytest.raises(EmptyCurveSetError):
        emit_svg(CurveSet(), tmp_path / "empty.svg")
    with pytest.raises(EmptyCurveSetError):
        emit_csv(CurveSet(), tmp_path / "empty.csv")


def test_write_failure_is_reported(mocker, unit_circle_curves, tmp_path):
    # Arrange
    mocker.patch("svgwrite.Drawing.save", side_effect=OSError("disk full"))

    # Act / Assert
    with pytest.raises(IOFailureError):
        emit_svg(unit_circle_curves, tmp_path / "circle.svg")


def test_csv_has_one_row_per_point(unit_circle_curves, tmp_path):
    # Act
    path = emit_csv(unit_circle_curves, tmp_path / "circle.csv")

    # Assert
    frame = pd.read_csv(path)
    assert list(frame.columns) == ["r", "theta", "re", "im"]
    assert len(frame) == len(unit_circle_curves.circles[0].points)


def test_figure1_writes_one_svg_per_alpha(tmp_path):
    # Act
    written = figure1(PANEL_ALPHAS, tmp_path, theta_count=64)

    # Assert
    assert [p.name for p in written] == ["f_alpha_0.2.svg", "f_alpha_0.6.svg", "f_alpha_0.8.svg", "f_alpha_1.svg"]
    assert all(p.exists() for p in written)
