import json

import numpy as np
import pytest

from exceptions import InputError
from manifest import MappingManifest, load_manifest
from models import MapKind, Variant


def _write(tmp_path, payload):
    path = tmp_path / "manifest.json"
    path.write_text(payload if isinstance(payload, str) else json.dumps(payload))
    return path


def test_identity_manifest_builds_trivial_map(manifest_dir):
    # Act
    f = load_manifest(manifest_dir / "identity.json").build()

    # Assert
    assert f.variant == Variant.NONVANISHING
    assert f.g(0.5) == pytest.approx(0.0)
    assert f(0.5) == pytest.approx(np.exp(0.5))


def test_series_derivation_gives_exact_g(manifest_dir):
    # Act
    f = load_manifest(manifest_dir / "f_alpha_0.6.json").build(order=16)

    # Assert
    assert f.g.kind == MapKind.SERIES
    assert f.g.exact
    np.testing.assert_allclose(f.g.series.coeffs[:5], [0, 1, 0.5, 0.2, 0], atol=1e-15)


def test_explicit_g_manifest(manifest_dir):
    f = load_manifest(manifest_dir / "f_1_explicit_g.json").build()
    assert f.variant == Variant.ORIGIN_FIXED
    assert f(0.5) == pytest.approx(0.5 * np.exp(0.625 + 2 / 3), rel=1e-12)


def test_closed_form_derivation_keeps_primitive(manifest_dir):
    manifest = load_manifest(manifest_dir / "counterexample.json")
    f = manifest.build()
    assert f.g.kind == MapKind.PRESET
    assert manifest.dilatation_map()(0.3) == pytest.approx(-0.3)


def test_herglotz_manifest_is_normalized(manifest_dir):
    f = load_manifest(manifest_dir / "herglotz_blaschke.json").build()
    assert f.h.d1(0.0) == pytest.approx(1.0)
    assert f.h(0.0) == pytest.approx(0.0)


@pytest.mark.parametrize("name", ["bloch_near_extremal.json", "growth_alpha0.5.json", "sharpness_t0.5.json"])
def test_sample_manifests_load(manifest_dir, name):
    assert load_manifest(manifest_dir / name).build().variant == Variant.NONVANISHING


def test_echo_round_trips(manifest_dir):
    manifest = load_manifest(manifest_dir / "f_alpha_0.6.json")
    assert MappingManifest.model_validate(manifest.echo()) == manifest


@pytest.mark.parametrize(
    "payload",
    [
        "{not json",
        {"variant": "NONVANISHING", "h": {"preset": "IDENTITY"}},
        {"variant": "NONVANISHING", "h": {"preset": "IDENTITY"}, "omega": {"preset": "SCALEZ"}, "g": {"preset": "IDENTITY"}},
        {"variant": "NONVANISHING", "h": {"preset": "NOPE"}, "omega": {"preset": "SCALEZ"}},
        {"variant": "NONVANISHING", "h": {"preset": "IDENTITY", "series": [[0, 0]]}, "omega": {"preset": "SCALEZ"}},
        {"variant": "SIDEWAYS", "h": {"preset": "IDENTITY"}, "omega": {"preset": "SCALEZ"}},
    ],
    ids=["syntax", "no-omega-or-g", "both-omega-and-g", "unknown-preset", "two-representations", "bad-variant"],
)
def test_malformed_manifests_are_input_errors(tmp_path, payload):
    with pytest.raises(InputError):
        load_manifest(_write(tmp_path, payload))


def test_missing_manifest_is_input_error(tmp_path):
    with pytest.raises(InputError):
        load_manifest(tmp_path / "absent.json")


@pytest.mark.parametrize(
    "payload",
    [
        {"variant": "NONVANISHING", "h": {"preset": "CONST", "params": {"c": 1.0}}, "omega": {"preset": "SCALEZ"}},
        {"variant": "ORIGIN_FIXED", "h": {"preset": "IDENTITY"}, "omega": {"preset": "CONST", "params": {"c": 0.5}}},
        {"variant": "NONVANISHING", "h": {"preset": "MOBIUS"}, "omega": {"preset": "SCALEZ"}},
    ],
    ids=["h-not-vanishing", "omega-not-vanishing", "missing-param"],
)
def test_invalid_maps_are_input_errors_at_build(tmp_path, payload):
    manifest = load_manifest(_write(tmp_path, payload))
    with pytest.raises(InputError):
        manifest.build()
