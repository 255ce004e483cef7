# manifest.py
"""
Mapping manifests: JSON descriptions of a logharmonic map.

    {
      "variant": "ORIGIN_FIXED",
      "h": {"preset": "QUAD", "params": {"alpha": 0.6}},
      "omega": {"preset": "SCALEZ"},
      "derive": "series"
    }

Analytic parts are either ``{"preset": ..., "params": ..., "operands": [...]}``
or ``{"series": [[re, im], ...]}``. Exactly one of "omega" and "g" is given;
with "omega", g is derived at load time.
"""

import json
import logging
from pathlib import Path
from typing import Any, Optional

from pydantic import BaseModel, ValidationError, model_validator

import config
from exceptions import InputError, LogharmonicError
from mappings import AnalyticMap, LogharmonicMap
from models import DeriveMode, Preset, Variant

logger = logging.getLogger(__name__)


class MapSpec(BaseModel):
    preset: Optional[Preset] = None
    params: dict[str, Any] = {}
    operands: list["MapSpec"] = []
    series: Optional[list[tuple[float, float]]] = None

    @model_validator(mode="after")
    def _one_representation(self) -> "MapSpec":
        if (self.preset is None) == (self.series is None):
            raise ValueError("give exactly one of 'preset' and 'series'")
        return self

    def build(self) -> AnalyticMap:
        if self.series is not None:
            return AnalyticMap.from_series([complex(re, im) for re, im in self.series], exact=True)
        return AnalyticMap.from_preset(self.preset, [operand.build() for operand in self.operands], **self.params)


class MappingManifest(BaseModel):
    variant: Variant
    h: MapSpec
    omega: Optional[MapSpec] = None
    g: Optional[MapSpec] = None
    derive: DeriveMode = DeriveMode.SERIES

    @model_validator(mode="after")
    def _one_of_omega_g(self) -> "MappingManifest":
        if (self.omega is None) == (self.g is None):
            raise ValueError("give exactly one of 'omega' and 'g'")
        return self

    def build(self, order: int = config.SERIES_ORDER) -> LogharmonicMap:
        """Constructs the map; g comes from omega when only the dilatation is given."""
        try:
            h = self.h.build()
            if self.g is not None:
                return LogharmonicMap(h=h, g=self.g.build(), variant=self.variant)
            order_or_none = order if self.derive == DeriveMode.SERIES else None
            return LogharmonicMap.from_dilatation(h, self.omega.build(), self.variant, order=order_or_none)
        except (ValidationError, ValueError, LogharmonicError) as e:
            raise InputError(f"manifest does not describe a valid map: {e}") from e

    def dilatation_map(self) -> Optional[AnalyticMap]:
        return self.omega.build() if self.omega is not None else None

    def echo(self) -> dict[str, Any]:
        return self.model_dump(mode="json", exclude_none=True)


MapSpec.model_rebuild()


def load_manifest(path: str | Path) -> MappingManifest:
    path = Path(path)
    try:
        manifest = MappingManifest.model_validate_json(path.read_text(encoding="utf-8"))
    except OSError as e:
        raise InputError(f"cannot read manifest {path}: {e}") from e
    except (ValidationError, json.JSONDecodeError) as e:
        raise InputError(f"malformed manifest {path}: {e}") from e
    logger.info(f"Loaded {manifest.variant.value} manifest {path.name}")
    return manifest
