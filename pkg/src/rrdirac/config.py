"""Run configuration and verification report schemas (JSON)."""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, computed_field, field_validator, model_validator

from .gauge import FluxConfig


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


class FluxSpec(_Strict):
    x: float
    y: float
    n: int = Field(strict=True)

    @model_validator(mode="after")
    def _nonzero(self):
        if self.n == 0:
            raise ValueError("flux quanta n must be nonzero")
        return self


class Grid(_Strict):
    xmin: float = -2.0
    xmax: float = 2.0
    ymin: float = -2.0
    ymax: float = 2.0
    nx: int = Field(41, ge=2)
    ny: int = Field(41, ge=2)

    @model_validator(mode="after")
    def _ordered(self):
        if not self.xmin < self.xmax:
            raise ValueError("grid needs xmin < xmax")
        if not self.ymin < self.ymax:
            raise ValueError("grid needs ymin < ymax")
        return self


class Tolerances(_Strict):
    contour: float = Field(1e-6, gt=0)
    winding: float = Field(1e-6, gt=0)
    # 1e-4: at 1e-5 rounding in the difference quotient competes with the
    # h^2 truncation term and the h/(h/2) ratio stops being informative.
    residual_h: float = Field(1e-4, gt=0)
    rank_rel: float = Field(1e-8, gt=0)


class RunConfig(_Strict):
    fluxes: list[FluxSpec] = Field(default_factory=list)
    grid: Grid = Field(default_factory=Grid)
    tolerances: Tolerances = Field(default_factory=Tolerances)
    seed: int = 0

    @classmethod
    def load(cls, path: str | Path) -> RunConfig:
        with open(path, encoding="utf-8") as fh:
            return cls.model_validate(json.load(fh))

    def flux_config(self) -> FluxConfig:
        return FluxConfig(tuple((complex(f.x, f.y), f.n) for f in self.fluxes))


class CheckRecord(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    name: str
    expected: Any
    observed: Any
    tolerance: float | None = None
    passed: bool = Field(serialization_alias="pass", validation_alias="pass")
    detail: str | None = None

    @field_validator("expected", "observed", "passed", mode="before")
    @classmethod
    def _plain(cls, v):
        return v.item() if isinstance(v, np.generic) else v


class VerificationReport(BaseModel):
    degree: int
    seed: int
    fluxes: list[FluxSpec]
    checks: list[CheckRecord] = Field(default_factory=list)

    @computed_field(alias="pass")
    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[CheckRecord]:
        return [c for c in self.checks if not c.passed]

    def to_json(self) -> str:
        return self.model_dump_json(by_alias=True, indent=2)
