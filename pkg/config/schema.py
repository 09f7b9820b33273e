"""Pipeline configuration schema, YAML round trip and environment defaults."""

from __future__ import annotations

import logging
import os
from pathlib import Path
from typing import Any, Optional

import yaml
from pydantic import BaseModel, Field, field_validator

from mds_solvers import SolverConfig
from synthetic import derive_seed
from triangle_filter import FilterMode, default_triangles_per_edge

logger = logging.getLogger(__name__)

ENV_OUTPUT_ROOT = "TMDS_OUTPUT_ROOT"
ENV_SEED = "TMDS_SEED"
DEFAULT_OUTPUT_ROOT = "runs"


def _one_of(value: str, valid: set[str], name: str) -> str:
    value = value.lower()
    if value not in valid:
        raise ValueError(f"{name} must be one of {sorted(valid)}, got {value!r}")
    return value


class GenerateSettings(BaseModel):
    kind: str = Field(default="hypercube", description="Point generator (hypercube, plus, spiral)")
    n: int = Field(default=70, ge=1, description="Number of elements")
    dim: int = Field(default=2, ge=1, description="Hypercube dimension")
    outlier_rate: float = Field(default=0.0, ge=0.0, le=1.0, description="Fraction of pairs replaced")
    outlier_count: Optional[int] = Field(default=None, ge=0, description="Exact outlier count, overrides the rate")
    sigma: float = Field(default=0.0, ge=0.0, description="Log-normal distortion scale")
    lognormal_center: str = Field(default="mean", description="Log-normal factor pinned at mean 1 or median 1")
    side: float = Field(default=1.0, gt=0.0, description="Hypercube side / shape scale")
    jitter: float = Field(default=0.0, ge=0.0, description="Gaussian jitter for shapes")

    @field_validator("kind")
    @classmethod
    def validate_kind(cls, v: str) -> str:
        return _one_of(v, {"hypercube", "plus", "spiral"}, "kind")

    @field_validator("lognormal_center")
    @classmethod
    def validate_lognormal_center(cls, v: str) -> str:
        return _one_of(v, {"mean", "median"}, "lognormal_center")


class FilterSettings(BaseModel):
    mode: str = Field(default="exact", description="Counting mode (exact, sampled)")
    triangles_per_edge: Optional[int] = Field(default=None, ge=1, description="Sampled triangles per edge")
    seed: Optional[int] = Field(default=None, description="Sampling seed; derived from the global seed if unset")
    rel_tol: float = Field(default=1e-9, ge=0.0, lt=1.0, description="Relative tolerance of the broken test")
    edge_fraction: float = Field(default=0.5, gt=0.0, le=1.0, description="Cumulative histogram requirement")
    expected_outlier_rate: Optional[float] = Field(
        default=None, ge=0.0, lt=1.0, description="Sets edge_fraction = 1 − rate when given"
    )

    @field_validator("mode")
    @classmethod
    def validate_mode(cls, v: str) -> str:
        return _one_of(v, {"exact", "sampled"}, "mode")

    def to_filter_mode(self, global_seed: int, n: Optional[int] = None) -> FilterMode:
        """Exact mode, or sampled mode with K defaulting to the rule of thumb for ``n``."""
        if self.mode == "exact":
            return FilterMode.exact()
        k = self.triangles_per_edge
        if k is None:
            if n is None:
                raise ValueError("sampled mode needs triangles_per_edge or a known N")
            k = default_triangles_per_edge(n)
        seed = self.seed if self.seed is not None else derive_seed(global_seed, "filter")
        return FilterMode.sampled(k, seed=seed)


class SolverSettings(BaseModel):
    max_iters: int = Field(default=300, ge=1, description="Maximum SMACOF iterations")
    rel_stress_tol: float = Field(default=1e-6, gt=0.0, description="Relative stress improvement to stop")
    init: str = Field(default="classical", description="Initialization (classical, random)")
    seed: Optional[int] = Field(default=None, description="Random-init seed; derived from the global seed if unset")

    @field_validator("init")
    @classmethod
    def validate_init(cls, v: str) -> str:
        return _one_of(v, {"classical", "random"}, "init")

    def to_solver_config(self, global_seed: int = 0) -> SolverConfig:
        seed = self.seed if self.seed is not None else derive_seed(global_seed, "solver")
        return SolverConfig(
            max_iters=self.max_iters, rel_stress_tol=self.rel_stress_tol, init=self.init, seed=seed
        )


class EmbedSettings(BaseModel):
    method: str = Field(default="tmds", description="Embedding method (tmds, smacof, sammon, fg12)")
    dim: int = Field(default=2, ge=1, description="Target dimension")
    lam: Optional[float] = Field(default=None, gt=0.0, description="FG12 λ")

    @field_validator("method")
    @classmethod
    def validate_method(cls, v: str) -> str:
        return _one_of(v, {"tmds", "smacof", "sammon", "fg12"}, "method")


class EvaluateSettings(BaseModel):
    against: str = Field(default="true", description="Reference distances for the score (true, observed)")

    @field_validator("against")
    @classmethod
    def validate_against(cls, v: str) -> str:
        return _one_of(v, {"true", "observed"}, "against")


class SweepSettings(BaseModel):
    kind: str = Field(default="rate", description="Sweep to run")
    n: Optional[int] = Field(default=None, ge=3, description="Elements per instance; sweep default if unset")
    dim: int = Field(default=2, ge=1)
    repeats: int = Field(default=10, ge=1, description="Seeds per grid point")
    methods: list[str] = Field(default_factory=lambda: ["tmds", "smacof"])
    rates: list[float] = Field(default_factory=lambda: [0.05, 0.10, 0.15, 0.20, 0.25, 0.30, 0.35])
    sigmas: list[float] = Field(default_factory=lambda: [0.3, 0.6, 1.0])
    lognormal_center: str = Field(default="mean", description="Log-normal centring for the σ sweep")
    log2_factors: list[float] = Field(
        default_factory=lambda: [-3.0, -2.0, -1.5, -1.0, -0.5, 0.0, 0.5, 1.0, 1.5, 2.0, 3.0]
    )
    background_rate: float = Field(default=0.0, ge=0.0, le=1.0, description="Outliers under the deformed edge")
    dims: list[int] = Field(default_factory=lambda: [2, 6, 10])
    trials: int = Field(default=1_000_000, ge=1, description="Monte-Carlo trials per dimension")
    triangles_per_edge: list[int] = Field(default_factory=lambda: [5, 10, 20, 45])
    sampling_rate: float = Field(default=0.10, ge=0.0, le=1.0)
    lambdas: list[float] = Field(default_factory=lambda: [0.5, 1.0, 2.0, 4.0, 8.0])
    inits: int = Field(default=3, ge=1)
    lambda_outliers: int = Field(default=100, ge=0)
    lambda_side: float = Field(default=10.0, gt=0.0)
    sizes: list[int] = Field(default_factory=lambda: [150, 300, 600])

    @field_validator("kind")
    @classmethod
    def validate_kind(cls, v: str) -> str:
        return _one_of(v, {"rate", "deformation", "sigma", "theory", "sampling", "lambda", "timing"}, "kind")

    @field_validator("lognormal_center")
    @classmethod
    def validate_lognormal_center(cls, v: str) -> str:
        return _one_of(v, {"mean", "median"}, "lognormal_center")

    @field_validator("methods")
    @classmethod
    def validate_methods(cls, v: list[str]) -> list[str]:
        if not v:
            raise ValueError("methods must not be empty")
        return [_one_of(m, {"tmds", "smacof", "sammon", "fg12"}, "method") for m in v]


class PipelineConfig(BaseModel):
    """Root configuration for generate / filter / embed / evaluate / sweep."""

    seed: int = Field(default=0, description="Global seed; every random step derives from it")
    output_root: str = Field(default=DEFAULT_OUTPUT_ROOT, description="Default output directory root")
    workers: int = Field(default=1, ge=1, description="Worker processes for sweeps")

    generate: GenerateSettings = Field(default_factory=GenerateSettings)
    filter: FilterSettings = Field(default_factory=FilterSettings)
    solver: SolverSettings = Field(default_factory=SolverSettings)
    embed: EmbedSettings = Field(default_factory=EmbedSettings)
    evaluate: EvaluateSettings = Field(default_factory=EvaluateSettings)
    sweep: SweepSettings = Field(default_factory=SweepSettings)

    @classmethod
    def from_env(cls) -> PipelineConfig:
        """Defaults with the output root and seed taken from the environment."""
        return cls(
            output_root=os.getenv(ENV_OUTPUT_ROOT, DEFAULT_OUTPUT_ROOT),
            seed=int(os.getenv(ENV_SEED, "0")),
        )

    @classmethod
    def from_yaml(cls, path: str | Path) -> PipelineConfig:
        """Load a pipeline config; keys missing from the file keep their environment defaults."""
        path = Path(path)
        if not path.exists():
            raise FileNotFoundError(f"Pipeline config not found: {path}")

        with open(path, "r", encoding="utf-8") as f:
            raw = yaml.safe_load(f) or {}
        if not isinstance(raw, dict):
            raise ValueError(f"Pipeline config {path} must be a mapping, got {type(raw).__name__}")

        base = cls.from_env().model_dump()
        base.update(raw)
        return cls.model_validate(base)

    def to_yaml(self, path: str | Path):
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8") as f:
            yaml.dump(self.model_dump(mode="json"), f, default_flow_style=False, allow_unicode=True, sort_keys=False)
        logger.info(f"Pipeline config saved to {path}")

    def with_overrides(self, section: Optional[str] = None, **values: Any) -> PipelineConfig:
        """
        Copy with the non-None ``values`` applied to ``section`` (or the root).

        The result is re-validated, so overrides obey the same bounds as the file.
        """
        updates = {key: value for key, value in values.items() if value is not None}
        if not updates:
            return self
        data = self.model_dump()
        if section is None:
            data.update(updates)
        else:
            if section not in data or not isinstance(data[section], dict):
                raise ValueError(f"Unknown config section {section!r}")
            data[section].update(updates)
        return type(self).model_validate(data)
