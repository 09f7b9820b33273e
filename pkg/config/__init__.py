"""Pipeline configuration: YAML schema, validation and environment defaults."""

from .schema import (
    EmbedSettings,
    EvaluateSettings,
    FilterSettings,
    GenerateSettings,
    PipelineConfig,
    SolverSettings,
    SweepSettings,
)

__all__ = [
    "PipelineConfig",
    "GenerateSettings",
    "FilterSettings",
    "SolverSettings",
    "EmbedSettings",
    "EvaluateSettings",
    "SweepSettings",
]
