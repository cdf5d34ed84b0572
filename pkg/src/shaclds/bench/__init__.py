"""Synthetic data generation and the strategy benchmark."""

from shaclds.bench.generator import GeneratorConfig, GeneratorError, GroundTruth, generate
from shaclds.bench.harness import (
    CONFIG_IDS,
    BenchConfig,
    BenchError,
    RunRecord,
    SummaryRow,
    run_bench,
    run_config,
    summarize,
)

__all__ = [
    "CONFIG_IDS",
    "BenchConfig",
    "BenchError",
    "GeneratorConfig",
    "GeneratorError",
    "GroundTruth",
    "RunRecord",
    "SummaryRow",
    "generate",
    "run_bench",
    "run_config",
    "summarize",
]
