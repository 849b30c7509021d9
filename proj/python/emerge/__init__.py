"""Emerging-topic detection for scientometric corpora."""

from ._core import (
    ConfigError,
    DataError,
    Error,
    FormatError,
    MissingArtifactError,
    escore_proxy,
    format_sidecar,
    lemmatize,
    normalize,
    novelty_absolute,
    novelty_relative,
    ols_slope,
    parse_sidecar,
    pearson,
    rank_terms,
    read_candidates,
    run_pipeline,
    run_stage,
    score_corpus,
    slog,
)

__all__ = [
    "ConfigError",
    "DataError",
    "Error",
    "FormatError",
    "MissingArtifactError",
    "escore_proxy",
    "format_sidecar",
    "lemmatize",
    "normalize",
    "novelty_absolute",
    "novelty_relative",
    "ols_slope",
    "parse_sidecar",
    "pearson",
    "rank_terms",
    "read_candidates",
    "run_pipeline",
    "run_stage",
    "score_corpus",
    "slog",
]
