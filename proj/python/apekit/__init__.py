"""Corpus filtering, change-tracked preprocessing and evaluation for automatic post-editing."""

from ._core import (
    ConfigError,
    DataError,
    UndefinedStatistic,
    __version__,
    adequacy_summary,
    bleu,
    bootstrap,
    chrf,
    cohen_kappa,
    evaluate,
    filter_corpus,
    normalize_punctuation,
    pairwise_kappa,
    postprocess,
    preprocess,
    run_cli,
    strip_markup,
    ter,
    ter_buckets,
    ter_corpus,
    ter_oracle,
    tokenize,
    upsample_mix,
    weighted_kappa,
)

__all__ = [
    "ConfigError",
    "DataError",
    "UndefinedStatistic",
    "__version__",
    "adequacy_summary",
    "bleu",
    "bootstrap",
    "chrf",
    "cohen_kappa",
    "evaluate",
    "filter_corpus",
    "normalize_punctuation",
    "pairwise_kappa",
    "postprocess",
    "preprocess",
    "run_cli",
    "strip_markup",
    "ter",
    "ter_buckets",
    "ter_corpus",
    "ter_oracle",
    "tokenize",
    "upsample_mix",
    "weighted_kappa",
]
