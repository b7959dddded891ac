"""Numerical association rule mining with swarm optimizers."""

from ._narmkit import (  # noqa: F401
    Attribute,
    ConfigError,
    Dataset,
    FormatError,
    IoError,
    RuleIndexError,
    __version__,
    decode,
    evaluate_rule,
    generate_planted,
    genotype_dimension,
    mine,
    optimize,
    write_csv,
)

__all__ = [
    "Attribute",
    "ConfigError",
    "Dataset",
    "FormatError",
    "IoError",
    "RuleIndexError",
    "decode",
    "evaluate_rule",
    "generate_planted",
    "genotype_dimension",
    "mine",
    "optimize",
    "write_csv",
]
