"""Sen and SST poverty indices with empirical likelihood inference."""

import json as _json

from ._core import (
    PovindexError,
    analyze_json,
    confidence_interval,
    draw,
    el_log_ratio,
    estimate,
    jel_log_ratio,
    sen_pseudovalues,
    simulate_csv,
    sst_pseudovalues,
    true_index,
    ustat_components,
)


def analyze(incomes, z, ci=(), alpha=0.05):
    """Analysis report as a dict (same schema as `povindex estimate --format json`)."""
    return _json.loads(analyze_json(list(incomes), z, list(ci), alpha))


def error_code(exc):
    """Machine-readable code carried by a PovindexError."""
    return exc.args[1] if len(exc.args) > 1 else None


__all__ = [
    "PovindexError",
    "analyze",
    "analyze_json",
    "confidence_interval",
    "draw",
    "el_log_ratio",
    "error_code",
    "estimate",
    "jel_log_ratio",
    "sen_pseudovalues",
    "simulate_csv",
    "sst_pseudovalues",
    "true_index",
    "ustat_components",
]
