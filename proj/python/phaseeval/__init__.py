"""Evaluation metrics for surgical phase recognition."""

import json
import os

from ._phaseeval import (
    PhaseEvalError,
    accuracy,
    check_comparable,
    confusion_matrix,
    evaluate_manifest,
    f1_upper,
    leaderboard,
    normalize_ledger,
    phase_metric,
    registered_splits,
    relax_flags,
    relaxed_counts,
    split,
    synthesize,
)
from . import _phaseeval

__all__ = [
    "PhaseEvalError",
    "accuracy",
    "check_comparable",
    "confusion_matrix",
    "evaluate",
    "evaluate_manifest",
    "evaluate_relaxed",
    "f1_upper",
    "leaderboard",
    "normalize_ledger",
    "phase_metric",
    "registered_splits",
    "relax_flags",
    "relaxed_counts",
    "seed_ledger_path",
    "split",
    "synthesize",
]


def evaluate(phase_count, annotations, predictions, **options):
    """Regular metrics as a report dict. predictions[v][r] is run r of video v."""
    return json.loads(_phaseeval.evaluate(phase_count, annotations, predictions, **options))


def evaluate_relaxed(phase_count, annotations, predictions, **options):
    """Relaxed metrics as a report dict."""
    return json.loads(_phaseeval.evaluate_relaxed(phase_count, annotations, predictions, **options))


def seed_ledger_path():
    """Path of the shipped ledger of published Cholec80 results."""
    packaged = os.path.join(os.path.dirname(__file__), "data", "seed_ledger.json")
    if os.path.exists(packaged):
        return packaged
    return _phaseeval.compiled_seed_ledger_path
