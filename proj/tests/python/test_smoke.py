import json
import math

import pytest

import phaseeval

ANNOTATION = [3, 3, 3, 4, 4, 4, 4, 4, 4, 5, 5, 5, 5, 5, 5, 6, 6, 6]
PREDICTION = [3, 5, 4, 4, 3, 3, 3, 4, 6, 3, 4, 4, 6, 5, 6, 5, 4, 6]


def test_f1_upper():
    assert math.isclose(phaseeval.f1_upper(0.839, 0.805), 0.822, abs_tol=5e-4)


def test_phase_metric_undefined_is_none():
    assert phaseeval.phase_metric("precision", [0, 0, 1], [0, 0, 0], 1, 2) is None
    assert phaseeval.phase_metric("recall", [0, 0, 1], [0, 0, 0], 0, 2) == 1.0


def test_relaxed_worked_example():
    flags = phaseeval.relax_flags(ANNOTATION, PREDICTION, omega=2)
    assert sum(flags) == 14
    counts = phaseeval.relaxed_counts(ANNOTATION, PREDICTION, flags, 4)
    assert counts == {"r_tp": 7, "union": 10, "pred_count": 6, "annot_count": 6}
    report = phaseeval.evaluate_relaxed(7, [ANNOTATION], [[PREDICTION]], omega=2)
    assert math.isclose(report["per_phase"][4]["metrics"]["jaccard"]["mean"], 0.7)
    legacy = phaseeval.evaluate_relaxed(7, [ANNOTATION], [[PREDICTION]], omega=2, bug_compatible=True)
    assert legacy["protocol"]["watermark"] == "legacy-bug-compatible"


def test_evaluate_report():
    report = phaseeval.evaluate(7, [ANNOTATION, ANNOTATION], [[PREDICTION], [ANNOTATION]])
    assert report["summary"]["accuracy"]["sd_runs"] is None
    assert math.isclose(report["summary"]["accuracy"]["mean"], (5 / 18 + 1) / 2, abs_tol=1e-6)
    with pytest.raises(phaseeval.PhaseEvalError):
        phaseeval.evaluate(7, [[0, 1]], [[[0]]])


def test_comparability():
    base = {
        "split_name": "32:8:40",
        "policy": "exclude-missing-phase",
        "f1_variant": "unknown",
        "std_source": "phases",
        "std_mode": "corrected",
        "runs": 5,
        "trained_on_validation": False,
    }
    relaxed = json.dumps(dict(base, relaxed=True, omega=10))
    regular = json.dumps(dict(base, relaxed=False, omega=0))
    verdict, findings = phaseeval.check_comparable(relaxed, regular)
    assert verdict == "incomparable"
    assert any(rule == "A" and severity == "hard" for rule, severity, _ in findings)


def test_splits_and_ledger():
    assert "32:8:40" in phaseeval.registered_splits()
    assert len(phaseeval.split("40:8:32")["test"]) == 32
    board = json.loads(phaseeval.leaderboard(phaseeval.seed_ledger_path(), "split_name=32:8:40,relaxed=false"))
    assert board["groups"]


def test_synthesize(tmp_path):
    manifest = phaseeval.synthesize(str(tmp_path), videos=3, runs=2, seed=1)
    report = json.loads(phaseeval.evaluate_manifest(manifest))
    assert report["summary"]["accuracy"]["mean"] == 1.0
