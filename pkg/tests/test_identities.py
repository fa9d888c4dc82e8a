"""Tests for the bundled identity suite and its reporting."""

import pytest

from relcyc.algebra import load_datum
from relcyc.complexes import ChainModel, Check
from relcyc.harmonic import HarmonicModel
from relcyc.identities import (
    SuiteReport,
    SuiteViolation,
    run_identity_suite,
    verify_samples,
)


def test_suite_is_green_with_samples():
    report = run_identity_suite(load_datum("dn"), 4, samples=6, seed=3)
    assert report.ok
    names = [name for name, _ in report.counts]
    assert names[-1] == "samples"
    assert len(names) == 20
    assert all(bad == 0 for _, bad in report.counts)


def test_suite_lines_give_one_verdict_per_family():
    report = run_identity_suite(load_datum("k2"), 3)
    lines = report.lines()
    assert len(lines) == len(report.counts)
    assert all(line.endswith("ok") for line in lines)


def test_require_names_instance_and_identity():
    doctored = SuiteReport(
        "dn", 4, (("rotation", 1),),
        (Check("rotation", "t^(w+1) = 1", "dn (v=0, w=2)"),))
    with pytest.raises(SuiteViolation, match=r"t\^\(w\+1\) = 1.*dn"):
        doctored.require()


def test_sampled_checks_pass_for_several_seeds():
    model = ChainModel(load_datum("t"))
    harmonic = HarmonicModel(model)
    for seed in (0, 1, 2026):
        assert verify_samples(model, harmonic, 4, 4, seed) == []
