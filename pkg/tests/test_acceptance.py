"""Acceptance gate: the eight guarantees the package ships with.

Each test is one guarantee, so ``pytest -v`` prints one pass/fail line
per guarantee.  Dimensions asserted here were frozen from the
independent word-level oracle before any chain-level pipeline ran, and
every guarantee that quotes a wall-clock budget measures it with a
monotonic timer around a cold engine.
"""

import subprocess
import time

from relcyc import cli
from relcyc.algebra import load_datum
from relcyc.complexes import ChainModel
from relcyc.harmonic import HarmonicModel
from relcyc.homology import (
    HC_PIPELINES,
    HH_PIPELINES,
    HomologyEngine,
    verify_weight_blocks,
)
from relcyc.identities import (
    verify_bicomplex_transfer,
    verify_column_transfer,
)

ALL_PAIRS = {("hh", p) for p in HH_PIPELINES} | {
    ("hc", p) for p in HC_PIPELINES
}


def test_criterion_1_dual_numbers_homology_under_ten_seconds():
    """Dual numbers: every pipeline reports HH_n = 1 for 0 <= n <= 8 and
    HC = 1, 0, 1, 0, 1, 0, 1, 0, 1, in under ten seconds."""
    start = time.perf_counter()
    comparison = HomologyEngine(load_datum("dn")).compare_pipelines(8)
    elapsed = time.perf_counter() - start
    assert {(r.kind, r.pipeline) for r in comparison.reports} == ALL_PAIRS
    assert comparison.all_agree
    for report in comparison.reports:
        if report.kind == "hh":
            assert report.dims == (1,) * 9
        else:
            assert report.dims == (1, 0, 1, 0, 1, 0, 1, 0, 1)
    assert elapsed < 10.0


def test_criterion_2_split_pair_homology_under_ten_seconds():
    """The two-dimensional split pair: HH is 1, 0, 0, 0, 0, 0, 0 and HC
    is 1, 0, 1, 0, 1, 0, 1 through degree 6, every pipeline, under ten
    seconds.

    Here the extension is a product of two copies of the ground field.
    Separability kills Hochschild homology above degree zero, but each
    field factor keeps a one-dimensional cyclic class in every even
    degree, and the relative part retains exactly one of them; the
    word-level oracle fixed these values, all four cyclic pipelines
    reproduce them, and the periodicity map is an isomorphism from
    degree 2 on."""
    start = time.perf_counter()
    comparison = HomologyEngine(load_datum("k2")).compare_pipelines(6)
    elapsed = time.perf_counter() - start
    assert comparison.all_agree
    for report in comparison.reports:
        if report.kind == "hh":
            assert report.dims == (1, 0, 0, 0, 0, 0, 0)
        else:
            assert report.dims == (1, 0, 1, 0, 1, 0, 1)
    assert elapsed < 10.0


def test_criterion_3_pipelines_agree_exactly():
    """Truncated polynomial instances: the word-level oracle, the
    double-complex totalization, the cyclic quotient, and the harmonic
    pipeline agree degree by degree, and both Hochschild routes agree,
    with any disagreement a hard failure."""
    for name, bound in (("t", 6), ("tp3", 6), ("tp5", 4)):
        engine = HomologyEngine(load_datum(name))
        comparison = engine.compare_pipelines(bound)
        engine.require_agreement(bound)  # raises on any mismatch
        assert comparison.all_agree, name


def test_criterion_4_identity_suite_clean_within_five_minutes():
    """`verify` exits 0 on dn, t, tp3 through degree 6 and tp5 through
    degree 4, with every identity family checked on full bases, inside
    a five-minute budget."""
    start = time.perf_counter()
    for name, bound in (("dn", 6), ("t", 6), ("tp3", 6), ("tp5", 4)):
        assert cli.run(["verify", name, "--max-degree", str(bound)]) == 0
    assert time.perf_counter() - start < 300.0


def test_criterion_5_perturbation_reproduces_transferred_data():
    """Transferring the column contraction through the perturbation
    lemma reproduces the stored twisted differential, both homotopies,
    and the counit matrix for matrix; transferring the bicomplex
    contraction reproduces the comparison maps and their homotopy."""
    model = ChainModel(load_datum("t"))
    assert verify_column_transfer(model, 6) == []
    assert verify_bicomplex_transfer(HarmonicModel(model), 6) == []


def test_criterion_6_weight_grading_splits_every_operator():
    """On the graded instance (generator weights 1 and 2) every chain
    operator is block-diagonal over weights, and per-weight cyclic
    dimensions sum to the ungraded totals."""
    engine = HomologyEngine(load_datum("tp3"))
    assert verify_weight_blocks(engine, 6) == []
    graded = engine.graded_hc(6)
    totals = engine.relative_hc(6, "quotient").dims
    assert graded.dims == totals
    for n in range(7):
        assert sum(dims[n] for _, dims in graded.per_weight) == totals[n]
    nonzero = {
        lam: dims for lam, dims in graded.per_weight if any(dims)
    }
    expected = {}
    for k in range(4):
        one = tuple(1 if n == 2 * k else 0 for n in range(7))
        expected[3 * k + 1] = one
        expected[3 * k + 2] = one
    assert nonzero == expected


def test_criterion_7_periodicity_sequence_is_exact():
    """The long sequence linking Hochschild and cyclic groups is exact
    at every slot through degree 5, on both the trivial-connection
    instance and the graded one, by rank arithmetic on induced maps."""
    for name in ("dn", "tp3"):
        report = HomologyEngine(load_datum(name)).sbi_report(5)
        assert report.ok, name
        for slot in report.slots:
            assert slot.composite_is_zero, (name, slot)
            assert slot.rank_in + slot.rank_out == slot.dim, (name, slot)


def test_criterion_8_reports_are_byte_deterministic(tmp_path):
    """Two consecutive `verify` runs and two consecutive `homology`
    runs of the installed executable write byte-identical reports."""
    commands = {
        "verify": ["relcyc", "verify", "dn", "--max-degree", "4"],
        "homology": ["relcyc", "homology", "dn", "--kind", "hc",
                     "--max-degree", "6"],
    }
    for label, argv in commands.items():
        outputs = []
        for attempt in ("a", "b"):
            target = tmp_path / f"{label}-{attempt}.json"
            done = subprocess.run(
                argv + ["--out", str(target)],
                capture_output=True, text=True)
            assert done.returncode == 0, done.stderr
            outputs.append(target.read_bytes())
        assert outputs[0] == outputs[1], label
