"""Tests for the homological perturbation engine.

The headline check: transferring the extra-product boundary across the
columnwise retract of the split canonical complex must land, matrix for
matrix, on the closed-form transferred data (total boundary, inclusion,
projection, homotopy of the hat complex) — the series collapses because
the homotopy kills every higher term.
"""

from fractions import Fraction

import pytest

from relcyc.algebra import load_datum
from relcyc.complexes import ChainModel
from relcyc.linalg import SparseMatrix
from relcyc.perturbation import (
    DeformationRetract,
    NotLocallyNilpotent,
    column_perturbation,
    column_retract,
    perturb,
    verify_retract,
)


@pytest.fixture(scope="module")
def models():
    return {name: ChainModel(load_datum(name)) for name in ("t", "tp3", "dn")}


# ----------------------------------------------------------------------
# the column retract itself
# ----------------------------------------------------------------------


@pytest.mark.parametrize("name,top", [("t", 6), ("tp3", 5), ("dn", 6)])
def test_column_retract_is_a_retract(models, name, top):
    sdr = column_retract(models[name], top)
    assert verify_retract(sdr, name) == []


def test_column_retract_dims(models):
    model = models["t"]
    sdr = column_retract(model, 4)
    for n in range(5):
        assert sdr.small_dim(n) == model.hat_layout(n).total
        assert sdr.big_dim(n) == model.frak_layout(n).total


# ----------------------------------------------------------------------
# transfer of the extra-product boundary
# ----------------------------------------------------------------------


@pytest.mark.parametrize("name,top", [("t", 6), ("tp3", 5)])
def test_column_transfer_collapses(models, name, top):
    model = models[name]
    sdr = column_retract(model, top)
    out = perturb(sdr, column_perturbation(model, top))
    for n in range(1, out.top + 1):
        assert out.d_small[n] == model.tot_hat_boundary(n), (name, n)
        assert out.d_big[n] == model.tot_frak_boundary(n), (name, n)
    for n in range(out.top + 1):
        assert out.i[n] == model.tot_vartheta(n), (name, n)
        assert out.p[n] == model.tot_theta(n), (name, n)
    for n in range(out.top):
        assert out.h[n] == model.tot_eps(n), (name, n)


@pytest.mark.parametrize("name,top", [("t", 5), ("dn", 5)])
def test_transferred_data_is_again_a_retract(models, name, top):
    model = models[name]
    out = perturb(column_retract(model, top), column_perturbation(model, top))
    assert verify_retract(out, name) == []


def test_zero_perturbation_is_identity(models):
    model = models["t"]
    sdr = column_retract(model, 4)
    out = perturb(sdr, {})
    for n in range(out.top + 1):
        assert out.d_small[n] == sdr.d_small[n]
        assert out.d_big[n] == sdr.d_big[n]
        assert out.i[n] == sdr.i[n]
        assert out.p[n] == sdr.p[n]
    for n in range(out.top):
        assert out.h[n] == sdr.h[n]


# ----------------------------------------------------------------------
# failure mode
# ----------------------------------------------------------------------


def _line_contraction() -> DeformationRetract:
    """A two-term big complex contracted to zero; the homotopy inverts
    the differential, so any nonzero perturbation has a divergent series."""
    one = SparseMatrix.identity(1)
    return DeformationRetract(
        top=1,
        small_dims={0: 0, 1: 0},
        big_dims={0: 1, 1: 1},
        d_small={0: SparseMatrix(0, 0), 1: SparseMatrix(0, 0)},
        d_big={0: SparseMatrix(0, 1), 1: -one},
        p={0: SparseMatrix(0, 1), 1: SparseMatrix(0, 1)},
        i={0: SparseMatrix(1, 0), 1: SparseMatrix(1, 0)},
        h={0: one},
    )


def test_line_contraction_is_a_retract():
    assert verify_retract(_line_contraction()) == []


def test_non_nilpotent_perturbation_raises():
    sdr = _line_contraction()
    delta = {1: SparseMatrix.identity(1)}
    with pytest.raises(NotLocallyNilpotent):
        perturb(sdr, delta)


def test_half_scale_perturbation_diverges():
    sdr = _line_contraction()
    half = SparseMatrix.identity(1).scaled(Fraction(1, 2))
    with pytest.raises(NotLocallyNilpotent):
        perturb(sdr, {1: half})
