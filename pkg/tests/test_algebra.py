"""Tests for instance loading, validation, and the extension algebra.

Expected values are hand enumerations of the axioms on the tiny bundled
instances (dimensions at most 4), plus structural identities of the
extension (unitality, associativity, split projection).
"""

from __future__ import annotations

from fractions import Fraction

import pytest

from relcyc.algebra import (
    CleftDatum,
    InvalidDatum,
    NoGrading,
    NotAssociative,
    adjoin_unit,
    build_cleft_extension,
    bundled_instance_names,
    datum_from_dict,
    load_datum,
    validate_cleft_datum,
    weight_components,
    word_weight,
)
from relcyc.linalg import SparseMatrix

F = Fraction


class TestBundledInstances:
    def test_all_bundled_names(self):
        assert bundled_instance_names() == ["dn", "k2", "t", "tp3", "tp3_broken", "tp5"]

    @pytest.mark.parametrize("name", ["dn", "t", "k2", "tp3", "tp5"])
    def test_valid_instances_load_clean(self, name):
        d = load_datum(name)
        assert validate_cleft_datum(d) == []

    def test_broken_instance_rejected_with_named_axiom(self):
        with pytest.raises(InvalidDatum) as err:
            load_datum("tp3_broken")
        assert "nabla-associativity" in str(err.value)

    def test_unknown_instance(self):
        with pytest.raises(InvalidDatum):
            load_datum("nope")


class TestValidation:
    def test_idempotent_single_generator_is_associative(self):
        # x nabla x = x on a 2-dimensional module is associative:
        # (xx)x = x = x(xx) and every triple involving y vanishes.
        doc = {
            "name": "tp3_idem",
            "algebra": {"dim": 1, "labels": ["1"], "unit_index": 0,
                        "mult": [[0, 0, 0, "1"]]},
            "module": {"dim": 2, "labels": ["x", "y"],
                       "left": [[0, 0, 0, "1"], [0, 1, 1, "1"]],
                       "right": [[0, 0, 0, "1"], [1, 0, 1, "1"]]},
            "nabla": [[0, 0, 0, "1"]],
        }
        d = datum_from_dict(doc)
        assert validate_cleft_datum(d) == []

    def test_genuinely_broken_product(self):
        # x nabla x = y and x nabla y = x:
        # (xx)x = yx = 0 but x(xx) = xy = x, a real associativity failure.
        d = CleftDatum(
            name="broken",
            algebra=load_datum("tp3").algebra,
            module=load_datum("tp3").module,
            nabla=load_datum("tp3").nabla,
        )
        d.nabla.table[(0, 1)] = {0: F(1)}
        violations = validate_cleft_datum(d)
        assert any(v.axiom == "nabla-associativity" for v in violations)
        assert any(v.indices == (0, 0, 0) for v in violations)

    def test_unit_must_be_index_zero(self):
        doc = {
            "name": "bad-unit",
            "algebra": {"dim": 1, "labels": ["1"], "unit_index": 1, "mult": []},
            "module": {"dim": 1, "labels": ["m"], "left": [], "right": []},
            "nabla": [],
        }
        with pytest.raises(InvalidDatum) as err:
            datum_from_dict(doc)
        assert "unit" in str(err.value)

    def test_grading_additivity_enforced(self):
        doc = {
            "name": "bad-grading",
            "algebra": {"dim": 1, "labels": ["1"], "unit_index": 0,
                        "mult": [[0, 0, 0, "1"]]},
            "module": {"dim": 2, "labels": ["x", "y"],
                       "left": [[0, 0, 0, "1"], [0, 1, 1, "1"]],
                       "right": [[0, 0, 0, "1"], [1, 0, 1, "1"]]},
            "nabla": [[0, 0, 1, "1"]],
            "grading": {"x": 1, "y": 3},
        }
        with pytest.raises(InvalidDatum) as err:
            datum_from_dict(doc)
        assert "grading-nabla" in str(err.value)


class TestExtension:
    def test_dn_extension_is_dual_numbers(self):
        e = build_cleft_extension(load_datum("dn"))
        assert e.dim == 2
        # eps * eps = 0, 1 * eps = eps
        assert e.product(1, 1) == {}
        assert e.product(0, 1) == {1: F(1)}

    def test_t_extension_is_upper_triangular(self):
        # basis (1, e, m): e*e = e, e*m = 0, m*e = m, m*m = 0 matches the
        # multiplication of upper-triangular 2x2 matrices with basis
        # (identity, E11, E12) after the change e -> E11, m -> E12.
        e = build_cleft_extension(load_datum("t"))
        assert e.dim == 3
        assert e.product(1, 1) == {1: F(1)}
        assert e.product(1, 2) == {}
        assert e.product(2, 1) == {2: F(1)}
        assert e.product(2, 2) == {}

    def test_k2_extension_is_split_quadratic(self):
        # E = Q[x]/(x^2 - x) = Q x Q: x is idempotent
        e = build_cleft_extension(load_datum("k2"))
        assert e.dim == 2
        assert e.product(1, 1) == {1: F(1)}

    def test_projection_split_by_inclusion(self):
        for name in ["dn", "t", "tp3", "tp5", "k2"]:
            e = build_cleft_extension(load_datum(name))
            dA = e.datum.algebra.dim
            assert e.pi_a * e.incl == SparseMatrix.identity(dA)

    def test_invalid_datum_rejected(self):
        d = load_datum("tp3")
        d.nabla.table[(0, 1)] = {0: F(1)}
        with pytest.raises(InvalidDatum):
            build_cleft_extension(d)


class TestAdjoinUnit:
    def test_square_zero_line(self):
        d = adjoin_unit(1, ["eps"], [(0, 0, 0, 0)], name="dn2")
        assert validate_cleft_datum(d) == []
        assert d.algebra.dim == 1 and d.module.dim == 1
        assert d.mm(0, 0) == {}

    def test_truncated_polynomial(self):
        d = adjoin_unit(2, ["x", "y"], [(0, 0, 1, 1)], name="tp3-again")
        ref = load_datum("tp3")
        assert d.nabla.table == ref.nabla.table
        assert d.module.left == ref.module.left
        assert d.module.right == ref.module.right

    def test_idempotent_generator(self):
        d = adjoin_unit(1, ["x"], [(0, 0, 0, "1")], name="k2-again")
        assert validate_cleft_datum(d) == []

    def test_nonassociative_rejected(self):
        # xx = y, xy = x: (xx)x = yx = 0 while x(xx) = xy = x
        with pytest.raises(NotAssociative):
            adjoin_unit(2, ["x", "y"], [(0, 0, 1, 1), (0, 1, 0, 1)])


class TestWeights:
    def test_word_weights_on_tp3(self):
        d = load_datum("tp3")
        assert word_weight(d, (("M", 0), ("M", 0))) == 2  # x (x) x
        assert word_weight(d, (("M", 0), ("M", 1))) == 3  # x (x) y
        assert word_weight(d, (("A", 0), ("M", 1))) == 2  # 1 (x) y

    def test_dn_tensor_powers(self):
        d = load_datum("dn")
        for w in range(5):
            word = tuple(("M", 0) for _ in range(w + 1))
            assert word_weight(d, word) == w + 1

    def test_partition(self):
        d = load_datum("tp3")
        words = [
            (("M", 0), ("M", 0)),
            (("M", 0), ("M", 1)),
            (("M", 1), ("M", 0)),
            (("M", 1), ("M", 1)),
        ]
        assert weight_components(d, words) == {2: [0], 3: [1, 2], 4: [3]}

    def test_ungraded_raises(self):
        d = load_datum("t")
        with pytest.raises(NoGrading):
            weight_components(d, [(("M", 0),)])
