"""Finite-dimensional instance data: algebra, bimodule, balanced product.

An *instance* over the rationals consists of

* a unital associative algebra ``A`` with a distinguished basis whose
  element 0 is the unit,
* an ``A``-bimodule ``M`` with a distinguished basis,
* an associative, ``A``-balanced product ``nabla: M x M -> M`` that is a
  map of bimodules.

Out of such a datum one builds the extension algebra ``E = A + M`` with
the product ``(a, m)(a', m') = (aa', am' + ma' + m nabla m')``: an algebra
surjecting onto ``A`` with kernel ``M``, split by the inclusion of ``A``.
All chain-level machinery in this package is relative to that surjection.

Structure constants are sparse: unlisted products are zero.  Instances are
immutable after loading and validation, hence safe to share across
threads.  An optional grading assigns a nonnegative integer weight to each
basis element (the unit has weight 0); validation checks that every
product is weight-additive, which downstream makes every operator matrix
block-diagonal across weight components.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .linalg import ONE, Scalar, SparseMatrix, scalar_from_string

__all__ = [
    "Violation",
    "InvalidDatum",
    "NotAssociative",
    "NoGrading",
    "Algebra",
    "Bimodule",
    "NablaProduct",
    "CleftDatum",
    "CleftExtension",
    "validate_cleft_datum",
    "build_cleft_extension",
    "adjoin_unit",
    "weight_components",
    "word_weight",
    "load_datum",
    "datum_from_dict",
    "bundled_instance_names",
]

Table = dict[tuple[int, int], dict[int, Scalar]]


class InvalidDatum(Exception):
    """Raised when an instance fails validation."""


class NotAssociative(Exception):
    """Raised when a product given by structure constants is not associative."""


class NoGrading(Exception):
    """Raised when a weight decomposition is requested from an ungraded instance."""


@dataclass(frozen=True)
class Violation:
    """One failed axiom, naming the axiom and the offending basis indices."""

    axiom: str
    indices: tuple[int, ...]
    detail: str = ""

    def __str__(self) -> str:
        where = ",".join(str(i) for i in self.indices)
        msg = f"{self.axiom} fails at basis indices ({where})"
        return f"{msg}: {self.detail}" if self.detail else msg


def _combo(table: Table, i: int, j: int) -> dict[int, Scalar]:
    return table.get((i, j), {})


def _apply(table: Table, left: Mapping[int, Scalar], j: int) -> dict[int, Scalar]:
    """Extend a structure-constant table linearly in its first argument."""
    out: dict[int, Scalar] = {}
    for i, c in left.items():
        for k, v in _combo(table, i, j).items():
            s = out.get(k, Fraction(0)) + c * v
            if s:
                out[k] = s
            else:
                del out[k]
    return out


def _apply_right(table: Table, i: int, right: Mapping[int, Scalar]) -> dict[int, Scalar]:
    """Extend a structure-constant table linearly in its second argument."""
    out: dict[int, Scalar] = {}
    for j, c in right.items():
        for k, v in _combo(table, i, j).items():
            s = out.get(k, Fraction(0)) + c * v
            if s:
                out[k] = s
            else:
                del out[k]
    return out


@dataclass
class Algebra:
    """A unital algebra by structure constants; basis element 0 is the unit."""

    dim: int
    labels: tuple[str, ...]
    mult: Table


@dataclass
class Bimodule:
    """A two-sided module by action constants.

    ``left[(i, j)]`` is the expansion of ``a_i . m_j``;
    ``right[(i, j)]`` is the expansion of ``m_i . a_j``.
    """

    dim: int
    labels: tuple[str, ...]
    left: Table
    right: Table


@dataclass
class NablaProduct:
    """A product on the module: ``table[(i, j)]`` expands ``m_i nabla m_j``."""

    table: Table


@dataclass
class CleftDatum:
    """One validated instance: algebra, bimodule, product, optional weights."""

    name: str
    algebra: Algebra
    module: Bimodule
    nabla: NablaProduct
    algebra_weights: tuple[int, ...] | None = None
    module_weights: tuple[int, ...] | None = None

    # -- product helpers (all return sparse {basis index: coefficient}) --

    def aa(self, i: int, j: int) -> dict[int, Scalar]:
        return _combo(self.algebra.mult, i, j)

    def am(self, i: int, j: int) -> dict[int, Scalar]:
        return _combo(self.module.left, i, j)

    def ma(self, i: int, j: int) -> dict[int, Scalar]:
        return _combo(self.module.right, i, j)

    def mm(self, i: int, j: int) -> dict[int, Scalar]:
        return _combo(self.nabla.table, i, j)

    @property
    def graded(self) -> bool:
        return self.algebra_weights is not None

    def weight_a(self, i: int) -> int:
        if self.algebra_weights is None:
            raise NoGrading(f"instance {self.name!r} carries no grading")
        return self.algebra_weights[i]

    def weight_m(self, i: int) -> int:
        if self.module_weights is None:
            raise NoGrading(f"instance {self.name!r} carries no grading")
        return self.module_weights[i]


# ----------------------------------------------------------------------
# validation
# ----------------------------------------------------------------------


def _expect(
    axiom: str,
    indices: tuple[int, ...],
    got: Mapping[int, Scalar],
    expected: Mapping[int, Scalar],
    out: list[Violation],
) -> None:
    if dict(got) != dict(expected):
        out.append(Violation(axiom, indices, f"lhs {dict(got)} != rhs {dict(expected)}"))


def validate_cleft_datum(d: CleftDatum) -> list[Violation]:
    """All axiom violations of the instance; empty iff valid.

    Checks, over every relevant tuple of basis indices:
    unitality of ``A`` and of the actions; associativity of ``A``;
    the module axioms (left, right, middle); balance
    ``(m a) nabla m' = m nabla (a m')``; bimodule-linearity of ``nabla``;
    associativity of ``nabla``; weight-additivity when graded.
    """
    out: list[Violation] = []
    dA, dM = d.algebra.dim, d.module.dim
    unit = {0: ONE}

    if dA < 1:
        out.append(Violation("algebra-nonempty", (), "algebra dimension is zero"))
        return out

    # unit of A at basis index 0
    for i in range(dA):
        _expect("unit-left", (i,), d.aa(0, i), {i: ONE}, out)
        _expect("unit-right", (i,), d.aa(i, 0), {i: ONE}, out)
    _expect("unit-square", (0,), d.aa(0, 0), unit, out)

    # associativity of A
    for i in range(dA):
        for j in range(dA):
            for k in range(dA):
                lhs = _apply(d.algebra.mult, d.aa(i, j), k)
                rhs = _apply_right(d.algebra.mult, i, d.aa(j, k))
                _expect("algebra-associativity", (i, j, k), lhs, rhs, out)

    # actions are unital
    for j in range(dM):
        _expect("unit-acts-left", (j,), d.am(0, j), {j: ONE}, out)
        _expect("unit-acts-right", (j,), d.ma(j, 0), {j: ONE}, out)

    # left module: (a_i a_j) m = a_i (a_j m)
    for i in range(dA):
        for j in range(dA):
            for k in range(dM):
                lhs = _apply(d.module.left, d.aa(i, j), k)
                rhs = _apply_right(d.module.left, i, d.am(j, k))
                _expect("left-module", (i, j, k), lhs, rhs, out)

    # right module: m (a_i a_j) = (m a_i) a_j
    for k in range(dM):
        for i in range(dA):
            for j in range(dA):
                rhs_inner = d.ma(k, i)
                rhs = _apply(d.module.right, rhs_inner, j)
                lhs = _apply_right(d.module.right, k, d.aa(i, j))
                _expect("right-module", (k, i, j), lhs, rhs, out)

    # middle associativity: (a m) a' = a (m a')
    for i in range(dA):
        for k in range(dM):
            for j in range(dA):
                lhs = _apply(d.module.right, d.am(i, k), j)
                rhs = _apply_right(d.module.left, i, d.ma(k, j))
                _expect("bimodule-middle", (i, k, j), lhs, rhs, out)

    # balance: (m a) nabla m' = m nabla (a m')
    for i in range(dM):
        for a in range(dA):
            for j in range(dM):
                lhs = _apply(d.nabla.table, d.ma(i, a), j)
                rhs = _apply_right(d.nabla.table, i, d.am(a, j))
                _expect("nabla-balance", (i, a, j), lhs, rhs, out)

    # nabla is a bimodule map: a (m nabla m') = (a m) nabla m', both sides
    for a in range(dA):
        for i in range(dM):
            for j in range(dM):
                lhs = _apply_right(d.module.left, a, d.mm(i, j))
                rhs = _apply(d.nabla.table, d.am(a, i), j)
                _expect("nabla-left-linear", (a, i, j), lhs, rhs, out)
                lhs2 = _apply(d.module.right, d.mm(i, j), a)
                rhs2 = _apply_right(d.nabla.table, i, d.ma(j, a))
                _expect("nabla-right-linear", (i, j, a), lhs2, rhs2, out)

    # associativity of nabla
    for i in range(dM):
        for j in range(dM):
            for k in range(dM):
                lhs = _apply(d.nabla.table, d.mm(i, j), k)
                rhs = _apply_right(d.nabla.table, i, d.mm(j, k))
                _expect("nabla-associativity", (i, j, k), lhs, rhs, out)

    # grading
    if d.graded:
        wa, wm = d.algebra_weights, d.module_weights
        assert wa is not None and wm is not None
        if wa[0] != 0:
            out.append(Violation("grading-unit-weight", (0,), f"unit weight {wa[0]} != 0"))
        for w, kind in [(wa, "algebra"), (wm, "module")]:
            for i, x in enumerate(w):
                if x < 0:
                    out.append(
                        Violation("grading-nonnegative", (i,), f"{kind} weight {x} < 0")
                    )

        def check_additive(table: Table, wl, wr, wo, axiom):
            for (i, j), expansion in table.items():
                for k, c in expansion.items():
                    if c and wl[i] + wr[j] != wo[k]:
                        out.append(
                            Violation(
                                axiom,
                                (i, j, k),
                                f"weights {wl[i]}+{wr[j]} != {wo[k]}",
                            )
                        )

        check_additive(d.algebra.mult, wa, wa, wa, "grading-mult")
        check_additive(d.module.left, wa, wm, wm, "grading-left-action")
        check_additive(d.module.right, wm, wa, wm, "grading-right-action")
        check_additive(d.nabla.table, wm, wm, wm, "grading-nabla")

    return out


# ----------------------------------------------------------------------
# the extension algebra
# ----------------------------------------------------------------------


@dataclass
class CleftExtension:
    """The extension algebra ``E = A + M`` with its projections and section.

    Basis: the ``A`` basis followed by the ``M`` basis. ``pi_a`` / ``pi_m``
    are the coordinate projections, ``incl`` the section of ``pi_a``; all
    three are honest matrices. "mult" holds E's structure constants, built
    from the defining product ``(a,m)(a',m') = (aa', am' + ma' + m nabla m')``.
    """

    datum: CleftDatum
    dim: int
    labels: tuple[str, ...]
    mult: Table
    pi_a: SparseMatrix
    pi_m: SparseMatrix
    incl: SparseMatrix

    def product(self, i: int, j: int) -> dict[int, Scalar]:
        return _combo(self.mult, i, j)


def build_cleft_extension(d: CleftDatum) -> CleftExtension:
    """Build ``E`` and check it is a unital associative algebra.

    Raises :class:`InvalidDatum` if the datum fails validation (the
    extension's associativity is equivalent to the datum's axioms, so a
    failed datum cannot produce a lawful ``E``).
    """
    violations = validate_cleft_datum(d)
    if violations:
        raise InvalidDatum(
            f"instance {d.name!r} fails validation: "
            + "; ".join(str(v) for v in violations[:5])
            + ("; ..." if len(violations) > 5 else "")
        )
    dA, dM = d.algebra.dim, d.module.dim
    dim = dA + dM
    mult: Table = {}

    def put(i: int, j: int, expansion: Mapping[int, Scalar], offset: int) -> None:
        if expansion:
            tgt = mult.setdefault((i, j), {})
            for k, v in expansion.items():
                s = tgt.get(k + offset, Fraction(0)) + v
                if s:
                    tgt[k + offset] = s
                else:
                    del tgt[k + offset]

    for i in range(dA):
        for j in range(dA):
            put(i, j, d.aa(i, j), 0)
        for j in range(dM):
            put(i, dA + j, d.am(i, j), dA)
    for i in range(dM):
        for j in range(dA):
            put(dA + i, j, d.ma(i, j), dA)
        for j in range(dM):
            put(dA + i, dA + j, d.mm(i, j), dA)

    pi_a = SparseMatrix(dA, dim)
    for i in range(dA):
        pi_a.set_entry(i, i, ONE)
    pi_m = SparseMatrix(dM, dim)
    for i in range(dM):
        pi_m.set_entry(i, dA + i, ONE)
    incl = SparseMatrix(dim, dA)
    for i in range(dA):
        incl.set_entry(i, i, ONE)

    ext = CleftExtension(
        datum=d,
        dim=dim,
        labels=d.algebra.labels + d.module.labels,
        mult=mult,
        pi_a=pi_a,
        pi_m=pi_m,
        incl=incl,
    )

    # invariant: E is unital associative; the projection is split by incl
    for i in range(dim):
        if _combo(mult, 0, i) != {i: ONE} or _combo(mult, i, 0) != {i: ONE}:
            raise InvalidDatum(f"extension of {d.name!r} is not unital at index {i}")
    for i in range(dim):
        for j in range(dim):
            for k in range(dim):
                lhs = _apply(mult, _combo(mult, i, j), k)
                rhs = _apply_right(mult, i, _combo(mult, j, k))
                if lhs != rhs:
                    raise InvalidDatum(
                        f"extension of {d.name!r} is not associative at ({i},{j},{k})"
                    )
    if pi_a * incl != SparseMatrix.identity(dA):
        raise InvalidDatum("projection is not split by the inclusion")
    return ext


def adjoin_unit(
    dim: int,
    labels: Sequence[str],
    product: Iterable[tuple[int, int, int, Scalar | int | str]],
    name: str = "adjoined",
    grading: Mapping[str, int] | None = None,
) -> CleftDatum:
    """Datum for a (possibly nonunital) associative algebra, unit adjoined.

    The input algebra becomes the module ``M`` with its own product as
    ``nabla``; ``A`` is the rational line acting trivially.  Raises
    :class:`NotAssociative` if the input product is not associative.
    """
    table: Table = {}
    for i, j, k, c in product:
        v = scalar_from_string(c) if isinstance(c, str) else Fraction(c)
        if v:
            table.setdefault((i, j), {})[k] = v
    for i in range(dim):
        for j in range(dim):
            for k in range(dim):
                lhs = _apply(table, _combo(table, i, j), k)
                rhs = _apply_right(table, i, _combo(table, j, k))
                if lhs != rhs:
                    raise NotAssociative(
                        f"product not associative at basis triple ({i},{j},{k}): "
                        f"{lhs} != {rhs}"
                    )
    left: Table = {(0, j): {j: ONE} for j in range(dim)}
    right: Table = {(j, 0): {j: ONE} for j in range(dim)}
    weights = None
    if grading is not None:
        weights = tuple(int(grading.get(lbl, 0)) for lbl in labels)
    return CleftDatum(
        name=name,
        algebra=Algebra(dim=1, labels=("1",), mult={(0, 0): {0: ONE}}),
        module=Bimodule(dim=dim, labels=tuple(labels), left=left, right=right),
        nabla=NablaProduct(table=table),
        algebra_weights=(0,) if grading is not None else None,
        module_weights=weights,
    )


# ----------------------------------------------------------------------
# weights on tensor words
# ----------------------------------------------------------------------


def word_weight(d: CleftDatum, word: Sequence[tuple[str, int]]) -> int:
    """Total weight of a tensor word: the sum of its factors' weights.

    Words are tuples of slots ``("A", i)`` or ``("M", i)`` referring to
    basis elements of the algebra and the module respectively.
    """
    total = 0
    for kind, i in word:
        total += d.weight_a(i) if kind == "A" else d.weight_m(i)
    return total


def weight_components(
    d: CleftDatum, words: Sequence[Sequence[tuple[str, int]]]
) -> dict[int, list[int]]:
    """Partition of basis-word indices by total weight.

    Raises :class:`NoGrading` on ungraded instances.  Downstream, every
    operator matrix must be block-diagonal across this partition.
    """
    if not d.graded:
        raise NoGrading(f"instance {d.name!r} carries no grading")
    out: dict[int, list[int]] = {}
    for idx, word in enumerate(words):
        out.setdefault(word_weight(d, word), []).append(idx)
    return dict(sorted(out.items()))


# ----------------------------------------------------------------------
# JSON instance files
# ----------------------------------------------------------------------


def _table_from_json(entries: Iterable[Sequence]) -> Table:
    table: Table = {}
    for entry in entries:
        i, j, k, c = entry
        v = scalar_from_string(str(c))
        if v:
            tgt = table.setdefault((int(i), int(j)), {})
            s = tgt.get(int(k), Fraction(0)) + v
            if s:
                tgt[int(k)] = s
            else:
                del tgt[int(k)]
    return table


def datum_from_dict(doc: Mapping) -> CleftDatum:
    """Build and validate a datum from a parsed instance document.

    Raises :class:`InvalidDatum` on structural problems or failed axioms.
    The unit of the algebra must be basis element 0; other layouts are
    rejected rather than silently repaired.
    """
    try:
        name = str(doc["name"])
        alg = doc["algebra"]
        mod = doc["module"]
        dA = int(alg["dim"])
        dM = int(mod["dim"])
        alg_labels = tuple(str(x) for x in alg["labels"])
        mod_labels = tuple(str(x) for x in mod["labels"])
        unit_index = int(alg.get("unit_index", 0))
        mult = _table_from_json(alg.get("mult", []))
        left = _table_from_json(mod.get("left", []))
        right = _table_from_json(mod.get("right", []))
        nabla = _table_from_json(doc.get("nabla", []))
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidDatum(f"malformed instance document: {exc}") from exc
    if unit_index != 0:
        raise InvalidDatum(
            f"instance {name!r}: the unit must be basis element 0 "
            f"(got unit_index={unit_index}); reorder the basis"
        )
    if len(alg_labels) != dA or len(mod_labels) != dM:
        raise InvalidDatum(f"instance {name!r}: label count does not match dim")

    algebra_weights = module_weights = None
    grading = doc.get("grading")
    if grading is not None:
        all_labels = alg_labels + mod_labels
        if len(set(all_labels)) != len(all_labels):
            raise InvalidDatum(
                f"instance {name!r}: graded instances need distinct labels"
            )
        unknown = set(grading) - set(all_labels)
        if unknown:
            raise InvalidDatum(
                f"instance {name!r}: grading mentions unknown labels {sorted(unknown)}"
            )
        algebra_weights = tuple(int(grading.get(lbl, 0)) for lbl in alg_labels)
        module_weights = tuple(int(grading.get(lbl, 0)) for lbl in mod_labels)

    d = CleftDatum(
        name=name,
        algebra=Algebra(dim=dA, labels=alg_labels, mult=mult),
        module=Bimodule(dim=dM, labels=mod_labels, left=left, right=right),
        nabla=NablaProduct(table=nabla),
        algebra_weights=algebra_weights,
        module_weights=module_weights,
    )
    violations = validate_cleft_datum(d)
    if violations:
        raise InvalidDatum(
            f"instance {name!r} fails validation:\n  "
            + "\n  ".join(str(v) for v in violations)
        )
    return d


def bundled_instance_names() -> list[str]:
    """Names of the instance files shipped with the package."""
    root = resources.files("relcyc").joinpath("instances")
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def load_datum(source: str | Path) -> CleftDatum:
    """Load an instance from a bundled name or a JSON file path."""
    path = Path(source)
    if path.suffix == ".json" and path.exists():
        doc = json.loads(path.read_text())
        return datum_from_dict(doc)
    candidate = resources.files("relcyc").joinpath("instances", f"{source}.json")
    try:
        text = candidate.read_text()
    except (FileNotFoundError, OSError):
        raise InvalidDatum(
            f"no such instance: {source!r} (not a file, not one of "
            f"{', '.join(bundled_instance_names())})"
        ) from None
    return datum_from_dict(json.loads(text))
