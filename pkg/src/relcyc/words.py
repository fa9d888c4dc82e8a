"""Basis words of the chain spaces, and materialization of word operators.

Chain spaces in this package are spanned by *words*: tuples of slots, each
slot either ``("A", i)`` (algebra basis element ``i``) or ``("M", i)``
(module basis element ``i``).  The families:

* ``X`` at bidegree ``(v, w)``: the head slot is in ``M``; of the
  ``n = v + w`` interior slots exactly ``w`` are in ``M`` and the rest are
  unit-reduced algebra classes (indices ``1..dA-1``).
  Dimension ``dM^(w+1) * (dA-1)^v * C(n, w)``.
* ``CanonicalSecond`` at ``(v, w)``: the head slot is a full algebra
  element (the unit index 0 allowed); the interior slots contain ``w + 1``
  module elements.  Dimension ``dA * dM^(w+1) * (dA-1)^(v-1) * C(n, w+1)``.
* ``CanonicalFull`` at degree ``n``: a full extension-algebra element
  followed by ``n`` unit-reduced extension classes, keeping only words
  with at least one module slot.  This is the degree-``n`` piece of the
  kernel of the canonical-complex projection onto the subalgebra, and is
  enumerated independently of the bidegree families (it serves as the
  oracle side of every cross-check).

Negative bidegrees yield the empty basis.  Enumeration order is
deterministic: first by the subset of module positions (lexicographic),
then by the slot indices left to right.
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

from .algebra import CleftDatum, word_weight
from .linalg import Scalar, SparseMatrix, SparseVector

__all__ = [
    "Slot",
    "Word",
    "TargetMismatch",
    "Basis",
    "SpaceId",
    "OperatorSpec",
    "x_dimension",
    "canonical_second_dimension",
    "enumerate_x_basis",
    "enumerate_canonical_second_basis",
    "enumerate_canonical_full_basis",
    "enumerate_basis",
    "materialize",
    "worker_count",
]

Slot = tuple[str, int]
Word = tuple[Slot, ...]

Combination = Mapping[Word, Scalar]


class TargetMismatch(Exception):
    """An operator produced a word outside its declared target space."""


class Basis:
    """An ordered basis of words with O(1) index lookup.

    Immutable after construction; built once per (instance, bound) and
    then shared read-only, so concurrent materialization is safe.
    """

    __slots__ = ("words", "index", "weights")

    def __init__(self, words: Sequence[Word], datum: CleftDatum | None = None):
        self.words: tuple[Word, ...] = tuple(words)
        self.index: dict[Word, int] = {w: i for i, w in enumerate(self.words)}
        self.weights: tuple[int, ...] | None = None
        if datum is not None and datum.graded:
            self.weights = tuple(word_weight(datum, w) for w in self.words)

    @property
    def dim(self) -> int:
        return len(self.words)

    def vector_of(self, combo: Combination) -> SparseVector:
        out = SparseVector(self.dim)
        for word, coeff in combo.items():
            if not coeff:
                continue
            pos = self.index.get(word)
            if pos is None:
                raise TargetMismatch(f"word {word} is not in the target basis")
            cur = out.entries.get(pos)
            s = coeff if cur is None else cur + coeff
            if s:
                out.entries[pos] = s
            else:
                out.entries.pop(pos, None)
        return out


@dataclass(frozen=True)
class SpaceId:
    """Names one chain-space family member: ``family`` at ``(v, w)``.

    Families: ``X``, ``XhatFirst`` (= ``X`` at ``(v, w)``), ``XhatSecond``
    (= ``X`` at ``(v-1, w)``), ``CanonicalFirst`` (same words as ``X``),
    ``CanonicalSecond``, and ``CanonicalFull`` (indexed by ``v`` = total
    degree, ``w`` ignored).
    """

    family: str
    v: int
    w: int = 0


@dataclass(frozen=True)
class OperatorSpec:
    """A pure word-level operator with declared source and target."""

    fn: Callable[[Word], Combination]
    source: SpaceId
    target: SpaceId


def x_dimension(datum: CleftDatum, v: int, w: int) -> int:
    """Closed dimension formula for the ``X`` family."""
    if v < 0 or w < 0:
        return 0
    dA, dM = datum.algebra.dim, datum.module.dim
    n = v + w
    return dM ** (w + 1) * (dA - 1) ** v * math.comb(n, w)


def canonical_second_dimension(datum: CleftDatum, v: int, w: int) -> int:
    """Closed dimension formula for the ``CanonicalSecond`` family."""
    if v < 1 or w < -1:
        return 0
    dA, dM = datum.algebra.dim, datum.module.dim
    n = v + w
    c = math.comb(n, w + 1) if 0 <= w + 1 <= n else 0
    if c == 0:
        return 0
    return dA * dM ** (w + 1) * (dA - 1) ** (v - 1) * c


def enumerate_x_basis(datum: CleftDatum, v: int, w: int) -> Basis:
    """Basis of ``X`` at ``(v, w)``: module head, ``w`` module interiors."""
    if v < 0 or w < 0:
        return Basis([], datum)
    dA, dM = datum.algebra.dim, datum.module.dim
    n = v + w
    m_choices = [("M", i) for i in range(dM)]
    a_choices = [("A", i) for i in range(1, dA)]
    words = []
    for positions in itertools.combinations(range(n), w):
        pos_set = set(positions)
        slot_ranges = [m_choices if i in pos_set else a_choices for i in range(n)]
        for combo in itertools.product(m_choices, *slot_ranges):
            words.append(combo)
    return Basis(words, datum)


def enumerate_canonical_second_basis(datum: CleftDatum, v: int, w: int) -> Basis:
    """Basis of ``CanonicalSecond`` at ``(v, w)``: full algebra head,
    ``w + 1`` module interiors among ``n = v + w`` slots."""
    n = v + w
    if v < 0 or w < -1 or w + 1 > n or n < 0:
        return Basis([], datum)
    dA, dM = datum.algebra.dim, datum.module.dim
    m_choices = [("M", i) for i in range(dM)]
    a_choices = [("A", i) for i in range(1, dA)]
    head_choices = [("A", i) for i in range(dA)]
    words = []
    for positions in itertools.combinations(range(n), w + 1):
        pos_set = set(positions)
        slot_ranges = [m_choices if i in pos_set else a_choices for i in range(n)]
        for combo in itertools.product(head_choices, *slot_ranges):
            words.append(combo)
    return Basis(words, datum)


def enumerate_canonical_full_basis(datum: CleftDatum, n: int) -> Basis:
    """Degree-``n`` basis of the canonical relative space: one full
    extension-algebra factor, then ``n`` unit-reduced classes, keeping
    only words that touch the module somewhere.

    Enumerated directly from the extension's basis (algebra elements
    first, then module elements), independent of the bidegree families.
    """
    if n < 0:
        return Basis([], datum)
    dA, dM = datum.algebra.dim, datum.module.dim
    head = [("A", i) for i in range(dA)] + [("M", i) for i in range(dM)]
    interior = [("A", i) for i in range(1, dA)] + [("M", i) for i in range(dM)]
    words = [
        combo
        for combo in itertools.product(head, *([interior] * n))
        if any(kind == "M" for kind, _ in combo)
    ]
    return Basis(words, datum)


def enumerate_basis(datum: CleftDatum, space: SpaceId) -> Basis:
    """Resolve a :class:`SpaceId` to its ordered basis."""
    fam, v, w = space.family, space.v, space.w
    if fam in ("X", "XhatFirst", "CanonicalFirst"):
        return enumerate_x_basis(datum, v, w)
    if fam == "XhatSecond":
        return enumerate_x_basis(datum, v - 1, w)
    if fam == "CanonicalSecond":
        return enumerate_canonical_second_basis(datum, v, w)
    if fam == "CanonicalFull":
        return enumerate_canonical_full_basis(datum, v)
    raise ValueError(f"unknown space family {fam!r}")


def materialize(
    fn: Callable[[Word], Combination],
    source: Basis,
    target: Basis,
) -> SparseMatrix:
    """Matrix of a word-level operator: column ``j`` is the coordinate
    vector of the operator applied to source word ``j``.

    Raises :class:`TargetMismatch` if an output word does not index into
    the target basis.
    """
    out = SparseMatrix(target.dim, source.dim)
    for j, word in enumerate(source.words):
        combo = fn(word)
        if combo:
            out.set_column(j, target.vector_of(combo))
    return out


def materialize_spec(datum: CleftDatum, op: OperatorSpec) -> SparseMatrix:
    return materialize(
        op.fn, enumerate_basis(datum, op.source), enumerate_basis(datum, op.target)
    )


def worker_count() -> int:
    """Worker cap for independent materialization/check jobs.

    Controlled by the environment variable ``RELCYC_THREADS``; defaults
    to 1 (serial).  Values below 1 are clamped to 1.
    """
    try:
        return max(1, int(os.environ.get("RELCYC_THREADS", "1")))
    except ValueError:
        return 1
