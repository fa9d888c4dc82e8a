"""Word-level chain operators.

Every operator here is a pure function from a basis word to a formal
linear combination of words (a dict ``word -> coefficient``), extended
bilinearly by :func:`relcyc.words.materialize`.  Words are tuples of
slots ``("A", i)`` / ``("M", i)``; see :mod:`relcyc.words`.

Conventions, fixed once for the whole package:

* ``n`` is the number of *interior* slots (so a word has ``n + 1`` slots).
* The face maps ``mu_j`` (``j = 0..n``) merge slots ``j`` and ``j + 1``
  with sign ``(-1)^j``; the last face wraps, multiplying the final slot
  onto the head from the left and landing the product at the head:
  ``mu_n(x_0 .. x_n) = (-1)^n (x_n x_0) (x) x_1 .. x_{n-1}``.
* Merging into an interior position reduces modulo the unit: the
  coefficient of the algebra unit is dropped (normalized complex).
  Merging into the head position never unit-reduces.
* The concatenation product of two slots is: algebra times algebra in the
  algebra, the two actions across, and **zero** for module times module.
  The extra product ``nabla`` acts only on module times module.  The sum
  of both is the full extension-algebra product, split by where it lands.
* The cyclic rotation ``t`` acts on a word whose last module slot sits at
  position ``i`` by ``t(x_0 .. x_n) = (-1)^(i n) x_i .. x_n (x) x_0 ..
  x_{i-1}``: always a signed permutation on these words.  A head slot
  rotated into the interior is unit-reduced (an old unit head kills the
  term).
* Degree-zero words (one slot) have zero differential: there is nothing
  to merge.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from .algebra import CleftDatum
from .linalg import Scalar
from .words import Slot, Word

__all__ = [
    "slot_concat",
    "slot_nabla",
    "slot_full_product",
    "merge_term",
    "hochschild_b",
    "second_kind_b",
    "second_kind_alpha",
    "full_boundary",
    "rho_term",
    "nabla_d",
    "nabla_d_prime",
    "rotate_cyclic",
    "orbit_sum",
    "module_slot_count",
    "last_module_index",
    "connes_boundary",
    "rotate_last_to_front",
    "section_sum",
    "homotopy_sum",
    "head_module_merge",
    "classify_canonical_word",
]

Combination = dict[Word, Scalar]

_UNIT: Slot = ("A", 0)


def _accumulate(out: Combination, word: Word, coeff: Scalar) -> None:
    s = out.get(word, Fraction(0)) + coeff
    if s:
        out[word] = s
    else:
        out.pop(word, None)


# ----------------------------------------------------------------------
# products of two slots
# ----------------------------------------------------------------------


def slot_concat(
    datum: CleftDatum, s: Slot, t: Slot, reduce_unit: bool
) -> dict[Slot, Scalar]:
    """Concatenation product: algebra products and actions, module*module = 0."""
    (k1, i), (k2, j) = s, t
    if k1 == "A" and k2 == "A":
        out = {("A", k): v for k, v in datum.aa(i, j).items()}
        if reduce_unit:
            out.pop(_UNIT, None)
        return out
    if k1 == "A":
        return {("M", k): v for k, v in datum.am(i, j).items()}
    if k2 == "A":
        return {("M", k): v for k, v in datum.ma(i, j).items()}
    return {}


def slot_nabla(datum: CleftDatum, s: Slot, t: Slot, reduce_unit: bool = False) -> dict[Slot, Scalar]:
    """The extra product: nonzero only on module times module."""
    if s[0] == "M" and t[0] == "M":
        return {("M", k): v for k, v in datum.mm(s[1], t[1]).items()}
    return {}


def slot_full_product(
    datum: CleftDatum, s: Slot, t: Slot, reduce_unit: bool
) -> dict[Slot, Scalar]:
    """The extension algebra's product of two slots (concatenation + nabla)."""
    out = slot_concat(datum, s, t, reduce_unit)
    for slot, v in slot_nabla(datum, s, t).items():
        cur = out.get(slot, Fraction(0)) + v
        if cur:
            out[slot] = cur
        else:
            del out[slot]
    return out


# ----------------------------------------------------------------------
# face maps
# ----------------------------------------------------------------------


def merge_term(
    datum: CleftDatum,
    word: Word,
    j: int,
    product,
    head_kind: str | None = None,
) -> Combination:
    """The ``j``-th face applied to one word, for a chosen slot product.

    ``head_kind`` filters the slot kind produced at the head position
    (``"A"`` or ``"M"``); ``None`` keeps everything.  Used for the
    head-projected faces of the second-kind canonical spaces and for the
    full boundary (no filter).
    """
    n = len(word) - 1
    if n == 0:
        return {}
    if not 0 <= j <= n:
        raise ValueError(f"face index {j} out of range for degree {n}")
    sign = Fraction(-1) if j % 2 else Fraction(1)
    out: Combination = {}
    if j < n:
        prod = product(datum, word[j], word[j + 1], reduce_unit=(j >= 1))
        at_head = j == 0
        for slot, c in prod.items():
            if at_head and head_kind is not None and slot[0] != head_kind:
                continue
            _accumulate(out, word[:j] + (slot,) + word[j + 2 :], sign * c)
    else:
        prod = product(datum, word[n], word[0], reduce_unit=False)
        for slot, c in prod.items():
            if head_kind is not None and slot[0] != head_kind:
                continue
            _accumulate(out, (slot,) + word[1:n], sign * c)
    return out


def hochschild_b(datum: CleftDatum, word: Word) -> Combination:
    """The concatenation boundary: sum of all faces.

    On module-headed words every face lands back at a module head, so no
    head filter is needed.
    """
    n = len(word) - 1
    out: Combination = {}
    for j in range(n + 1):
        for w, c in merge_term(datum, word, j, slot_concat).items():
            _accumulate(out, w, c)
    return out


def second_kind_b(datum: CleftDatum, word: Word) -> Combination:
    """Concatenation boundary of an algebra-headed word, head kept in the
    algebra: the two head-touching faces are projected onto their algebra
    part, interior faces are unchanged."""
    n = len(word) - 1
    out: Combination = {}
    if n == 0:
        return out
    for w, c in merge_term(datum, word, 0, slot_concat, head_kind="A").items():
        _accumulate(out, w, c)
    for j in range(1, n):
        for w, c in merge_term(datum, word, j, slot_concat).items():
            _accumulate(out, w, c)
    for w, c in merge_term(datum, word, n, slot_concat, head_kind="A").items():
        _accumulate(out, w, c)
    return out


def second_kind_alpha(datum: CleftDatum, word: Word) -> Combination:
    """The module-headed part of the two head-touching faces of an
    algebra-headed word: the connecting map between the two kinds."""
    n = len(word) - 1
    out: Combination = {}
    if n == 0:
        return out
    for w, c in merge_term(datum, word, 0, slot_concat, head_kind="M").items():
        _accumulate(out, w, c)
    for w, c in merge_term(datum, word, n, slot_concat, head_kind="M").items():
        _accumulate(out, w, c)
    return out


def full_boundary(datum: CleftDatum, word: Word) -> Combination:
    """The boundary of the canonical complex: all faces with the full
    extension-algebra product, head landing wherever it lands.

    This is the oracle-side boundary; it never references the face
    splittings used by the structured complexes.
    """
    n = len(word) - 1
    out: Combination = {}
    for j in range(n + 1):
        for w, c in merge_term(datum, word, j, slot_full_product).items():
            _accumulate(out, w, c)
    return out


# ----------------------------------------------------------------------
# nabla faces
# ----------------------------------------------------------------------


def rho_term(datum: CleftDatum, word: Word, j: int) -> Combination:
    """The ``j``-th nabla face: same shape and sign as the ``j``-th
    concatenation face, with the extra product instead."""
    return merge_term(datum, word, j, slot_nabla)


def nabla_d_prime(datum: CleftDatum, word: Word) -> Combination:
    """Sum of the non-wrapping nabla faces."""
    n = len(word) - 1
    out: Combination = {}
    for j in range(n):
        for w, c in rho_term(datum, word, j).items():
            _accumulate(out, w, c)
    return out


def nabla_d(datum: CleftDatum, word: Word) -> Combination:
    """Sum of all nabla faces including the wrap."""
    n = len(word) - 1
    out = nabla_d_prime(datum, word)
    if n >= 1:
        for w, c in rho_term(datum, word, n).items():
            _accumulate(out, w, c)
    return out


# ----------------------------------------------------------------------
# rotations
# ----------------------------------------------------------------------


def module_slot_count(word: Word) -> int:
    return sum(1 for kind, _ in word if kind == "M")


def last_module_index(word: Word) -> int:
    for i in range(len(word) - 1, -1, -1):
        if word[i][0] == "M":
            return i
    raise ValueError(f"word {word} has no module slot")


def rotate_cyclic(word: Word) -> Combination:
    """The cyclic rotation: bring the last module slot to the head.

    ``t(x_0 .. x_n) = (-1)^(i n) x_i .. x_n (x) x_0 .. x_{i-1}`` where
    ``i`` is the last module position.  A former head slot moving into
    the interior is unit-reduced, so an algebra-unit head kills the term;
    on module-headed words ``t`` is a signed permutation.
    """
    n = len(word) - 1
    i = last_module_index(word)
    if i == 0:
        return {word: Fraction(1)}
    if word[0] == _UNIT:
        return {}
    sign = Fraction(-1) if (i * n) % 2 else Fraction(1)
    return {word[i:] + word[:i]: sign}


def orbit_sum(word: Word) -> Combination:
    """The norm of the rotation: ``1 + t + ... + t^w`` where ``w + 1`` is
    the number of module slots of the word (the rotation's order)."""
    terms = module_slot_count(word)
    out: Combination = {}
    current: Combination = {word: Fraction(1)}
    for _ in range(terms):
        for w, c in current.items():
            _accumulate(out, w, c)
        nxt: Combination = {}
        for w, c in current.items():
            for w2, c2 in rotate_cyclic(w).items():
                _accumulate(nxt, w2, c * c2)
        current = nxt
    return out


# ----------------------------------------------------------------------
# degree-raising operators
# ----------------------------------------------------------------------


def _prepend_unit(word: Word) -> Word | None:
    """``1 (x) word`` with every old slot now interior (unit-reduced);
    ``None`` when the word carries a unit class and therefore dies."""
    if any(slot == _UNIT for slot in word):
        return None
    return (_UNIT,) + word


def connes_boundary(word: Word) -> Combination:
    """The degree-raising cyclic operator of the canonical complex:

    ``B(c_0 .. c_r) = sum_i (-1)^(i r) 1 (x) c_i .. c_r (x) c_0 .. c_{i-1}``.

    All outputs are unit-headed; inputs whose head is the unit die
    because the head becomes an interior unit class in every term.
    """
    r = len(word) - 1
    out: Combination = {}
    for i in range(r + 1):
        rotated = word[i:] + word[:i]
        prepended = _prepend_unit(rotated)
        if prepended is None:
            continue
        sign = Fraction(-1) if (i * r) % 2 else Fraction(1)
        _accumulate(out, prepended, sign)
    return out


def rotate_last_to_front(word: Word) -> Combination:
    """Signed raw rotation: last slot to the front, sign ``(-1)^(s-1)``
    for ``s`` slots, no unit reduction.  Shared by the section sum and
    the homotopy sum below."""
    s = len(word)
    sign = Fraction(-1) if (s - 1) % 2 else Fraction(1)
    return {(word[-1],) + word[:-1]: sign}


def _unit_rotation_sum(word: Word) -> Combination:
    """``sum_l 1 (x) rot^l(word)`` over ``l = 0 .. s - 1 - i(word)``:
    one term per trailing non-module slot plus one."""
    s = len(word)
    i = last_module_index(word)
    out: Combination = {}
    current: Combination = {word: Fraction(1)}
    for _ in range(s - i):
        for w, c in current.items():
            pw = _prepend_unit(w)
            if pw is not None:
                _accumulate(out, pw, c)
        nxt: Combination = {}
        for w, c in current.items():
            for w2, c2 in rotate_last_to_front(w).items():
                _accumulate(nxt, w2, c * c2)
        current = nxt
    return out


def section_sum(word: Word) -> Combination:
    """The degree-preserving section of the head projection: on a
    module-headed word, ``sum_l 1 (x) rot^l``."""
    return _unit_rotation_sum(word)


def homotopy_sum(word: Word) -> Combination:
    """The contracting homotopy on algebra-headed words: minus the same
    unit-rotation sum."""
    return {w: -c for w, c in _unit_rotation_sum(word).items()}


def head_module_merge(datum: CleftDatum, word: Word) -> Combination:
    """The module part of the first face: the retraction collapsing the
    unit-headed words produced by the section sum (picks the ``l = 0``
    term and kills the rest)."""
    if len(word) == 1:
        return {}
    return merge_term(datum, word, 0, slot_concat, head_kind="M")


# ----------------------------------------------------------------------
# classification of canonical words
# ----------------------------------------------------------------------


def classify_canonical_word(word: Word) -> tuple[str, int, int]:
    """Sort a canonical-complex word into its structured family:
    ``("first", v, w)`` for module-headed words, ``("second", v, w)`` for
    algebra-headed ones (where the second kind at ``(v, w)`` carries
    ``w + 1`` interior module slots)."""
    n = len(word) - 1
    interior_m = sum(1 for kind, _ in word[1:] if kind == "M")
    if word[0][0] == "M":
        return ("first", n - interior_m, interior_m)
    w = interior_m - 1
    return ("second", n - w, w)
