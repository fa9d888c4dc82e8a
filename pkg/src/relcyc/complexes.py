"""Bigraded chain spaces and structured complexes over a cleft datum.

This module turns the word-level operators of :mod:`relcyc.ops` into
exact sparse matrices and assembles them into the complexes that carry
the homology computations:

* the bigraded spaces ``X[v,w]`` (module-headed words, ``v`` interior
  algebra slots, ``w`` interior module slots) with the concatenation
  boundary ``b``, the extra-product boundaries ``d`` and ``d'``, the
  cyclic rotation ``t``, its norm ``N``, and the averaging operators
  ``sigma`` and ``sigma'``;

* three double mixed complexes built from pairs of those spaces:

  - ``frak[v,w] = X[v,w] (+) C2[v,w]`` — the canonical relative complex
    split into module-headed and algebra-headed words, with boundary
    blocks ``[[b, alpha], [0, b1]]``, extra differential
    ``diag(d, d)`` and the degree-raising cyclic map built from the
    unit-prepending rotation sum;
  - ``hat[v,w] = X[v,w] (+) X[v-1,w]`` with ``hat_b = [[b, 1-t], [0, -b]]``,
    ``hat_d = diag(d, -d')`` and ``hat_B(x, y) = (0, N x)``;
  - ``ddot[v,w] = X[v,w] (+) X[v,w-1]`` with ``ddot_b = diag(b, -b)``,
    ``ddot_d = [[d, 1-t], [0, -d']]`` and ``ddot_B(x, y) = (0, N x)``;

* the cyclic quotient ``Xbar[v,w] = X[v,w] / im(1 - t)`` with its
  induced boundaries ``b_bar`` and ``d_bar``;

* the comparison maps between ``frak`` and ``hat``: the retraction
  ``theta_hat``, the section ``vartheta_hat`` and the contracting
  homotopy ``eps_hat``;

* labeled total complexes, the two-periodic first-quadrant double
  complex ``BC`` of a mixed complex, and the truncated two-column
  staircase total whose faces alternate ``(X, b, d)`` and
  ``(X, -b, -d')`` joined by ``1 - t`` and ``N``.

All matrices are exact over the rationals and memoized per bidegree;
matrix builders accept any integer bidegree and return correctly shaped
zero matrices outside the first quadrant, so composites near the
boundary of the stored range need no special cases.  Cache fills are
idempotent, so concurrent reads are safe.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .algebra import CleftDatum
from .linalg import (
    CokernelPresentation,
    SparseMatrix,
    rank,
)
from .words import Basis, materialize
from . import ops

__all__ = [
    "AxiomViolation",
    "IdentityViolation",
    "Check",
    "ChainModel",
    "Layout",
    "assemble",
    "split_permutation",
    "bidegrees",
    "bc_column_count",
    "verify_double_mixed",
    "verify_anticommutation",
    "verify_rotation_algebra",
    "verify_quotient",
    "verify_comparison_maps",
    "verify_canonical_split",
    "verify_total_agreement",
    "raise_if_failed",
]


class AxiomViolation(Exception):
    """A structural axiom of a complex fails as an exact matrix identity."""


class IdentityViolation(Exception):
    """A chain-level identity between maps fails as an exact matrix identity."""


@dataclass(frozen=True)
class Check:
    """One failed verification, with enough context to act on it."""

    group: str
    name: str
    site: str
    detail: str = ""

    def __str__(self) -> str:
        msg = f"[{self.group}] {self.name} at {self.site}"
        return f"{msg}: {self.detail}" if self.detail else msg


def raise_if_failed(failures: Sequence[Check], exc: type[Exception]) -> None:
    if failures:
        lines = "\n".join(str(f) for f in failures)
        raise exc(f"{len(failures)} failed check(s):\n{lines}")


def bidegrees(n: int) -> list[tuple[int, int]]:
    """The first-quadrant bidegrees of total degree ``n``, ``w`` ascending."""
    if n < 0:
        return []
    return [(n - w, w) for w in range(n + 1)]


def sites(bound: int) -> list[tuple[int, int]]:
    """All first-quadrant bidegrees with total degree at most ``bound``."""
    out = []
    for n in range(bound + 1):
        out.extend(bidegrees(n))
    return out


# ----------------------------------------------------------------------
# labeled totals
# ----------------------------------------------------------------------


class Layout:
    """An ordered list of labeled components of a direct sum."""

    __slots__ = ("labels", "dims", "offsets", "total", "_pos")

    def __init__(self, parts: Iterable[tuple[object, int]]):
        labels = []
        dims = []
        offsets = []
        total = 0
        for label, dim in parts:
            labels.append(label)
            dims.append(dim)
            offsets.append(total)
            total += dim
        self.labels = tuple(labels)
        self.dims = tuple(dims)
        self.offsets = tuple(offsets)
        self.total = total
        self._pos = {label: i for i, label in enumerate(labels)}

    def offset_of(self, label: object) -> int:
        return self.offsets[self._pos[label]]

    def dim_of(self, label: object) -> int:
        return self.dims[self._pos[label]]

    def __contains__(self, label: object) -> bool:
        return label in self._pos


def assemble(
    source: Layout,
    target: Layout,
    blocks_of: Callable[[object], Iterable[tuple[object, SparseMatrix]]],
) -> SparseMatrix:
    """Assemble a matrix between labeled direct sums.

    ``blocks_of(src_label)`` yields ``(tgt_label, matrix)`` pairs; target
    labels missing from the target layout must come with zero-dimensional
    matrices and are skipped.
    """
    out = SparseMatrix(target.total, source.total)
    for src_label in source.labels:
        co = source.offset_of(src_label)
        for tgt_label, blk in blocks_of(src_label):
            if blk.rows == 0 or blk.cols == 0 or blk.is_zero():
                continue
            ro = target.offset_of(tgt_label)
            for r, c, val in blk.entries():
                out.add_to(ro + r, co + c, val)
    return out


def split_permutation(
    doubled: Layout,
    flat: Layout,
    pieces_of: Callable[[object], Sequence[tuple[object, int]]],
) -> SparseMatrix:
    """The permutation matrix re-sorting a layout of pair-components into
    a layout of their constituent pieces.

    ``pieces_of(label)`` lists the consecutive pieces of the component as
    ``(flat_label, dim)`` in their internal order; zero-dimensional
    pieces may name labels absent from the flat layout.
    """
    out = SparseMatrix(flat.total, doubled.total)
    for label in doubled.labels:
        off = doubled.offset_of(label)
        for flat_label, dim in pieces_of(label):
            if dim == 0:
                continue
            fo = flat.offset_of(flat_label)
            for i in range(dim):
                out.set_entry(fo + i, off + i, Fraction(1))
            off += dim
    return out


def bc_column_count(q: int) -> int:
    """Number of nonempty columns of the first-quadrant double complex at
    total degree ``q``: one per even drop ``q, q-2, ...`` down to 0."""
    return 0 if q < 0 else q // 2 + 1


# ----------------------------------------------------------------------
# the chain model
# ----------------------------------------------------------------------


class ChainModel:
    """All per-bidegree matrices of one instance, built lazily.

    Every public method returning a matrix is memoized on its arguments;
    rebuilding a model recomputes everything from the datum, so two
    models over the same datum agree entry-for-entry.
    """

    def __init__(self, datum: CleftDatum):
        self.datum = datum
        self._cache: dict = {}

    def _memo(self, key, build):
        hit = self._cache.get(key)
        if hit is None:
            hit = build()
            self._cache[key] = hit
        return hit

    # -- bases ---------------------------------------------------------

    def x_basis(self, v: int, w: int) -> Basis:
        def build():
            if v < 0 or w < 0:
                return Basis((), self.datum)
            from .words import enumerate_x_basis

            return enumerate_x_basis(self.datum, v, w)

        return self._memo(("x_basis", v, w), build)

    def second_basis(self, v: int, w: int) -> Basis:
        def build():
            if v <= 0 or w < 0:
                return Basis((), self.datum)
            from .words import enumerate_canonical_second_basis

            return enumerate_canonical_second_basis(self.datum, v, w)

        return self._memo(("second_basis", v, w), build)

    def canonical_basis(self, n: int) -> Basis:
        def build():
            if n < 0:
                return Basis((), self.datum)
            from .words import enumerate_canonical_full_basis

            return enumerate_canonical_full_basis(self.datum, n)

        return self._memo(("canonical_basis", n), build)

    def x_dim(self, v: int, w: int) -> int:
        return self.x_basis(v, w).dim

    def second_dim(self, v: int, w: int) -> int:
        return self.second_basis(v, w).dim

    def _mat(self, name: str, v: int, w: int, fn, source: Basis, target: Basis):
        return self._memo(
            (name, v, w), lambda: materialize(fn, source, target)
        )

    # -- first-kind operators -------------------------------------------

    def b(self, v: int, w: int) -> SparseMatrix:
        """Concatenation boundary ``X[v,w] -> X[v-1,w]``."""
        return self._mat(
            "b", v, w,
            lambda word: ops.hochschild_b(self.datum, word),
            self.x_basis(v, w), self.x_basis(v - 1, w),
        )

    def d(self, v: int, w: int) -> SparseMatrix:
        """Full extra-product boundary ``X[v,w] -> X[v,w-1]`` (with wrap)."""
        return self._mat(
            "d", v, w,
            lambda word: ops.nabla_d(self.datum, word),
            self.x_basis(v, w), self.x_basis(v, w - 1),
        )

    def d_prime(self, v: int, w: int) -> SparseMatrix:
        """Extra-product boundary without the wrapping face."""
        return self._mat(
            "d_prime", v, w,
            lambda word: ops.nabla_d_prime(self.datum, word),
            self.x_basis(v, w), self.x_basis(v, w - 1),
        )

    def rho_wrap(self, v: int, w: int) -> SparseMatrix:
        """The wrapping extra-product face alone: ``d - d'``."""
        def fn(word):
            n = len(word) - 1
            return ops.rho_term(self.datum, word, n) if n >= 1 else {}

        return self._mat(
            "rho_wrap", v, w, fn, self.x_basis(v, w), self.x_basis(v, w - 1)
        )

    def t(self, v: int, w: int) -> SparseMatrix:
        """Cyclic rotation on ``X[v,w]``."""
        return self._mat(
            "t", v, w,
            lambda word: ops.rotate_cyclic(word),
            self.x_basis(v, w), self.x_basis(v, w),
        )

    def t_power(self, v: int, w: int, k: int) -> SparseMatrix:
        if k == 0:
            return SparseMatrix.identity(self.x_dim(v, w))
        return self._memo(
            ("t_power", v, w, k),
            lambda: self.t(v, w) * self.t_power(v, w, k - 1),
        )

    def norm(self, v: int, w: int) -> SparseMatrix:
        """The rotation norm ``N = 1 + t + ... + t^w`` on ``X[v,w]``."""
        return self._mat(
            "norm", v, w,
            lambda word: ops.orbit_sum(word),
            self.x_basis(v, w), self.x_basis(v, w),
        )

    def one_minus_t(self, v: int, w: int) -> SparseMatrix:
        return self._memo(
            ("one_minus_t", v, w),
            lambda: SparseMatrix.identity(self.x_dim(v, w)) - self.t(v, w),
        )

    def sigma(self, v: int, w: int) -> SparseMatrix:
        """The averaging scalar ``1/(w+1)``."""
        assert w >= 0, "sigma requested below the first quadrant"
        return SparseMatrix.scalar(self.x_dim(v, w), Fraction(1, w + 1))

    def sigma_prime(self, v: int, w: int) -> SparseMatrix:
        """The weighted rotation average
        ``sum_{j=0}^{w-1} ((w-j)/(w+1)) t^j``; zero when ``w = 0``."""

        def build():
            dim = self.x_dim(v, w)
            out = SparseMatrix(dim, dim)
            for j in range(w):
                out = out + self.t_power(v, w, j).scaled(Fraction(w - j, w + 1))
            return out

        return self._memo(("sigma_prime", v, w), build)

    # -- second-kind operators ------------------------------------------

    def second_b(self, v: int, w: int) -> SparseMatrix:
        """Algebra-head-preserving concatenation boundary on ``C2[v,w]``."""
        return self._mat(
            "second_b", v, w,
            lambda word: ops.second_kind_b(self.datum, word),
            self.second_basis(v, w), self.second_basis(v - 1, w),
        )

    def alpha(self, v: int, w: int) -> SparseMatrix:
        """Module-headed part of the head faces: ``C2[v,w] -> X[v-1,w]``."""
        return self._mat(
            "alpha", v, w,
            lambda word: ops.second_kind_alpha(self.datum, word),
            self.second_basis(v, w), self.x_basis(v - 1, w),
        )

    def d_second(self, v: int, w: int) -> SparseMatrix:
        """Extra-product boundary on ``C2[v,w]`` (the wrap dies on the
        algebra head)."""
        return self._mat(
            "d_second", v, w,
            lambda word: ops.nabla_d(self.datum, word),
            self.second_basis(v, w), self.second_basis(v, w - 1),
        )

    def connes_first(self, v: int, w: int) -> SparseMatrix:
        """Degree-raising cyclic map on module-headed words:
        ``X[v,w] -> C2[v+1,w]``."""
        return self._mat(
            "connes_first", v, w,
            lambda word: ops.connes_boundary(word),
            self.x_basis(v, w), self.second_basis(v + 1, w),
        )

    def connes_second(self, v: int, w: int) -> SparseMatrix:
        """Degree-raising cyclic map on algebra-headed words."""
        return self._mat(
            "connes_second", v, w,
            lambda word: ops.connes_boundary(word),
            self.second_basis(v, w), self.second_basis(v + 1, w),
        )

    def rotate_second_to_first(self, v: int, w: int) -> SparseMatrix:
        """The cyclic rotation of an algebra-headed word; lands among the
        module-headed words (unit heads die)."""
        return self._mat(
            "rotate_second_to_first", v, w,
            lambda word: ops.rotate_cyclic(word),
            self.second_basis(v, w), self.x_basis(v, w),
        )

    def theta1(self, v: int, w: int) -> SparseMatrix:
        """Head retraction ``C2[v,w] -> X[v-1,w]``."""
        return self._mat(
            "theta1", v, w,
            lambda word: ops.head_module_merge(self.datum, word),
            self.second_basis(v, w), self.x_basis(v - 1, w),
        )

    def vartheta1(self, v: int, w: int) -> SparseMatrix:
        """Unit-prepending section ``X[v-1,w] -> C2[v,w]``."""
        return self._mat(
            "vartheta1", v, w,
            lambda word: ops.section_sum(word),
            self.x_basis(v - 1, w), self.second_basis(v, w),
        )

    def eps1(self, v: int, w: int) -> SparseMatrix:
        """Contracting homotopy ``C2[v,w] -> C2[v+1,w]``."""
        return self._mat(
            "eps1", v, w,
            lambda word: ops.homotopy_sum(word),
            self.second_basis(v, w), self.second_basis(v + 1, w),
        )

    # -- doubled spaces --------------------------------------------------

    def frak_dims(self, v: int, w: int) -> list[int]:
        return [self.x_dim(v, w), self.second_dim(v, w)]

    def hat_dims(self, v: int, w: int) -> list[int]:
        return [self.x_dim(v, w), self.x_dim(v - 1, w)]

    def ddot_dims(self, v: int, w: int) -> list[int]:
        return [self.x_dim(v, w), self.x_dim(v, w - 1)]

    def frak_dim(self, v: int, w: int) -> int:
        return sum(self.frak_dims(v, w))

    def hat_dim(self, v: int, w: int) -> int:
        return sum(self.hat_dims(v, w))

    def ddot_dim(self, v: int, w: int) -> int:
        return sum(self.ddot_dims(v, w))

    def frak_b(self, v: int, w: int) -> SparseMatrix:
        """``[[b, alpha], [0, b1]]`` on the split canonical complex."""
        return self._memo(("frak_b", v, w), lambda: SparseMatrix.block(
            self.frak_dims(v - 1, w), self.frak_dims(v, w),
            {(0, 0): self.b(v, w), (0, 1): self.alpha(v, w),
             (1, 1): self.second_b(v, w)},
        ))

    def frak_d(self, v: int, w: int) -> SparseMatrix:
        """``diag(d, d)`` on the split canonical complex."""
        return self._memo(("frak_d", v, w), lambda: SparseMatrix.block(
            self.frak_dims(v, w - 1), self.frak_dims(v, w),
            {(0, 0): self.d(v, w), (1, 1): self.d_second(v, w)},
        ))

    def frak_B(self, v: int, w: int) -> SparseMatrix:
        """Degree-raising cyclic map, landing in algebra-headed words."""
        return self._memo(("frak_B", v, w), lambda: SparseMatrix.block(
            self.frak_dims(v + 1, w), self.frak_dims(v, w),
            {(1, 0): self.connes_first(v, w), (1, 1): self.connes_second(v, w)},
        ))

    def hat_b(self, v: int, w: int) -> SparseMatrix:
        return self._memo(("hat_b", v, w), lambda: SparseMatrix.block(
            self.hat_dims(v - 1, w), self.hat_dims(v, w),
            {(0, 0): self.b(v, w), (0, 1): self.one_minus_t(v - 1, w),
             (1, 1): -self.b(v - 1, w)},
        ))

    def hat_d(self, v: int, w: int) -> SparseMatrix:
        return self._memo(("hat_d", v, w), lambda: SparseMatrix.block(
            self.hat_dims(v, w - 1), self.hat_dims(v, w),
            {(0, 0): self.d(v, w), (1, 1): -self.d_prime(v - 1, w)},
        ))

    def hat_B(self, v: int, w: int) -> SparseMatrix:
        return self._memo(("hat_B", v, w), lambda: SparseMatrix.block(
            self.hat_dims(v + 1, w), self.hat_dims(v, w),
            {(1, 0): self.norm(v, w)},
        ))

    def ddot_b(self, v: int, w: int) -> SparseMatrix:
        return self._memo(("ddot_b", v, w), lambda: SparseMatrix.block(
            self.ddot_dims(v - 1, w), self.ddot_dims(v, w),
            {(0, 0): self.b(v, w), (1, 1): -self.b(v, w - 1)},
        ))

    def ddot_d(self, v: int, w: int) -> SparseMatrix:
        return self._memo(("ddot_d", v, w), lambda: SparseMatrix.block(
            self.ddot_dims(v, w - 1), self.ddot_dims(v, w),
            {(0, 0): self.d(v, w), (0, 1): self.one_minus_t(v, w - 1),
             (1, 1): -self.d_prime(v, w - 1)},
        ))

    def ddot_B(self, v: int, w: int) -> SparseMatrix:
        return self._memo(("ddot_B", v, w), lambda: SparseMatrix.block(
            self.ddot_dims(v, w + 1), self.ddot_dims(v, w),
            {(1, 0): self.norm(v, w)},
        ))

    # -- comparison maps -------------------------------------------------

    def theta_hat(self, v: int, w: int) -> SparseMatrix:
        """Retraction of the split canonical complex onto ``hat[v,w]``:
        ``(x, y) -> (x + t(y), head-merge(y))``."""
        return self._memo(("theta_hat", v, w), lambda: SparseMatrix.block(
            self.hat_dims(v, w), self.frak_dims(v, w),
            {(0, 0): SparseMatrix.identity(self.x_dim(v, w)),
             (0, 1): self.rotate_second_to_first(v, w),
             (1, 1): self.theta1(v, w)},
        ))

    def vartheta_hat(self, v: int, w: int) -> SparseMatrix:
        """Section ``hat[v,w] -> frak[v,w]``: ``(x, y) -> (x, section(y))``."""
        return self._memo(("vartheta_hat", v, w), lambda: SparseMatrix.block(
            self.frak_dims(v, w), self.hat_dims(v, w),
            {(0, 0): SparseMatrix.identity(self.x_dim(v, w)),
             (1, 1): self.vartheta1(v, w)},
        ))

    def eps_hat(self, v: int, w: int) -> SparseMatrix:
        """Contracting homotopy ``frak[v,w] -> frak[v+1,w]`` supported on
        the algebra-headed summand."""
        return self._memo(("eps_hat", v, w), lambda: SparseMatrix.block(
            self.frak_dims(v + 1, w), self.frak_dims(v, w),
            {(1, 1): self.eps1(v, w)},
        ))

    # -- cyclic quotient --------------------------------------------------

    def x_quotient(self, v: int, w: int) -> CokernelPresentation:
        """Presentation of ``Xbar[v,w] = X[v,w] / im(1 - t)``."""
        return self._memo(
            ("x_quotient", v, w),
            lambda: CokernelPresentation(self.one_minus_t(v, w)),
        )

    def xbar_dim(self, v: int, w: int) -> int:
        return self.x_quotient(v, w).dim

    def q_mat(self, v: int, w: int) -> SparseMatrix:
        """The quotient surjection ``X[v,w] -> Xbar[v,w]``."""
        return self.x_quotient(v, w).projection

    def s_mat(self, v: int, w: int) -> SparseMatrix:
        """A section of the quotient surjection (coordinate subspace)."""
        return self.x_quotient(v, w).section

    def b_bar(self, v: int, w: int) -> SparseMatrix:
        """Boundary induced on the cyclic quotient by ``b``."""
        return self._memo(("b_bar", v, w), lambda: self.x_quotient(
            v, w).induced_map(self.b(v, w), self.x_quotient(v - 1, w),
                              self.one_minus_t(v, w)))

    def d_bar(self, v: int, w: int) -> SparseMatrix:
        """Boundary induced on the cyclic quotient by ``d``."""
        return self._memo(("d_bar", v, w), lambda: self.x_quotient(
            v, w).induced_map(self.d(v, w), self.x_quotient(v, w - 1),
                              self.one_minus_t(v, w)))

    # -- labeled totals ----------------------------------------------------

    def hat_layout(self, n: int) -> Layout:
        return Layout((("hat", v, w), self.hat_dim(v, w)) for v, w in bidegrees(n))

    def ddot_layout(self, n: int) -> Layout:
        return Layout((("ddot", v, w), self.ddot_dim(v, w)) for v, w in bidegrees(n))

    def frak_layout(self, n: int) -> Layout:
        return Layout((("frak", v, w), self.frak_dim(v, w)) for v, w in bidegrees(n))

    def xbar_layout(self, n: int) -> Layout:
        return Layout((("xbar", v, w), self.xbar_dim(v, w)) for v, w in bidegrees(n))

    def flat_pair_layout(self, n: int) -> Layout:
        """The common reordering target for total-complex comparisons:
        current-degree pieces ``X[a,b]`` with ``a+b = n`` first, then the
        shifted pieces with ``a+b = n-1``, each group by ascending ``b``."""
        parts = [(("cur", a, b), self.x_dim(a, b)) for a, b in bidegrees(n)]
        parts += [(("prev", a, b), self.x_dim(a, b)) for a, b in bidegrees(n - 1)]
        return Layout(parts)

    def _tot(self, layout_fn, n_src: int, n_tgt: int, blocks_of) -> SparseMatrix:
        return assemble(layout_fn(n_src), layout_fn(n_tgt), blocks_of)

    def tot_hat_boundary(self, n: int) -> SparseMatrix:
        """Total boundary ``hat_b + hat_d`` at total degree ``n``."""
        def blocks(label):
            _, v, w = label
            return [(("hat", v - 1, w), self.hat_b(v, w)),
                    (("hat", v, w - 1), self.hat_d(v, w))]

        return self._memo(("tot_hat_boundary", n),
                          lambda: self._tot(self.hat_layout, n, n - 1, blocks))

    def tot_hat_connes(self, n: int) -> SparseMatrix:
        def blocks(label):
            _, v, w = label
            return [(("hat", v + 1, w), self.hat_B(v, w))]

        return self._memo(("tot_hat_connes", n),
                          lambda: self._tot(self.hat_layout, n, n + 1, blocks))

    def tot_ddot_boundary(self, n: int) -> SparseMatrix:
        def blocks(label):
            _, v, w = label
            return [(("ddot", v - 1, w), self.ddot_b(v, w)),
                    (("ddot", v, w - 1), self.ddot_d(v, w))]

        return self._memo(("tot_ddot_boundary", n),
                          lambda: self._tot(self.ddot_layout, n, n - 1, blocks))

    def tot_ddot_connes(self, n: int) -> SparseMatrix:
        def blocks(label):
            _, v, w = label
            return [(("ddot", v, w + 1), self.ddot_B(v, w))]

        return self._memo(("tot_ddot_connes", n),
                          lambda: self._tot(self.ddot_layout, n, n + 1, blocks))

    def tot_frak_boundary(self, n: int) -> SparseMatrix:
        def blocks(label):
            _, v, w = label
            return [(("frak", v - 1, w), self.frak_b(v, w)),
                    (("frak", v, w - 1), self.frak_d(v, w))]

        return self._memo(("tot_frak_boundary", n),
                          lambda: self._tot(self.frak_layout, n, n - 1, blocks))

    def tot_frak_connes(self, n: int) -> SparseMatrix:
        def blocks(label):
            _, v, w = label
            return [(("frak", v + 1, w), self.frak_B(v, w))]

        return self._memo(("tot_frak_connes", n),
                          lambda: self._tot(self.frak_layout, n, n + 1, blocks))

    def tot_xbar_boundary(self, n: int) -> SparseMatrix:
        """Total boundary ``b_bar + d_bar`` of the cyclic quotient."""
        def blocks(label):
            _, v, w = label
            return [(("xbar", v - 1, w), self.b_bar(v, w)),
                    (("xbar", v, w - 1), self.d_bar(v, w))]

        return self._memo(("tot_xbar_boundary", n),
                          lambda: self._tot(self.xbar_layout, n, n - 1, blocks))

    def tot_theta(self, n: int) -> SparseMatrix:
        def blocks(label):
            _, v, w = label
            return [(("hat", v, w), self.theta_hat(v, w))]

        return assemble(self.frak_layout(n), self.hat_layout(n), blocks)

    def tot_vartheta(self, n: int) -> SparseMatrix:
        def blocks(label):
            _, v, w = label
            return [(("frak", v, w), self.vartheta_hat(v, w))]

        return assemble(self.hat_layout(n), self.frak_layout(n), blocks)

    def tot_eps(self, n: int) -> SparseMatrix:
        def blocks(label):
            _, v, w = label
            return [(("frak", v + 1, w), self.eps_hat(v, w))]

        return assemble(self.frak_layout(n), self.frak_layout(n + 1), blocks)

    def hat_split(self, n: int) -> SparseMatrix:
        """Permutation sorting the degree-``n`` hat total into flat pieces."""
        return split_permutation(
            self.hat_layout(n), self.flat_pair_layout(n),
            lambda label: [(("cur", label[1], label[2]),
                            self.x_dim(label[1], label[2])),
                           (("prev", label[1] - 1, label[2]),
                            self.x_dim(label[1] - 1, label[2]))],
        )

    def ddot_split(self, n: int) -> SparseMatrix:
        """Permutation sorting the degree-``n`` ddot total into flat pieces."""
        return split_permutation(
            self.ddot_layout(n), self.flat_pair_layout(n),
            lambda label: [(("cur", label[1], label[2]),
                            self.x_dim(label[1], label[2])),
                           (("prev", label[1], label[2] - 1),
                            self.x_dim(label[1], label[2] - 1))],
        )

    # -- staircase total and the double complex of a mixed complex -------

    def staircase_layout(self, n: int) -> Layout:
        """Total degree ``n`` of the column-truncated staircase: face ``c``
        carries the bidegrees of total degree ``n - c``."""
        parts = []
        for c in range(n + 1):
            for a, b in bidegrees(n - c):
                parts.append((("face", c, a, b), self.x_dim(a, b)))
        return Layout(parts)

    def tot_staircase_boundary(self, n: int) -> SparseMatrix:
        """Degree-``n`` total boundary of the staircase, assembled directly
        from its period-two face pattern: even faces carry ``(b, d)``, odd
        faces ``(-b, -d')``; odd faces map to the previous face by
        ``1 - t`` and positive even faces by ``N``."""

        def blocks(label):
            _, c, a, b = label
            even = c % 2 == 0
            out = [
                (("face", c, a - 1, b), self.b(a, b) if even else -self.b(a, b)),
                (("face", c, a, b - 1),
                 self.d(a, b) if even else -self.d_prime(a, b)),
            ]
            if c % 2 == 1:
                out.append((("face", c - 1, a, b), self.one_minus_t(a, b)))
            elif c >= 2:
                out.append((("face", c - 1, a, b), self.norm(a, b)))
            return out

        return assemble(self.staircase_layout(n), self.staircase_layout(n - 1),
                        blocks)

    def bc_hat_layout(self, q: int) -> Layout:
        """Total degree ``q`` of the double complex of the hat total."""
        parts = []
        for i in range(bc_column_count(q)):
            for v, w in bidegrees(q - 2 * i):
                parts.append((("bc", i, v, w), self.hat_dim(v, w)))
        return Layout(parts)

    def tot_bc_hat_boundary(self, q: int) -> SparseMatrix:
        """Degree-``q`` boundary of the double complex of the hat total:
        the hat boundary down each column plus the degree-raising cyclic
        map one column inward."""

        def blocks(label):
            _, i, v, w = label
            out = [
                (("bc", i, v - 1, w), self.hat_b(v, w)),
                (("bc", i, v, w - 1), self.hat_d(v, w)),
            ]
            if i >= 1:
                # The leftmost column has no further column to map into;
                # dropping its horizontal component is the definition of
                # the first-quadrant double complex.
                out.append((("bc", i - 1, v + 1, w), self.hat_B(v, w)))
            return out

        return assemble(self.bc_hat_layout(q), self.bc_hat_layout(q - 1), blocks)

    def bc_hat_to_staircase(self, q: int) -> SparseMatrix:
        """Permutation identifying the double complex of the hat total with
        the staircase: column ``i`` splits into faces ``2i`` and ``2i+1``."""
        return split_permutation(
            self.bc_hat_layout(q), self.staircase_layout(q),
            lambda label: [(("face", 2 * label[1], label[2], label[3]),
                            self.x_dim(label[2], label[3])),
                           (("face", 2 * label[1] + 1, label[2] - 1, label[3]),
                            self.x_dim(label[2] - 1, label[3]))],
        )


# ----------------------------------------------------------------------
# verification suites
# ----------------------------------------------------------------------


def _cmp(failures: list[Check], group: str, name: str, site: str,
         lhs: SparseMatrix, rhs: SparseMatrix) -> None:
    if lhs != rhs:
        diff = lhs - rhs
        failures.append(Check(group, name, site,
                              f"matrices differ in {diff.nnz()} entries"))


def _site(instance: str, v: int, w: int) -> str:
    return f"{instance} (v,w)=({v},{w})"


def verify_double_mixed(
    model: ChainModel,
    family: str,
    bound: int,
    maps: Sequence[tuple[str, Callable[[int, int], SparseMatrix], tuple[int, int]]],
) -> list[Check]:
    """The six axioms of a double mixed complex, checked exactly at every
    first-quadrant bidegree of total degree at most ``bound``.

    ``maps`` lists the three structure maps as ``(name, builder,
    bidegree shift)``; each must square to zero and each pair must
    anticommute.
    """
    failures: list[Check] = []
    group = f"double-mixed:{family}"
    name = model.datum.name
    for v, w in sites(bound):
        for i, (map_name, fn, (dv, dw)) in enumerate(maps):
            first = fn(v, w)
            square = fn(v + dv, w + dw) * first
            if not square.is_zero():
                failures.append(Check(group, f"{map_name}^2 = 0",
                                      _site(name, v, w)))
            for other_name, other_fn, (ov, ow) in maps[i + 1:]:
                lhs = other_fn(v + dv, w + dw) * first
                rhs = fn(v + ov, w + ow) * other_fn(v, w)
                if lhs != (-rhs):
                    failures.append(Check(
                        group, f"{map_name} and {other_name} anticommute",
                        _site(name, v, w)))
    return failures


def verify_anticommutation(model: ChainModel, bound: int) -> list[Check]:
    """The sign ledger tying the concatenation and extra-product faces to
    the rotation: each equality exact at every stored bidegree."""
    failures: list[Check] = []
    g = "face-ledger"
    name = model.datum.name
    for v, w in sites(bound):
        site = _site(name, v, w)
        _cmp(failures, g, "d b = -b d", site,
             model.d(v - 1, w) * model.b(v, w),
             -(model.b(v, w - 1) * model.d(v, w)))
        _cmp(failures, g, "d' b = -b d'", site,
             model.d_prime(v - 1, w) * model.b(v, w),
             -(model.b(v, w - 1) * model.d_prime(v, w)))
        _cmp(failures, g, "d' N = N d", site,
             model.d_prime(v, w) * model.norm(v, w),
             model.norm(v, w - 1) * model.d(v, w))
        _cmp(failures, g, "d (1-t) = (1-t) d'", site,
             model.d(v, w) * model.one_minus_t(v, w),
             model.one_minus_t(v, w - 1) * model.d_prime(v, w))
        _cmp(failures, g, "b N = N b", site,
             model.b(v, w) * model.norm(v, w),
             model.norm(v - 1, w) * model.b(v, w))
        _cmp(failures, g, "t b = b t", site,
             model.t(v - 1, w) * model.b(v, w),
             model.b(v, w) * model.t(v, w))
    return failures


def verify_rotation_algebra(model: ChainModel, bound: int) -> list[Check]:
    """Order of the rotation, the norm/rotation kernel-image equalities,
    and the averaging-operator identities."""
    failures: list[Check] = []
    g = "rotation"
    name = model.datum.name
    for v, w in sites(bound):
        site = _site(name, v, w)
        dim = model.x_dim(v, w)
        ident = SparseMatrix.identity(dim)
        _cmp(failures, g, "t^(w+1) = 1", site, model.t_power(v, w, w + 1), ident)
        nmat = model.norm(v, w)
        powers = SparseMatrix(dim, dim)
        for k in range(w + 1):
            powers = powers + model.t_power(v, w, k)
        _cmp(failures, g, "N = 1 + t + ... + t^w", site, nmat, powers)
        omt = model.one_minus_t(v, w)
        if not (nmat * omt).is_zero() or not (omt * nmat).is_zero():
            failures.append(Check(g, "N (1-t) = (1-t) N = 0", site))
        if rank(omt) + rank(nmat) != dim:
            failures.append(Check(
                g, "rank(1-t) + rank(N) = dim", site,
                f"rank(1-t)={rank(omt)}, rank(N)={rank(nmat)}, dim={dim}"))
        sp = model.sigma_prime(v, w)
        expected = ident - nmat.scaled(Fraction(1, w + 1))
        _cmp(failures, g, "(1-t) sigma' = 1 - N/(w+1)", site, omt * sp, expected)
        _cmp(failures, g, "sigma' (1-t) = 1 - N/(w+1)", site, sp * omt, expected)
        _cmp(failures, g, "sigma N = N sigma = N/(w+1)", site,
             model.sigma(v, w) * nmat, nmat.scaled(Fraction(1, w + 1)))
    return failures


def verify_quotient(model: ChainModel, bound: int) -> list[Check]:
    """Exactness of the quotient presentation and of the induced
    boundaries: the surjection kills exactly ``im(1-t)`` and intertwines
    ``b`` and ``d`` with their induced maps."""
    failures: list[Check] = []
    g = "cyclic-quotient"
    name = model.datum.name
    for v, w in sites(bound):
        site = _site(name, v, w)
        q = model.q_mat(v, w)
        s = model.s_mat(v, w)
        qdim = model.xbar_dim(v, w)
        _cmp(failures, g, "q s = 1", site, q * s, SparseMatrix.identity(qdim))
        if not (q * model.one_minus_t(v, w)).is_zero():
            failures.append(Check(g, "q (1-t) = 0", site))
        if rank(model.one_minus_t(v, w)) + qdim != model.x_dim(v, w):
            failures.append(Check(g, "dim Xbar = dim X - rank(1-t)", site))
        _cmp(failures, g, "b_bar q = q b", site,
             model.b_bar(v, w) * q, model.q_mat(v - 1, w) * model.b(v, w))
        _cmp(failures, g, "d_bar q = q d", site,
             model.d_bar(v, w) * q, model.q_mat(v, w - 1) * model.d(v, w))
    return failures


def verify_comparison_maps(model: ChainModel, bound: int) -> list[Check]:
    """The retraction/section/homotopy data between the split canonical
    complex and the hat complex, including the collapse identities that
    make the perturbation series stop after one term."""
    failures: list[Check] = []
    g = "comparison"
    name = model.datum.name
    for v, w in sites(bound):
        site = _site(name, v, w)
        theta = model.theta_hat(v, w)
        vartheta = model.vartheta_hat(v, w)
        eps = model.eps_hat(v, w)
        _cmp(failures, g, "theta vartheta = 1", site,
             theta * vartheta, SparseMatrix.identity(model.hat_dim(v, w)))
        _cmp(failures, g, "theta is a chain map", site,
             model.hat_b(v, w) * theta,
             model.theta_hat(v - 1, w) * model.frak_b(v, w))
        _cmp(failures, g, "vartheta is a chain map", site,
             model.frak_b(v, w) * vartheta,
             model.vartheta_hat(v - 1, w) * model.hat_b(v, w))
        if not (eps * vartheta).is_zero():
            failures.append(Check(g, "eps vartheta = 0", site))
        if not (model.theta_hat(v + 1, w) * eps).is_zero():
            failures.append(Check(g, "theta eps = 0", site))
        if not (model.eps_hat(v + 1, w) * eps).is_zero():
            failures.append(Check(g, "eps eps = 0", site))
        _cmp(failures, g, "vartheta theta - 1 = frak_b eps + eps frak_b", site,
             vartheta * theta - SparseMatrix.identity(model.frak_dim(v, w)),
             model.frak_b(v + 1, w) * eps
             + model.eps_hat(v - 1, w) * model.frak_b(v, w))
        _cmp(failures, g, "theta frak_d vartheta = hat_d", site,
             model.theta_hat(v, w - 1) * model.frak_d(v, w) * vartheta,
             model.hat_d(v, w))
        if not (model.eps_hat(v, w - 1) * model.frak_d(v, w) * vartheta).is_zero():
            failures.append(Check(g, "eps frak_d vartheta = 0", site))
        if not (model.theta_hat(v + 1, w - 1) * model.frak_d(v + 1, w)
                * eps).is_zero():
            failures.append(Check(g, "theta frak_d eps = 0", site))
        if not (model.eps_hat(v + 1, w - 1) * model.frak_d(v + 1, w)
                * eps).is_zero():
            failures.append(Check(g, "eps frak_d eps = 0", site))
    return failures


def verify_canonical_split(model: ChainModel, bound: int) -> list[Check]:
    """The word classification matches the split spaces degree by degree,
    and the split boundary/cyclic blocks reassemble the one-graded
    canonical complex built from the full extension product."""
    failures: list[Check] = []
    g = "canonical-split"
    datum = model.datum
    name = datum.name
    for n in range(bound + 1):
        site = f"{name} degree {n}"
        canonical = model.canonical_basis(n)
        layout = model.frak_layout(n)
        # Permutation from the split layout to the canonical enumeration.
        perm = SparseMatrix(canonical.dim, layout.total)
        seen = 0
        ok = True
        for v, w in bidegrees(n):
            off = layout.offset_of(("frak", v, w))
            for kind, basis in (("first", model.x_basis(v, w)),
                                ("second", model.second_basis(v, w))):
                for word in basis.words:
                    if ops.classify_canonical_word(word) != (kind, v, w):
                        ok = False
                    pos = canonical.index.get(word)
                    if pos is None:
                        ok = False
                        break
                    perm.set_entry(pos, off, Fraction(1))
                    off += 1
                    seen += 1
        if not ok or seen != canonical.dim:
            failures.append(Check(
                g, "split spaces enumerate the canonical words", site))
            continue
        full = materialize(
            lambda word: ops.full_boundary(datum, word),
            canonical, model.canonical_basis(n - 1))
        perm_prev = _canonical_permutation(model, n - 1)
        _cmp(failures, g, "split boundary = full-product boundary", site,
             full * perm, perm_prev * model.tot_frak_boundary(n))
        full_B = materialize(
            lambda word: ops.connes_boundary(word),
            canonical, model.canonical_basis(n + 1))
        perm_next = _canonical_permutation(model, n + 1)
        _cmp(failures, g, "split cyclic map = canonical cyclic map", site,
             full_B * perm, perm_next * model.tot_frak_connes(n))
        if not (materialize(lambda word: ops.connes_boundary(word),
                            model.canonical_basis(n + 1),
                            model.canonical_basis(n + 2)) * full_B).is_zero():
            failures.append(Check(g, "cyclic map squares to zero", site))
    return failures


def _canonical_permutation(model: ChainModel, n: int) -> SparseMatrix:
    """Permutation from the split layout at degree ``n`` to the canonical
    word enumeration (columns indexed by the split layout)."""
    canonical = model.canonical_basis(n)
    layout = model.frak_layout(n)
    perm = SparseMatrix(canonical.dim, layout.total)
    for v, w in bidegrees(n):
        off = layout.offset_of(("frak", v, w))
        for basis in (model.x_basis(v, w), model.second_basis(v, w)):
            for word in basis.words:
                perm.set_entry(canonical.index[word], off, Fraction(1))
                off += 1
    return perm


def verify_total_agreement(model: ChainModel, bound: int) -> list[Check]:
    """Matrix-for-matrix agreement of independently assembled totals:

    * the hat and ddot totals coincide after sorting both into the same
      flat current/previous pieces, for the boundary and the cyclic map;
    * the double complex of the hat total coincides with the staircase
      total assembled directly from its face pattern.
    """
    failures: list[Check] = []
    g = "total-agreement"
    name = model.datum.name
    for n in range(bound + 1):
        site = f"{name} degree {n}"
        ph_src = model.hat_split(n)
        ph_tgt = model.hat_split(n - 1)
        pd_src = model.ddot_split(n)
        pd_tgt = model.ddot_split(n - 1)
        _cmp(failures, g, "hat total boundary = ddot total boundary", site,
             ph_tgt * model.tot_hat_boundary(n) * ph_src.transpose(),
             pd_tgt * model.tot_ddot_boundary(n) * pd_src.transpose())
        _cmp(failures, g, "hat total cyclic = ddot total cyclic", site,
             model.hat_split(n + 1) * model.tot_hat_connes(n)
             * ph_src.transpose(),
             model.ddot_split(n + 1) * model.tot_ddot_connes(n)
             * pd_src.transpose())
        pb_src = model.bc_hat_to_staircase(n)
        pb_tgt = model.bc_hat_to_staircase(n - 1)
        _cmp(failures, g, "staircase total = double complex of hat total",
             site,
             model.tot_staircase_boundary(n),
             pb_tgt * model.tot_bc_hat_boundary(n) * pb_src.transpose())
    return failures
