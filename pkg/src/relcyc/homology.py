"""Relative Hochschild and cyclic homology through independent pipelines.

Every pipeline reduces to exact rank arithmetic: the degree-``n``
homology of a complex ``C`` has dimension ``dim C_n - rank d_n -
rank d_{n+1}``.  The pipelines differ in which chain model they
assemble:

* ``oracle`` works on canonical words over the extension algebra ``E``
  itself, with faces generated directly from multiplication in ``E``
  and the cyclic sum prepending the unit.  It shares no operator code
  with the word-model complexes, which is what makes it an oracle.
* ``hatX`` (Hochschild) totals the pair-model double complex.
* ``mixedBC`` (cyclic) runs the cyclic bicomplex of that total.
* ``quotient`` (cyclic) works on the cyclic quotient complex, where
  the rotation has been divided out and the boundary is one column of
  faces.
* ``harmonic`` (cyclic) runs the cyclic bicomplex of the two-term
  description of the harmonic subspace, connecting blocks included.

Agreement of the reported dimensions across pipelines is the headline
cross-check; :class:`PipelineDisagreement` names the degree and the
pipelines when it fails.  The S/B/I long exact sequence is assembled
at chain level and checked by rank arithmetic on the induced maps.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Callable, Sequence

from .algebra import CleftDatum, build_cleft_extension, word_weight
from .complexes import (
    ChainModel,
    Check,
    IdentityViolation,
    Layout,
    assemble,
    bc_column_count,
    bidegrees,
)
from .harmonic import HarmonicModel
from .linalg import HomologyBasis, Scalar, SparseMatrix, rank
from .parallel import ordered_map

__all__ = [
    "HH_PIPELINES",
    "HC_PIPELINES",
    "PipelineDisagreement",
    "ExactnessViolation",
    "CanonicalComplex",
    "HomologyReport",
    "ComparisonReport",
    "SbiSlot",
    "SbiReport",
    "HomologyEngine",
    "report_json",
    "report_csv",
    "comparison_json",
    "comparison_csv",
    "sbi_json",
    "sbi_csv",
    "verify_weight_blocks",
]

HH_PIPELINES = ("oracle", "hatX")
HC_PIPELINES = ("oracle", "mixedBC", "quotient", "harmonic")


class PipelineDisagreement(Exception):
    """Two homology pipelines report different dimensions."""


class ExactnessViolation(Exception):
    """The S/B/I long sequence fails exactness at some slot."""


# ----------------------------------------------------------------------
# the canonical-word oracle
# ----------------------------------------------------------------------


class CanonicalComplex:
    """The relative complex on canonical words over ``E`` itself.

    A degree-``n`` basis word is a head (any basis element of ``E``)
    followed by ``n`` non-unit basis elements.  The relative subcomplex
    is spanned by the words that mention the module part at least once;
    faces merge adjacent letters through multiplication in ``E``
    (interior products are reduced past the unit), and the cyclic sum
    prepends the unit with rotation signs.  Merging never removes the
    last module letter — module times anything stays in the module —
    so the span is closed under both operators.
    """

    def __init__(self, datum: CleftDatum):
        self.datum = datum
        self.extension = build_cleft_extension(datum)
        self.first_module = datum.algebra.dim
        self.letters = tuple(i for i in range(self.extension.dim) if i != 0)
        self._store: dict = {}

    def _memo(self, key, build):
        if key not in self._store:
            self._store[key] = build()
        return self._store[key]

    def basis(self, n: int) -> list[tuple[int, ...]]:
        """Words ``(head, x_1, .., x_n)`` with at least one module letter."""

        def build():
            if n < 0:
                return []
            fm = self.first_module
            out = []
            for head in range(self.extension.dim):
                for tail in itertools.product(self.letters, repeat=n):
                    if head >= fm or any(x >= fm for x in tail):
                        out.append((head,) + tail)
            return out

        return self._memo(("basis", n), build)

    def index(self, n: int) -> dict[tuple[int, ...], int]:
        return self._memo(
            ("index", n),
            lambda: {word: i for i, word in enumerate(self.basis(n))},
        )

    def dim(self, n: int) -> int:
        return len(self.basis(n))

    def _boundary_word(self, word: tuple[int, ...]) -> dict[tuple[int, ...], Scalar]:
        """Alternating sum of merges, the wrap-around merge last."""
        head, tail = word[0], word[1:]
        n = len(tail)
        product = self.extension.product
        out: dict[tuple[int, ...], Scalar] = {}

        def add(res: tuple[int, ...], value: Scalar) -> None:
            s = out.get(res, 0) + value
            if s:
                out[res] = s
            elif res in out:
                del out[res]

        for k, c in product(head, tail[0]).items():
            add((k,) + tail[1:], c)
        for j in range(1, n):
            sign = -1 if j % 2 else 1
            for k, c in product(tail[j - 1], tail[j]).items():
                if k != 0:
                    add((head,) + tail[: j - 1] + (k,) + tail[j + 1 :], sign * c)
        sign = -1 if n % 2 else 1
        for k, c in product(tail[n - 1], head).items():
            add((k,) + tail[: n - 1], sign * c)
        return out

    def boundary(self, n: int) -> SparseMatrix:
        """The face-sum boundary in degree ``n``."""

        def build():
            source = self.basis(n)
            if n <= 0:
                return SparseMatrix(0, len(source))
            target = self.index(n - 1)
            entries = []
            for col, word in enumerate(source):
                for res, value in self._boundary_word(word).items():
                    entries.append((target[res], col, value))
            return SparseMatrix.from_entries(len(target), len(source), entries)

        return self._memo(("boundary", n), build)

    def connes(self, n: int) -> SparseMatrix:
        """The unit-prepending cyclic sum in degree ``n``.

        Every summand carries the old head into an interior slot, so
        words headed by the unit are killed outright.
        """

        def build():
            source = self.basis(n)
            target = self.index(n + 1)
            entries = []
            for col, word in enumerate(source):
                if word[0] == 0:
                    continue
                for i in range(n + 1):
                    sign = -1 if (i * n) % 2 else 1
                    res = (0,) + word[i:] + word[:i]
                    entries.append((target[res], col, sign))
            return SparseMatrix.from_entries(len(target), len(source), entries)

        return self._memo(("connes", n), build)

    # -- the cyclic bicomplex of the canonical mixed complex ----------

    def bc_layout(self, q: int) -> Layout:
        return Layout(
            (("col", i, q - 2 * i), self.dim(q - 2 * i))
            for i in range(bc_column_count(q))
        )

    def bc_boundary(self, q: int) -> SparseMatrix:
        """Faces down each column, the cyclic sum one column inward."""

        def blocks(label):
            _, i, m = label
            out = [(("col", i, m - 1), self.boundary(m))]
            if i >= 1:
                out.append((("col", i - 1, m + 1), self.connes(m)))
            return out

        return self._memo(
            ("bc_boundary", q),
            lambda: assemble(self.bc_layout(q), self.bc_layout(q - 1), blocks),
        )


# ----------------------------------------------------------------------
# reports
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class HomologyReport:
    """Per-degree homology dimensions from one pipeline.

    ``per_weight`` is only present on graded instances: pairs of a
    weight and that weight's own per-degree dimensions, which must sum
    to ``dims`` degree by degree.
    """

    instance: str
    kind: str
    pipeline: str
    bound: int
    dims: tuple[int, ...]
    per_weight: tuple[tuple[int, tuple[int, ...]], ...] | None = None


@dataclass(frozen=True)
class ComparisonReport:
    """All pipelines side by side, with per-degree agreement flags."""

    instance: str
    bound: int
    reports: tuple[HomologyReport, ...]

    def _by_kind(self, kind: str) -> list[HomologyReport]:
        return [r for r in self.reports if r.kind == kind]

    def agreement(self, kind: str) -> list[bool]:
        group = self._by_kind(kind)
        return [
            len({r.dims[n] for r in group}) <= 1 for n in range(self.bound + 1)
        ]

    def disagreements(self) -> list[tuple[str, int, dict[str, int]]]:
        out = []
        for kind in ("hh", "hc"):
            group = self._by_kind(kind)
            if not group:
                continue
            for n, agree in enumerate(self.agreement(kind)):
                if not agree:
                    out.append(
                        (kind, n, {r.pipeline: r.dims[n] for r in group})
                    )
        return out

    @property
    def all_agree(self) -> bool:
        return not self.disagreements()


@dataclass(frozen=True)
class SbiSlot:
    """One exactness check: a group with its incoming and outgoing maps."""

    group: str
    degree: int
    dim: int
    incoming: str
    outgoing: str
    rank_in: int
    rank_out: int
    composite_is_zero: bool

    @property
    def exact(self) -> bool:
        return self.composite_is_zero and self.rank_in + self.rank_out == self.dim


@dataclass(frozen=True)
class SbiReport:
    """The S/B/I long sequence on one instance, checked slot by slot."""

    instance: str
    bound: int
    hh_dims: tuple[int, ...]
    hc_dims: tuple[int, ...]
    slots: tuple[SbiSlot, ...]

    @property
    def ok(self) -> bool:
        return all(slot.exact for slot in self.slots)

    def require(self) -> None:
        bad = [s for s in self.slots if not s.exact]
        if bad:
            lines = "\n".join(
                f"  {s.group}_{s.degree}: dim {s.dim}, "
                f"rank in ({s.incoming}) {s.rank_in}, "
                f"rank out ({s.outgoing}) {s.rank_out}, "
                f"composite zero: {s.composite_is_zero}"
                for s in bad
            )
            raise ExactnessViolation(
                f"S/B/I sequence of {self.instance!r} fails exactness at "
                f"{len(bad)} slot(s):\n{lines}"
            )


# ----------------------------------------------------------------------
# the engine
# ----------------------------------------------------------------------


def _dims_by_rank(
    dim_of: Callable[[int], int],
    boundary_of: Callable[[int], SparseMatrix],
    bound: int,
) -> tuple[int, ...]:
    """``dim H_n = dim C_n - rank d_n - rank d_{n+1}`` for ``n <= bound``."""
    ranks = ordered_map(lambda n: rank(boundary_of(n)), range(bound + 2))
    return tuple(
        dim_of(n) - ranks[n] - ranks[n + 1] for n in range(bound + 1)
    )


class HomologyEngine:
    """All homology pipelines, comparisons, and the S/B/I sequence for
    one instance."""

    def __init__(self, datum: CleftDatum):
        self.datum = datum
        self.chain = ChainModel(datum)
        self.harmonic = HarmonicModel(self.chain)
        self.canonical = CanonicalComplex(datum)

    # -- pipeline selectors -------------------------------------------

    def _hh_complex(self, pipeline: str):
        if pipeline == "oracle":
            return self.canonical.dim, self.canonical.boundary
        if pipeline == "hatX":
            return (
                lambda n: self.chain.hat_layout(n).total,
                self.chain.tot_hat_boundary,
            )
        raise ValueError(f"unknown Hochschild pipeline {pipeline!r}")

    def _hc_complex(self, pipeline: str):
        if pipeline == "oracle":
            return (
                lambda q: self.canonical.bc_layout(q).total,
                self.canonical.bc_boundary,
            )
        if pipeline == "mixedBC":
            return (
                lambda q: self.chain.bc_hat_layout(q).total,
                self.chain.tot_bc_hat_boundary,
            )
        if pipeline == "quotient":
            return (
                lambda n: self.chain.xbar_layout(n).total,
                self.chain.tot_xbar_boundary,
            )
        if pipeline == "harmonic":
            return (
                lambda q: self.harmonic.bc_tilde_layout(q).total,
                self.harmonic.tot_bc_tilde_boundary,
            )
        raise ValueError(f"unknown cyclic pipeline {pipeline!r}")

    # -- single-pipeline reports --------------------------------------

    def relative_hh(self, bound: int, pipeline: str = "oracle") -> HomologyReport:
        dim_of, boundary_of = self._hh_complex(pipeline)
        dims = _dims_by_rank(dim_of, boundary_of, bound)
        return HomologyReport(self.datum.name, "hh", pipeline, bound, dims)

    def relative_hc(self, bound: int, pipeline: str = "oracle") -> HomologyReport:
        dim_of, boundary_of = self._hc_complex(pipeline)
        dims = _dims_by_rank(dim_of, boundary_of, bound)
        return HomologyReport(self.datum.name, "hc", pipeline, bound, dims)

    def report(self, kind: str, bound: int, pipeline: str) -> HomologyReport:
        if kind == "hh":
            return self.relative_hh(bound, pipeline)
        if kind == "hc":
            return self.relative_hc(bound, pipeline)
        raise ValueError(f"unknown homology kind {kind!r}")

    # -- cross-pipeline comparison ------------------------------------

    def compare_pipelines(
        self,
        bound: int,
        hh_pipelines: Sequence[str] = HH_PIPELINES,
        hc_pipelines: Sequence[str] = HC_PIPELINES,
    ) -> ComparisonReport:
        jobs = [("hh", p) for p in hh_pipelines] + [
            ("hc", p) for p in hc_pipelines
        ]
        reports = ordered_map(
            lambda job: self.report(job[0], bound, job[1]), jobs
        )
        return ComparisonReport(self.datum.name, bound, tuple(reports))

    def require_agreement(
        self,
        bound: int,
        hh_pipelines: Sequence[str] = HH_PIPELINES,
        hc_pipelines: Sequence[str] = HC_PIPELINES,
    ) -> ComparisonReport:
        comparison = self.compare_pipelines(bound, hh_pipelines, hc_pipelines)
        bad = comparison.disagreements()
        if bad:
            lines = "\n".join(
                f"  {kind} at degree {n}: "
                + ", ".join(f"{p}={d}" for p, d in sorted(dims.items()))
                for kind, n, dims in bad
            )
            raise PipelineDisagreement(
                f"pipelines disagree on {self.datum.name!r}:\n{lines}"
            )
        return comparison

    # -- the S/B/I long exact sequence --------------------------------

    def _tilde_to_xbar(self, n: int) -> SparseMatrix:
        """First-component projection, inducing I on homology."""
        har = self.harmonic

        def blocks(label):
            _, v, w = label
            dims = har.tilde_dims(v, w)
            pick = SparseMatrix.block(
                [dims[0]], dims, {(0, 0): SparseMatrix.identity(dims[0])}
            )
            return [(("xbar", v, w), pick)]

        return assemble(har.tilde_layout(n), self.chain.xbar_layout(n), blocks)

    def _xbar_into_tilde(self, m: int) -> SparseMatrix:
        """Second-component inclusion ``y -> (0, y)``, inducing B."""
        har = self.harmonic

        def blocks(label):
            _, v, w = label
            dims = har.tilde_dims(v, w + 1)
            into = SparseMatrix.block(
                dims, [dims[1]], {(1, 0): SparseMatrix.identity(dims[1])}
            )
            return [(("tilde", v, w + 1), into)]

        return assemble(self.chain.xbar_layout(m), har.tilde_layout(m + 1), blocks)

    def _xi_total(self, n: int) -> SparseMatrix:
        """Blockwise double contraction on the quotient total; its
        negative induces the periodicity map S."""

        def blocks(label):
            _, v, w = label
            return [(("xbar", v, w - 2), self.harmonic.xi_bar(v, w))]

        return assemble(
            self.chain.xbar_layout(n), self.chain.xbar_layout(n - 2), blocks
        )

    def sbi_report(self, bound: int) -> SbiReport:
        """Chain-level S, B, I and exactness of the long sequence.

        Periodicity S is induced by the negated double contraction,
        B by the second-component inclusion, I by the first-component
        projection; homology spaces carry explicit representative
        bases, so the induced maps are honest matrices and exactness
        at a slot is ``composite = 0`` plus additivity of ranks.
        """
        chain, har = self.chain, self.harmonic
        hc_basis = {
            n: HomologyBasis(
                chain.tot_xbar_boundary(n), chain.tot_xbar_boundary(n + 1)
            )
            for n in range(bound + 1)
        }
        hh_basis = {
            n: HomologyBasis(
                har.tot_tilde_boundary(n), har.tot_tilde_boundary(n + 1)
            )
            for n in range(bound + 1)
        }
        s_map = {
            n: hc_basis[n].induced_matrix(-self._xi_total(n), hc_basis[n - 2])
            for n in range(2, bound + 1)
        }
        i_map = {
            n: hh_basis[n].induced_matrix(self._tilde_to_xbar(n), hc_basis[n])
            for n in range(bound + 1)
        }
        b_map = {
            m: hc_basis[m].induced_matrix(self._xbar_into_tilde(m), hh_basis[m + 1])
            for m in range(bound)
        }

        def rank_of(table: dict, key) -> int:
            return rank(table[key]) if key in table else 0

        slots: list[SbiSlot] = []
        for n in range(bound + 1):
            composite = (
                (i_map[n] * b_map[n - 1]).is_zero() if n - 1 in b_map else True
            )
            slots.append(
                SbiSlot(
                    "HH", n, hh_basis[n].dim, "B", "I",
                    rank_of(b_map, n - 1), rank(i_map[n]), composite,
                )
            )
            composite = (
                (s_map[n] * i_map[n]).is_zero() if n in s_map else True
            )
            slots.append(
                SbiSlot(
                    "HC", n, hc_basis[n].dim, "I", "S",
                    rank(i_map[n]), rank_of(s_map, n), composite,
                )
            )
            if n + 2 in s_map and n in b_map:
                composite = (b_map[n] * s_map[n + 2]).is_zero()
                slots.append(
                    SbiSlot(
                        "HC", n, hc_basis[n].dim, "S", "B",
                        rank(s_map[n + 2]), rank(b_map[n]), composite,
                    )
                )

        report = SbiReport(
            self.datum.name,
            bound,
            tuple(hh_basis[n].dim for n in range(bound + 1)),
            tuple(hc_basis[n].dim for n in range(bound + 1)),
            tuple(slots),
        )
        cross = self.relative_hh(bound, "hatX").dims
        if cross != report.hh_dims:
            raise PipelineDisagreement(
                f"two-term description homology {report.hh_dims} differs "
                f"from the Hochschild pipeline {cross} on {self.datum.name!r}"
            )
        return report

    # -- graded instances ----------------------------------------------

    def _x_weights(self, v: int, w: int) -> list[int]:
        basis = self.chain.x_basis(v, w)
        if basis.weights is not None:
            return list(basis.weights)
        return [word_weight(self.datum, word) for word in basis.words]

    def _xbar_weights(self, v: int, w: int) -> list[int]:
        """Weights of the quotient basis, read off its representatives.

        Each quotient coordinate is a distinguished word coordinate,
        and the rotation mixes only words of equal weight, so the
        grading descends to the quotient basis.
        """
        word_weights = self._x_weights(v, w)
        presentation = self.chain.x_quotient(v, w)
        return [word_weights[c] for c in presentation.complement_coords]

    def _xbar_total_weights(self, n: int) -> list[int]:
        out: list[int] = []
        for v, w in bidegrees(n):
            out.extend(self._xbar_weights(v, w))
        return out

    def graded_hc(self, bound: int) -> HomologyReport:
        """Quotient-pipeline cyclic homology, weight by weight.

        Every boundary entry must stay inside one weight (checked while
        slicing); the per-weight dimensions must sum to the ungraded
        total in every degree.
        """
        weights = {
            n: self._xbar_total_weights(n) for n in range(bound + 2)
        }
        present = sorted({lam for vec in weights.values() for lam in vec})
        total = self.relative_hc(bound, "quotient")

        def sliced(n: int, lam: int) -> SparseMatrix:
            matrix = self.chain.tot_xbar_boundary(n)
            rows = [i for i, x in enumerate(weights.get(n - 1, [])) if x == lam]
            cols = [j for j, x in enumerate(weights[n]) if x == lam]
            row_at = {r: i for i, r in enumerate(rows)}
            entries = []
            for new_col, j in enumerate(cols):
                for r, value in matrix.column(j).entries.items():
                    if r not in row_at:
                        raise IdentityViolation(
                            f"boundary of {self.datum.name!r} leaves weight "
                            f"{lam} at degree {n}: entry at row {r}"
                        )
                    entries.append((row_at[r], new_col, value))
            return SparseMatrix.from_entries(len(rows), len(cols), entries)

        per_weight = []
        for lam in present:
            ranks = [rank(sliced(n, lam)) for n in range(bound + 2)]
            dims = tuple(
                sum(1 for x in weights[n] if x == lam) - ranks[n] - ranks[n + 1]
                for n in range(bound + 1)
            )
            per_weight.append((lam, dims))
        for n in range(bound + 1):
            if sum(dims[n] for _, dims in per_weight) != total.dims[n]:
                raise IdentityViolation(
                    f"per-weight dimensions of {self.datum.name!r} do not "
                    f"sum to the total at degree {n}"
                )
        return HomologyReport(
            self.datum.name, "hc", "quotient", bound, total.dims,
            tuple(per_weight),
        )


# ----------------------------------------------------------------------
# weight block-diagonality
# ----------------------------------------------------------------------


def verify_weight_blocks(
    engine: HomologyEngine, bound: int
) -> list[Check]:
    """Every operator matrix must be block-diagonal over weights.

    Words are graded by the sum of their letters' weights, products
    preserve that grading, and rotations only permute letters — so
    each operator may only connect equal-weight basis vectors.  Checked
    entry by entry for the word-model generators, the quotient maps,
    and the harmonic operators.
    """
    chain, har = engine.chain, engine.harmonic
    failures: list[Check] = []

    def x_w(v, w):
        return engine._x_weights(v, w)

    def xbar_w(v, w):
        return engine._xbar_weights(v, w)

    def ddot_w(v, w):
        return x_w(v, w) + x_w(v, w - 1)

    def tilde_w(v, w):
        return xbar_w(v, w) + xbar_w(v, w - 1)

    table = [
        ("b", chain.b, lambda v, w: x_w(v - 1, w), x_w),
        ("d", chain.d, lambda v, w: x_w(v, w - 1), x_w),
        ("d-prime", chain.d_prime, lambda v, w: x_w(v, w - 1), x_w),
        ("rotation", chain.t, x_w, x_w),
        ("norm", chain.norm, x_w, x_w),
        ("extra-degeneracy", chain.sigma_prime, x_w, x_w),
        ("quotient-projection", chain.q_mat, xbar_w, x_w),
        ("quotient-section", chain.s_mat, x_w, xbar_w),
        ("quotient-b", chain.b_bar, lambda v, w: xbar_w(v - 1, w), xbar_w),
        ("quotient-d", chain.d_bar, lambda v, w: xbar_w(v, w - 1), xbar_w),
        ("karoubi", har.karoubi, ddot_w, ddot_w),
        ("projection", har.projection, ddot_w, ddot_w),
        ("green", har.green, ddot_w, ddot_w),
        ("double-contraction", har.xi_bar, lambda v, w: xbar_w(v, w - 2), xbar_w),
        ("splitting", har.upsilon, lambda v, w: x_w(v, w - 1), x_w),
        ("description", har.psi, ddot_w, tilde_w),
        ("projection-transport", har.p_tilde, tilde_w, ddot_w),
    ]
    for n in range(bound + 1):
        for v, w in bidegrees(n):
            site = f"{engine.datum.name} (v={v}, w={w})"
            for name, build, target_of, source_of in table:
                matrix = build(v, w)
                src = source_of(v, w)
                tgt = target_of(v, w)
                pure = all(
                    tgt[r] == src[j]
                    for j in range(matrix.cols)
                    for r in matrix.column(j).entries
                )
                if not pure:
                    failures.append(
                        Check("weight-blocks", f"{name} crosses weights", site)
                    )
    return failures


# ----------------------------------------------------------------------
# serialization
# ----------------------------------------------------------------------


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def report_json(report: HomologyReport) -> str:
    obj = {
        "instance": report.instance,
        "kind": report.kind,
        "pipeline": report.pipeline,
        "bound": report.bound,
        "dims": list(report.dims),
    }
    if report.per_weight is not None:
        obj["per_weight"] = [
            [lam, list(dims)] for lam, dims in report.per_weight
        ]
    return _dump(obj)


def report_csv(report: HomologyReport) -> str:
    lines = ["instance,kind,degree,pipeline,dim,weight"]
    for n, dim in enumerate(report.dims):
        lines.append(
            f"{report.instance},{report.kind},{n},{report.pipeline},{dim},"
        )
    if report.per_weight is not None:
        for lam, dims in report.per_weight:
            for n, dim in enumerate(dims):
                lines.append(
                    f"{report.instance},{report.kind},{n},"
                    f"{report.pipeline},{dim},{lam}"
                )
    return "\n".join(lines) + "\n"


def comparison_json(comparison: ComparisonReport) -> str:
    obj = {
        "instance": comparison.instance,
        "bound": comparison.bound,
        "pipelines": {},
        "agree": {},
        "all_agree": comparison.all_agree,
    }
    for report in comparison.reports:
        obj["pipelines"].setdefault(report.kind, {})[report.pipeline] = list(
            report.dims
        )
    for kind in sorted({r.kind for r in comparison.reports}):
        obj["agree"][kind] = comparison.agreement(kind)
    return _dump(obj)


def comparison_csv(comparison: ComparisonReport) -> str:
    lines = ["instance,kind,degree,pipeline,dim,agree"]
    for report in comparison.reports:
        flags = comparison.agreement(report.kind)
        for n, dim in enumerate(report.dims):
            lines.append(
                f"{report.instance},{report.kind},{n},{report.pipeline},"
                f"{dim},{str(flags[n]).lower()}"
            )
    return "\n".join(lines) + "\n"


def sbi_json(report: SbiReport) -> str:
    obj = {
        "instance": report.instance,
        "bound": report.bound,
        "hh_dims": list(report.hh_dims),
        "hc_dims": list(report.hc_dims),
        "slots": [
            {
                "group": s.group,
                "degree": s.degree,
                "dim": s.dim,
                "incoming": s.incoming,
                "outgoing": s.outgoing,
                "rank_in": s.rank_in,
                "rank_out": s.rank_out,
                "composite_is_zero": s.composite_is_zero,
                "exact": s.exact,
            }
            for s in report.slots
        ],
        "exact": report.ok,
    }
    return _dump(obj)


def sbi_csv(report: SbiReport) -> str:
    lines = ["instance,group,degree,dim,incoming,outgoing,rank_in,rank_out,exact"]
    for s in report.slots:
        lines.append(
            f"{report.instance},{s.group},{s.degree},{s.dim},{s.incoming},"
            f"{s.outgoing},{s.rank_in},{s.rank_out},{str(s.exact).lower()}"
        )
    return "\n".join(lines) + "\n"
