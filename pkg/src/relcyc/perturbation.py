"""Homological perturbation over exact arithmetic.

A special deformation retract (SDR) is a pair of nonnegatively graded
chain complexes — a *small* and a *big* side — with a projection ``p``,
an inclusion ``i`` and a contracting homotopy ``h`` satisfying

* ``p i = 1``,
* ``h i = 0``, ``p h = 0``, ``h h = 0``  (side conditions),
* ``i p - 1 = d h + h d``  (homotopy identity),

with ``p`` and ``i`` chain maps.  Given a degree ``-1`` perturbation
``delta`` of the big differential such that ``delta h`` is nilpotent in
each degree, the perturbation lemma transfers the whole SDR along the
series ``A = sum_k (delta h)^k delta``:

* ``d1_small = d_small + p A i``
* ``i1 = i + h A i``
* ``p1 = p + p A h``
* ``h1 = h + h A h``
* ``d1_big = d_big + delta``

Everything here is a finite matrix computation; the geometric series is
summed literally and must terminate, otherwise
:class:`NotLocallyNilpotent` is raised.

Degrees run from 0 to ``top``.  Maps into degree ``-1`` are zero-row
matrices; the homotopy is stored for degrees ``0 .. top-1`` because it
raises degree.  A perturbed SDR is therefore complete only up to
``top - 1``: callers wanting verified identities at degree ``n`` should
build with ``top >= n + 1``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .complexes import Check, ChainModel, assemble
from .linalg import SparseMatrix

__all__ = [
    "NotLocallyNilpotent",
    "DeformationRetract",
    "verify_retract",
    "perturb",
    "column_retract",
    "column_perturbation",
]


class NotLocallyNilpotent(Exception):
    """The perturbation series failed to terminate within the safety bound."""


@dataclass
class DeformationRetract:
    """An SDR with explicit matrices in every stored degree."""

    top: int
    small_dims: dict[int, int]
    big_dims: dict[int, int]
    d_small: dict[int, SparseMatrix]
    d_big: dict[int, SparseMatrix]
    p: dict[int, SparseMatrix]
    i: dict[int, SparseMatrix]
    h: dict[int, SparseMatrix]

    def small_dim(self, n: int) -> int:
        return self.small_dims.get(n, 0)

    def big_dim(self, n: int) -> int:
        return self.big_dims.get(n, 0)


def _zero_like(rows: int, cols: int) -> SparseMatrix:
    return SparseMatrix(rows, cols)


def verify_retract(sdr: DeformationRetract, instance: str = "") -> list[Check]:
    """All SDR identities, exactly, at every degree they are stored.

    The homotopy identity and the side conditions involving ``h`` are
    checked for degrees ``0 .. top-1``; everything else up to ``top``.
    """
    failures: list[Check] = []
    g = "retract"

    def site(n: int) -> str:
        return f"{instance} degree {n}" if instance else f"degree {n}"

    for n in range(sdr.top + 1):
        if (sdr.p[n] * sdr.i[n]) != SparseMatrix.identity(sdr.small_dim(n)):
            failures.append(Check(g, "p i = 1", site(n)))
        if n >= 1:
            if not (sdr.d_small[n - 1] * sdr.d_small[n]).is_zero():
                failures.append(Check(g, "small differential squares to zero",
                                      site(n)))
            if not (sdr.d_big[n - 1] * sdr.d_big[n]).is_zero():
                failures.append(Check(g, "big differential squares to zero",
                                      site(n)))
            if (sdr.d_small[n] * sdr.p[n]) != (sdr.p[n - 1] * sdr.d_big[n]):
                failures.append(Check(g, "p is a chain map", site(n)))
            if (sdr.d_big[n] * sdr.i[n]) != (sdr.i[n - 1] * sdr.d_small[n]):
                failures.append(Check(g, "i is a chain map", site(n)))
    for n in range(sdr.top):
        if not (sdr.h[n] * sdr.i[n]).is_zero():
            failures.append(Check(g, "h i = 0", site(n)))
        if not (sdr.p[n + 1] * sdr.h[n]).is_zero():
            failures.append(Check(g, "p h = 0", site(n)))
        if n + 1 in sdr.h and not (sdr.h[n + 1] * sdr.h[n]).is_zero():
            failures.append(Check(g, "h h = 0", site(n)))
        lhs = sdr.i[n] * sdr.p[n] - SparseMatrix.identity(sdr.big_dim(n))
        rhs = sdr.d_big[n + 1] * sdr.h[n]
        if n >= 1:
            rhs = rhs + sdr.h[n - 1] * sdr.d_big[n]
        if lhs != rhs:
            failures.append(Check(g, "i p - 1 = d h + h d", site(n)))
    return failures


def perturb(
    sdr: DeformationRetract, delta: dict[int, SparseMatrix]
) -> DeformationRetract:
    """Transfer the SDR along the perturbation ``delta`` of the big side.

    ``delta[n]`` maps big degree ``n`` to ``n - 1``; missing degrees are
    zero.  The result is stored for degrees ``0 .. top-1``.  The series
    in each degree must vanish within ``top + 2`` iterations.
    """
    limit = sdr.top + 2

    def delta_at(n: int) -> SparseMatrix:
        mat = delta.get(n)
        if mat is None:
            rows = sdr.big_dim(n - 1)
            return _zero_like(rows, sdr.big_dim(n))
        return mat

    series: dict[int, SparseMatrix] = {}
    for n in range(sdr.top + 1):
        dn = delta_at(n)
        total = dn
        term = dn
        steps = 0
        h_below = sdr.h.get(n - 1)
        while not term.is_zero():
            if h_below is None:
                break
            steps += 1
            if steps > limit:
                raise NotLocallyNilpotent(
                    f"perturbation series did not terminate in degree {n} "
                    f"within {limit} iterations")
            term = dn * (h_below * term)
            total = total + term
        series[n] = total

    new_top = sdr.top - 1
    d_small: dict[int, SparseMatrix] = {}
    d_big: dict[int, SparseMatrix] = {}
    p: dict[int, SparseMatrix] = {}
    i: dict[int, SparseMatrix] = {}
    h: dict[int, SparseMatrix] = {}
    for n in range(new_top + 1):
        a_n = series[n]
        a_next = series[n + 1]
        d_small[n] = sdr.d_small[n] + sdr.p[n - 1] * (a_n * sdr.i[n]) \
            if n >= 1 else sdr.d_small[0]
        d_big[n] = sdr.d_big[n] + delta_at(n) if n >= 1 else sdr.d_big[0]
        i[n] = sdr.i[n] + (sdr.h[n - 1] * (a_n * sdr.i[n]) if n >= 1
                           else _zero_like(sdr.big_dim(n), sdr.small_dim(n)))
        p[n] = sdr.p[n] + sdr.p[n] * (a_next * sdr.h[n])
        if n < new_top:
            h[n] = sdr.h[n] + sdr.h[n] * (a_next * sdr.h[n])
    return DeformationRetract(
        top=new_top,
        small_dims={n: sdr.small_dim(n) for n in range(new_top + 1)},
        big_dims={n: sdr.big_dim(n) for n in range(new_top + 1)},
        d_small=d_small, d_big=d_big, p=p, i=i, h=h,
    )


# ----------------------------------------------------------------------
# the column retract of the split canonical complex
# ----------------------------------------------------------------------


def _tot_wise(model: ChainModel, layout_fn, n_src: int, n_tgt: int, blocks_of):
    return assemble(layout_fn(n_src), layout_fn(n_tgt), blocks_of)


def column_retract(model: ChainModel, top: int) -> DeformationRetract:
    """The columnwise SDR of the split canonical complex onto the hat
    complex: both sides carry only their first (concatenation) boundary,
    so each column is contracted independently by the unit-rotation
    homotopy."""

    def hat_b_blocks(label):
        _, v, w = label
        return [(("hat", v - 1, w), model.hat_b(v, w))]

    def frak_b_blocks(label):
        _, v, w = label
        return [(("frak", v - 1, w), model.frak_b(v, w))]

    d_small = {n: _tot_wise(model, model.hat_layout, n, n - 1, hat_b_blocks)
               for n in range(top + 1)}
    d_big = {n: _tot_wise(model, model.frak_layout, n, n - 1, frak_b_blocks)
             for n in range(top + 1)}
    return DeformationRetract(
        top=top,
        small_dims={n: model.hat_layout(n).total for n in range(top + 1)},
        big_dims={n: model.frak_layout(n).total for n in range(top + 1)},
        d_small=d_small,
        d_big=d_big,
        p={n: model.tot_theta(n) for n in range(top + 1)},
        i={n: model.tot_vartheta(n) for n in range(top + 1)},
        h={n: model.tot_eps(n) for n in range(top)},
    )


def column_perturbation(model: ChainModel, top: int) -> dict[int, SparseMatrix]:
    """The extra-product boundary of the split canonical complex as a
    perturbation of the column retract's big side."""

    def frak_d_blocks(label):
        _, v, w = label
        return [(("frak", v, w - 1), model.frak_d(v, w))]

    return {n: _tot_wise(model, model.frak_layout, n, n - 1, frak_d_blocks)
            for n in range(1, top + 1)}
