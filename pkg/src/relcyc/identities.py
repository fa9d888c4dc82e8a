"""The complete identity battery for one instance, in a single call.

Every chain-level law the package relies on is re-verified here as an
exact matrix identity over the rationals: the double-mixed axioms of
all four structured complexes, the face/rotation sign ledger, the
quotient and comparison maps, the harmonic operator calculus, the
closed-form retractions, and the perturbation-lemma transfers that must
land exactly on those closed forms.  On top of the exhaustive matrix
checks the suite can spot-check core identities on pseudo-random
rational vectors, which scales to bidegrees where full matrix products
are too large to enumerate.

The result is a :class:`SuiteReport`: family-by-family failure counts
plus every failed :class:`~relcyc.complexes.Check`, so a caller can
either render a verdict table or raise on the first red family.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .algebra import CleftDatum
from .complexes import (
    ChainModel,
    Check,
    bidegrees,
    sites,
    verify_anticommutation,
    verify_canonical_split,
    verify_comparison_maps,
    verify_double_mixed,
    verify_quotient,
    verify_rotation_algebra,
    verify_total_agreement,
)
from .harmonic import (
    HarmonicModel,
    quotient_bc_perturbation,
    quotient_bc_retract,
    verify_connes_property,
    verify_de_rham_karoubi,
    verify_description,
    verify_green,
    verify_projection,
    verify_quotient_retract,
    verify_splitting,
)
from .linalg import SparseMatrix, SparseVector
from .parallel import ordered_map
from .perturbation import (
    column_perturbation,
    column_retract,
    perturb,
    verify_retract,
)

__all__ = [
    "SuiteReport",
    "SuiteViolation",
    "run_identity_suite",
    "suite_families",
    "verify_column_transfer",
    "verify_bicomplex_transfer",
    "verify_samples",
]


class SuiteViolation(Exception):
    """The identity suite contains at least one failed check."""


@dataclass(frozen=True)
class SuiteReport:
    """Family-by-family verdicts for one instance's identity run."""

    instance: str
    bound: int
    counts: tuple[tuple[str, int], ...]
    failures: tuple[Check, ...]

    @property
    def ok(self) -> bool:
        return not self.failures

    def lines(self) -> list[str]:
        width = max(len(name) for name, _ in self.counts)
        out = []
        for name, bad in self.counts:
            verdict = "ok" if bad == 0 else f"FAILED ({bad})"
            out.append(f"{name:<{width}}  {verdict}")
        return out

    def require(self) -> None:
        if self.failures:
            shown = "\n".join(str(f) for f in self.failures[:20])
            more = len(self.failures) - 20
            if more > 0:
                shown += f"\n... and {more} more"
            raise SuiteViolation(
                f"{len(self.failures)} identity check(s) failed on "
                f"{self.instance!r}:\n{shown}"
            )


# ----------------------------------------------------------------------
# the transfer checks (closed forms against the perturbation lemma)
# ----------------------------------------------------------------------


def _cmp(failures: list[Check], group: str, name: str, site: str,
         lhs: SparseMatrix, rhs: SparseMatrix) -> None:
    if lhs != rhs:
        failures.append(Check(group, name, site))


def verify_column_transfer(model: ChainModel, top: int) -> list[Check]:
    """The perturbation lemma applied to the columnwise retract of the
    split canonical complex must reproduce, matrix for matrix, the
    closed-form hat-complex data: boundary, inclusion, projection, and
    contracting homotopy."""
    failures = verify_retract(column_retract(model, top), model.datum.name)
    g = "column-transfer"
    out = perturb(column_retract(model, top), column_perturbation(model, top))

    def site(n: int) -> str:
        return f"{model.datum.name} degree {n}"

    for n in range(1, out.top + 1):
        _cmp(failures, g, "transferred boundary = hat total", site(n),
             out.d_small[n], model.tot_hat_boundary(n))
        _cmp(failures, g, "perturbed big boundary = split total", site(n),
             out.d_big[n], model.tot_frak_boundary(n))
    for n in range(out.top + 1):
        _cmp(failures, g, "transferred inclusion = closed form", site(n),
             out.i[n], model.tot_vartheta(n))
        _cmp(failures, g, "transferred projection = closed form", site(n),
             out.p[n], model.tot_theta(n))
    for n in range(out.top):
        _cmp(failures, g, "transferred homotopy = closed form", site(n),
             out.h[n], model.tot_eps(n))
    return failures


def verify_bicomplex_transfer(har: HarmonicModel, top: int) -> list[Check]:
    """The perturbation lemma applied to the column-shift retract of the
    pair-model bicomplex, fed the connecting blocks, must reproduce the
    closed-form inclusion, projection, and homotopy with the quotient
    boundary unchanged."""
    failures = verify_retract(quotient_bc_retract(har, top), har.datum.name)
    g = "bicomplex-transfer"
    out = perturb(quotient_bc_retract(har, top),
                  quotient_bc_perturbation(har, top))

    def site(n: int) -> str:
        return f"{har.datum.name} degree {n}"

    for n in range(out.top + 1):
        _cmp(failures, g, "quotient boundary unchanged", site(n),
             out.d_small[n], har.chain.tot_xbar_boundary(n))
        _cmp(failures, g, "perturbed boundary = connected bicomplex", site(n),
             out.d_big[n], har.tot_bc_tilde_boundary(n, with_xi=True))
        _cmp(failures, g, "transferred inclusion = closed form", site(n),
             out.i[n], har.gamma_matrix(n))
        _cmp(failures, g, "transferred projection = closed form", site(n),
             out.p[n], har.pi_matrix(n))
    for n in range(out.top):
        _cmp(failures, g, "transferred homotopy = closed form", site(n),
             out.h[n], har.xi_homotopy_matrix(n))
    return failures


# ----------------------------------------------------------------------
# randomized spot checks
# ----------------------------------------------------------------------


def _random_vector(rng: random.Random, dim: int) -> SparseVector:
    entries = {}
    for i in range(dim):
        num = rng.randint(-9, 9)
        if num:
            entries[i] = Fraction(num, rng.randint(1, 9))
    return SparseVector(dim, entries)


def verify_samples(model: ChainModel, har: HarmonicModel, bound: int,
                   samples: int, seed: int) -> list[Check]:
    """Core identities evaluated on pseudo-random rational vectors.

    Deterministic for a fixed seed.  Each sample draws one bidegree and
    one vector and pushes it through a battery of identities that the
    exhaustive families also cover — the point is an independent probe
    whose cost stays linear in the vector's support.
    """
    failures: list[Check] = []
    g = "samples"
    rng = random.Random(seed)
    where = [(v, w) for v, w in sites(bound) if model.x_dim(v, w) > 0]
    if not where:
        return failures
    for k in range(samples):
        v, w = where[rng.randrange(len(where))]
        site = f"{model.datum.name} sample {k} at (v={v}, w={w})"
        x = _random_vector(rng, model.x_dim(v, w))

        def check(name: str, vec: SparseVector) -> None:
            if not vec.is_zero():
                failures.append(Check(g, name, site))

        check("b b = 0", model.b(v - 1, w) * (model.b(v, w) * x))
        check("d d = 0", model.d(v, w - 1) * (model.d(v, w) * x))
        check("d b + b d = 0",
              model.d(v - 1, w) * (model.b(v, w) * x)
              + model.b(v, w - 1) * (model.d(v, w) * x))
        check("t^(w+1) = 1", model.t_power(v, w, w + 1) * x - x)
        check("(1 - t) N = 0",
              model.one_minus_t(v, w) * (model.norm(v, w) * x))
        check("q t = q", model.q_mat(v, w) * (model.t(v, w) * x)
              - model.q_mat(v, w) * x)
        pair = SparseVector(model.x_dim(v, w) + model.x_dim(v, w - 1))
        pair.entries = dict(x.entries)
        kappa = har.karoubi(v, w)
        proj = har.projection(v, w)
        hx = proj * pair
        check("P^2 = P", proj * hx - hx)
        check("P kappa = kappa P", proj * (kappa * pair) - kappa * hx)
        check("(kappa - 1)^2 P = 0",
              kappa * (kappa * hx) - (kappa * hx).scaled(2) + hx)
        check("G (1 - kappa) = 1 - P",
              har.green(v, w) * (pair - kappa * pair) - (pair - hx))
    return failures


# ----------------------------------------------------------------------
# the suite
# ----------------------------------------------------------------------


def _tilde_maps(har: HarmonicModel):
    return [
        ("tilde_b", har.tilde_b, (-1, 0)),
        ("tilde_d+xi",
         lambda v, w: har.tilde_d(v, w) + har.tilde_xi(v, w), (0, -1)),
        ("tilde_B", har.tilde_connes, (0, 1)),
    ]


def suite_families(model: ChainModel, har: HarmonicModel, bound: int):
    """The named check families, each a zero-argument callable returning
    its failures.  Order is stable; reports follow it."""
    frak = [("frak_b", model.frak_b, (-1, 0)),
            ("frak_d", model.frak_d, (0, -1)),
            ("frak_B", model.frak_B, (1, 0))]
    hat = [("hat_b", model.hat_b, (-1, 0)),
           ("hat_d", model.hat_d, (0, -1)),
           ("hat_B", model.hat_B, (1, 0))]
    ddot = [("ddot_b", model.ddot_b, (-1, 0)),
            ("ddot_d", model.ddot_d, (0, -1)),
            ("ddot_B", model.ddot_B, (0, 1))]
    return [
        ("double-mixed:frak",
         lambda: verify_double_mixed(model, "frak", bound, frak)),
        ("double-mixed:hat",
         lambda: verify_double_mixed(model, "hat", bound, hat)),
        ("double-mixed:ddot",
         lambda: verify_double_mixed(model, "ddot", bound, ddot)),
        ("double-mixed:tilde",
         lambda: verify_double_mixed(har, "tilde", bound, _tilde_maps(har))),
        ("face-ledger", lambda: verify_anticommutation(model, bound)),
        ("rotation", lambda: verify_rotation_algebra(model, bound)),
        ("cyclic-quotient", lambda: verify_quotient(model, bound)),
        ("comparison", lambda: verify_comparison_maps(model, bound)),
        ("canonical-split", lambda: verify_canonical_split(model, bound)),
        ("total-agreement", lambda: verify_total_agreement(model, bound)),
        ("karoubi", lambda: verify_de_rham_karoubi(har, bound)),
        ("projection", lambda: verify_projection(har, bound)),
        ("green", lambda: verify_green(har, bound)),
        ("splitting", lambda: verify_splitting(har, bound)),
        ("description", lambda: verify_description(har, bound)),
        ("connes-property", lambda: verify_connes_property(har, bound)),
        ("quotient-retract", lambda: verify_quotient_retract(har, bound)),
        ("column-transfer", lambda: verify_column_transfer(model, bound)),
        ("bicomplex-transfer", lambda: verify_bicomplex_transfer(har, bound)),
    ]


def run_identity_suite(datum: CleftDatum, bound: int,
                       samples: int = 0, seed: int = 0) -> SuiteReport:
    """Run every family (plus optional randomized samples) and report."""
    model = ChainModel(datum)
    har = HarmonicModel(model)
    families = suite_families(model, har, bound)
    if samples > 0:
        families.append(
            ("samples",
             lambda: verify_samples(model, har, bound, samples, seed)))
    results = ordered_map(lambda fam: fam[1](), families)
    counts = tuple(
        (name, len(bad)) for (name, _), bad in zip(families, results)
    )
    failures = tuple(f for bad in results for f in bad)
    return SuiteReport(datum.name, bound, counts, failures)
