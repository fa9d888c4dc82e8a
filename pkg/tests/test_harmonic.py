"""Tests for the harmonic decomposition of the doubled complex.

Hand-computed values on the smallest instances are frozen first; the
parametrized identity suites then prove the operator laws exactly on
full bases, and the perturbation engine is checked to reproduce the
closed-form retraction of the cyclic bicomplex onto the quotient total
complex.
"""

from fractions import Fraction

import pytest

from relcyc.algebra import load_datum
from relcyc.complexes import ChainModel
from relcyc.harmonic import (
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
from relcyc.linalg import SparseMatrix, SparseVector, rank
from relcyc.perturbation import perturb, verify_retract

F = Fraction


@pytest.fixture(scope="module")
def harmonics():
    return {name: HarmonicModel(ChainModel(load_datum(name)))
            for name in ("dn", "t", "k2", "tp3", "tp5")}


def unit(dim: int, pos: int, value=F(1)) -> SparseVector:
    vec = SparseVector(dim)
    vec.entries = {pos: value}
    return vec


def pair_vector(har, v, w, first=None, second=None) -> SparseVector:
    """Assemble an element of the doubled component from dicts mapping
    words to coefficients on each slot."""
    chain = har.chain
    head = chain.x_basis(v, w)
    tail = chain.x_basis(v, w - 1)
    vec = SparseVector(har.ddot_dim(v, w))
    for word, coeff in (first or {}).items():
        vec.entries[head.index[word]] = coeff
    for word, coeff in (second or {}).items():
        vec.entries[head.dim + tail.index[word]] = coeff
    return vec


# ----------------------------------------------------------------------
# frozen example values
# ----------------------------------------------------------------------


def test_tp3_karoubi_rotates_and_contracts(harmonics):
    """On the pair (x (x) x, 0) the Karoubi operator rotates the first
    slot (picking up the odd-degree sign) and drops the wrap
    contraction x nabla x = y into the second slot."""
    har = harmonics["tp3"]
    x_sq = (("M", 0), ("M", 0))
    image = har.karoubi(0, 1) * pair_vector(har, 0, 1, first={x_sq: F(1)})
    expected = pair_vector(har, 0, 1, first={x_sq: F(-1)},
                           second={(("M", 1),): F(1)})
    assert image == expected


def test_tp3_projection_averages_the_second_slot(harmonics):
    """P(0, y) = (0, N y)/w: on (0, y (x) x) at row two the output is the
    signed half-sum of the two rotations."""
    har = harmonics["tp3"]
    y_x = (("M", 1), ("M", 0))
    x_y = (("M", 0), ("M", 1))
    image = har.projection(0, 2) * pair_vector(har, 0, 2, second={y_x: F(1)})
    expected = pair_vector(har, 0, 2,
                           second={y_x: F(1, 2), x_y: F(-1, 2)})
    assert image == expected


def test_dn_projection_kills_odd_orbit(harmonics):
    """On the dual numbers the rotation of eps (x) eps is -1, so its norm
    vanishes and the pair (0, eps (x) eps) has no harmonic part."""
    har = harmonics["dn"]
    eps2 = (("M", 0), ("M", 0))
    image = har.projection(0, 2) * pair_vector(har, 0, 2, second={eps2: F(1)})
    assert image.is_zero()


def test_projection_is_identity_on_the_bottom_row(harmonics):
    """Row zero has trivial rotation and no second slot, so P = 1 and
    the Green operator vanishes."""
    for name in ("t", "tp3"):
        har = harmonics[name]
        for v in range(3):
            dim = har.ddot_dim(v, 0)
            assert har.projection(v, 0) == SparseMatrix.identity(dim)
            assert har.green(v, 0).is_zero()


def test_tp5_xi_bar_on_the_cube(harmonics):
    """The connecting operator sends the class of x (x) x (x) x to
    +1/2 times the class of x^3: the averaged composite walks the orbit
    sum (3 terms) through the half-weight homotopy at width one and the
    two inner contractions, each landing on x^3."""
    har = harmonics["tp5"]
    chain = har.chain
    cube = (("M", 0),) * 3
    cls = chain.q_mat(0, 2) * unit(chain.x_dim(0, 2),
                                   chain.x_basis(0, 2).index[cube])
    image = har.xi_bar(0, 2) * cls
    x3 = chain.q_mat(0, 0) * unit(chain.x_dim(0, 0),
                                  chain.x_basis(0, 0).index[(("M", 2),)])
    assert image == x3.scaled(F(1, 2))


def test_tp3_xi_bar_kills_the_cube(harmonics):
    """In the three-step truncation every double contraction of
    x (x) x (x) x passes through x^3 = 0."""
    har = harmonics["tp3"]
    chain = har.chain
    cube = (("M", 0),) * 3
    cls = chain.q_mat(0, 2) * unit(chain.x_dim(0, 2),
                                   chain.x_basis(0, 2).index[cube])
    assert (har.xi_bar(0, 2) * cls).is_zero()


def test_tp5_xi_invariant_on_the_orbit_sum(harmonics):
    """On the orbit sum of the cube the invariant shadow equals three
    times the section of the connecting operator's value, which is
    +3/2 x^3."""
    har = harmonics["tp5"]
    chain = har.chain
    basis = chain.x_basis(0, 2)
    cube_vec = unit(chain.x_dim(0, 2), basis.index[(("M", 0),) * 3])
    orbit = chain.norm(0, 2) * cube_vec
    lhs = har.xi_invariant(0, 2) * orbit
    rhs = (har.nbar(0, 0) * (har.xi_bar(0, 2) * (
        chain.q_mat(0, 2) * cube_vec))).scaled(3)
    assert lhs == rhs
    x3_pos = chain.x_basis(0, 0).index[(("M", 2),)]
    assert lhs.entries == {x3_pos: F(3, 2)}


def test_tp5_upsilon_corrects_the_cube(harmonics):
    """The correction operator is nonzero on the invariant orbit sum of
    the cube — the harmonic lift genuinely bends the second slot."""
    har = harmonics["tp5"]
    chain = har.chain
    cube_vec = unit(chain.x_dim(0, 2),
                    chain.x_basis(0, 2).index[(("M", 0),) * 3])
    assert not (har.upsilon(0, 2) * (chain.norm(0, 2) * cube_vec)).is_zero()


def test_upsilon_vanishes_on_row_one(harmonics):
    for name in ("t", "tp3", "tp5"):
        har = harmonics[name]
        assert har.upsilon(0, 1).is_zero()


def test_tp3_psi_on_a_class(harmonics):
    """Psi([x (x) y], 0) = (N(x (x) y), 0)/2 — the correction vanishes
    at row one, leaving the averaged orbit sum in the first slot."""
    har = harmonics["tp3"]
    chain = har.chain
    basis = chain.x_basis(0, 1)
    x_y = (("M", 0), ("M", 1))
    y_x = (("M", 1), ("M", 0))
    cls = chain.q_mat(0, 1) * unit(chain.x_dim(0, 1), basis.index[x_y])
    tilde_in = SparseVector(har.tilde_dim(0, 1))
    for pos, val in cls.entries.items():
        tilde_in.entries[pos] = val
    image = har.psi(0, 1) * tilde_in
    expected = pair_vector(har, 0, 1,
                           first={x_y: F(1, 2), y_x: F(-1, 2)})
    assert image == expected


def test_tp5_p_tilde_on_the_cube(harmonics):
    """The retraction sends (x (x) x (x) x, 0) to its bare class: the
    second-slot sum has coefficients (2i-2)/12 over the three rotations
    of an invariant word, which telescope to zero."""
    har = harmonics["tp5"]
    chain = har.chain
    cube_vec = unit(chain.x_dim(0, 2),
                    chain.x_basis(0, 2).index[(("M", 0),) * 3])
    image = har.p_tilde(0, 2) * pair_vector(
        har, 0, 2, first={(("M", 0),) * 3: F(1)})
    expected = SparseVector(har.tilde_dim(0, 2))
    for pos, val in (chain.q_mat(0, 2) * cube_vec).entries.items():
        expected.entries[pos] = val
    assert image == expected


def test_p_tilde_second_slot_is_the_scaled_class(harmonics):
    """P-tilde(0, y) = (0, [y]/w) on every second-slot basis vector."""
    har = harmonics["tp3"]
    chain = har.chain
    v, w = 0, 2
    mat = har.p_tilde(v, w)
    head = chain.x_dim(v, w)
    q = chain.q_mat(v, w - 1)
    for j in range(chain.x_dim(v, w - 1)):
        image = mat * unit(har.ddot_dim(v, w), head + j)
        expected = SparseVector(har.tilde_dim(v, w))
        for pos, val in (q * unit(q.cols, j)).entries.items():
            expected.entries[har.chain.xbar_dim(v, w) + pos] = \
                val * F(1, w)
        assert image == expected


def test_de_rham_is_exact(harmonics):
    """The de Rham complex of the doubled tower is acyclic in every
    bidegree: incoming and outgoing ranks fill the whole component."""
    har = harmonics["t"]
    for v in range(4):
        for w in range(4):
            out_rank = rank(har.de_rham(v, w))
            in_rank = rank(har.de_rham(v, w - 1))
            assert out_rank + in_rank == har.ddot_dim(v, w)


# ----------------------------------------------------------------------
# identity suites on full bases
# ----------------------------------------------------------------------

SUITES = [
    verify_de_rham_karoubi,
    verify_projection,
    verify_green,
    verify_splitting,
    verify_description,
    verify_connes_property,
]


@pytest.mark.parametrize("suite", SUITES,
                         ids=lambda fn: fn.__name__.removeprefix("verify_"))
@pytest.mark.parametrize("name,bound", [
    ("dn", 5), ("t", 4), ("k2", 4), ("tp3", 4), ("tp5", 3)])
def test_identity_suites(harmonics, suite, name, bound):
    failures = suite(harmonics[name], bound)
    assert [str(f) for f in failures] == []


# ----------------------------------------------------------------------
# the retraction onto the quotient total complex
# ----------------------------------------------------------------------


@pytest.mark.parametrize("name,top", [("t", 5), ("tp3", 5), ("tp5", 3)])
def test_quotient_bc_retract_is_a_retract(harmonics, name, top):
    sdr = quotient_bc_retract(harmonics[name], top)
    assert [str(f) for f in verify_retract(sdr, instance=name)] == []


@pytest.mark.parametrize("name,top", [("t", 5), ("tp3", 5), ("tp5", 3)])
def test_closed_forms_verify(harmonics, name, top):
    failures = verify_quotient_retract(harmonics[name], top)
    assert [str(f) for f in failures] == []


@pytest.mark.parametrize("name,top", [("t", 5), ("tp3", 5), ("tp5", 3)])
def test_perturbation_reproduces_closed_forms(harmonics, name, top):
    """Feeding the connecting blocks to the perturbation lemma on the
    column-shift retract must land exactly on the closed-form inclusion,
    projection, and homotopy, with the quotient boundary unchanged."""
    har = harmonics[name]
    sdr = quotient_bc_retract(har, top)
    out = perturb(sdr, quotient_bc_perturbation(har, top))
    for n in range(out.top + 1):
        assert out.d_small[n] == har.chain.tot_xbar_boundary(n)
        assert out.d_big[n] == har.tot_bc_tilde_boundary(n, with_xi=True)
        assert out.i[n] == har.gamma_matrix(n)
        assert out.p[n] == har.pi_matrix(n)
    for n in range(out.top):
        assert out.h[n] == har.xi_homotopy_matrix(n)


def test_tp3_inclusion_is_plain_when_xi_vanishes(harmonics):
    """All double contractions of tp3 rows up to degree four vanish, so
    the closed-form inclusion has no higher-column terms there."""
    har = harmonics["tp3"]
    for n in range(3):
        assert har.gamma_matrix(n).nnz() == har.chain.xbar_layout(n).total
