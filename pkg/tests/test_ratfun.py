"""Log forms over rational-function fields: wedge, expansion, Alt."""

import random
from fractions import Fraction

import pytest

from drwkz.ratfun import (
    AtomError,
    CoordForm,
    FormVars,
    LogForm,
    alt_symmetrize,
    atom_t,
    atom_tt,
    atom_tz,
    atom_z,
    atom_zz,
    coord_rank,
    expand_coordinates,
    make_atom,
    wedge,
)


@pytest.fixture(scope="module")
def ctx():
    return FormVars(2, 2, params=("m1", "kappa"))


def dlog(ctx, atom):
    return LogForm.dlog(ctx, atom)


# ---------------------------------------------------------------------------
# atoms
# ---------------------------------------------------------------------------

def test_atom_canonical_orientation():
    a = make_atom([1, -1, 0, 0])
    b = make_atom([-1, 1, 0, 0])
    assert a == b
    c = make_atom([Fraction(1, 2), 0, 0, Fraction(-3, 2)])
    assert c.coeffs == (1, 0, 0, -3) and c.const == 0


def test_atom_with_constant_term():
    a = make_atom([1, 0, 0, 0], -2)
    assert a.const == -2
    b = make_atom([-2, 0, 0, 0], 4)
    assert b == a


def test_degenerate_atom_rejected():
    with pytest.raises(AtomError):
        make_atom([0, 0, 0, 0], 5)


# ---------------------------------------------------------------------------
# wedge
# ---------------------------------------------------------------------------

def test_wedge_square_zero(ctx):
    a = dlog(ctx, atom_tz(ctx, 1, 1))
    assert a.wedge(a).is_formally_zero()


def test_wedge_graded_commutativity(ctx):
    rng = random.Random(2)
    atoms = [atom_tz(ctx, 1, 1), atom_tz(ctx, 2, 1), atom_tt(ctx, 1, 2), atom_zz(ctx, 1, 2)]
    for _ in range(10):
        deg_x, deg_y = rng.choice([(1, 1), (1, 2), (2, 1)])
        x = LogForm.dlog_wedge(ctx, rng.sample(atoms, deg_x), rng.randrange(1, 5))
        y = LogForm.dlog_wedge(ctx, rng.sample(atoms, deg_y), rng.randrange(1, 5))
        sign = (-1) ** (deg_x * deg_y)
        assert (x.wedge(y) - y.wedge(x).scale(sign)).is_zero()


def test_arnold_relation(ctx):
    """dlog x ^ dlog(x-y) - dlog y ^ dlog(x-y) - dlog x ^ dlog y = 0."""
    dx = dlog(ctx, atom_t(ctx, 1))
    dy = dlog(ctx, atom_t(ctx, 2))
    dxy = dlog(ctx, atom_tt(ctx, 1, 2))
    rel = dx.wedge(dxy) - dy.wedge(dxy) - dx.wedge(dy)
    assert not rel.is_formally_zero()  # not free: needs expansion
    assert rel.is_zero()


def test_partial_fraction_identity(ctx):
    """1/(x(x-y)) - 1/(y(x-y)) + 1/(xy) = 0 as rational functions."""
    x = ctx.t(1)
    y = ctx.t(2)
    assert 1 / (x * (x - y)) - 1 / (y * (x - y)) + 1 / (x * y) == 0


# ---------------------------------------------------------------------------
# coordinate expansion
# ---------------------------------------------------------------------------

def test_expand_single_dlog(ctx):
    f = expand_coordinates(dlog(ctx, atom_t(ctx, 1)))
    assert set(f.comps) == {(0,)}
    assert f.comps[(0,)] == 1 / ctx.t(1)


def test_expand_zz(ctx):
    f = expand_coordinates(dlog(ctx, atom_zz(ctx, 1, 2)))
    inv = 1 / (ctx.z(1) - ctx.z(2))
    assert f.comps[(2,)] == inv
    assert f.comps[(3,)] == -inv


def test_triple_wedge_collapses(ctx):
    # only two independent differentials among t1-t2, t1-z1, t2-z1
    w = (
        dlog(ctx, atom_tt(ctx, 1, 2))
        .wedge(dlog(ctx, atom_tz(ctx, 1, 1)))
        .wedge(dlog(ctx, atom_tz(ctx, 2, 1)))
    )
    assert not w.is_formally_zero()
    assert w.is_zero()


def test_pure_dlog_wedges_closed(ctx):
    rng = random.Random(4)
    atoms = [atom_tz(ctx, 1, 1), atom_tz(ctx, 2, 2), atom_tt(ctx, 1, 2), atom_zz(ctx, 1, 2)]
    for _ in range(8):
        k = rng.choice([1, 2])
        w = LogForm.dlog_wedge(ctx, rng.sample(atoms, k))
        assert w.d().is_zero()


def test_d_squared_zero_with_coefficients(ctx):
    f = LogForm(ctx, 1, {(atom_tz(ctx, 1, 1),): ctx.t(1) ** 2 / (ctx.z(2) - 3)})
    df = f.d()
    assert not df.is_zero()
    assert df.d().is_zero()


def test_equality_is_congruence_for_wedge(ctx):
    # two representations of the same 1-form stay equal after wedging
    dx = dlog(ctx, atom_t(ctx, 1))
    dy = dlog(ctx, atom_t(ctx, 2))
    dxy = dlog(ctx, atom_tt(ctx, 1, 2))
    lhs = dx.wedge(dxy) - dy.wedge(dxy)  # equals dx ^ dy
    rhs = dx.wedge(dy)
    assert lhs == rhs
    extra = dlog(ctx, atom_zz(ctx, 1, 2))
    assert lhs.wedge(extra) == rhs.wedge(extra)


# ---------------------------------------------------------------------------
# alternation
# ---------------------------------------------------------------------------

def test_alt_of_symmetric_form_vanishes(ctx):
    w = dlog(ctx, atom_zz(ctx, 1, 2))  # no t dependence: symmetric
    assert alt_symmetrize(w, 2).is_zero()


def test_alt_n1_identity(ctx1=FormVars(1, 1)):
    w = dlog(ctx1, atom_tz(ctx1, 1, 1))
    assert (alt_symmetrize(w, 1) - w).is_zero()


def test_alt_antisymmetric_doubles(ctx):
    w = dlog(ctx, atom_tz(ctx, 1, 1)).wedge(dlog(ctx, atom_tz(ctx, 2, 1)))
    # brute force over both permutations of t1, t2
    swapped = w.permute_t((1, 0))
    expected = w - swapped
    assert (alt_symmetrize(w, 2) - expected).is_zero()
    assert (alt_symmetrize(w, 2) - w.scale(2)).is_zero()


def test_alt_projector_scaling(ctx):
    import math

    w = dlog(ctx, atom_tz(ctx, 1, 1)).wedge(dlog(ctx, atom_tt(ctx, 1, 2)))
    alt1 = alt_symmetrize(w, 2)
    alt2 = alt_symmetrize(alt1, 2)
    assert (alt2 - alt1.scale(math.factorial(2))).is_zero()


def test_alt_permutes_coefficients(ctx):
    coeff = ctx.t(1)
    w = LogForm(ctx, 1, {(atom_tz(ctx, 1, 1),): coeff})
    alt = alt_symmetrize(w, 2)
    manual = w - LogForm(ctx, 1, {(atom_tz(ctx, 2, 1),): ctx.t(2)})
    assert (alt - manual).is_zero()


# ---------------------------------------------------------------------------
# rank helper
# ---------------------------------------------------------------------------

def test_coord_rank(ctx):
    dx = dlog(ctx, atom_t(ctx, 1)).expand_coordinates()
    dy = dlog(ctx, atom_t(ctx, 2)).expand_coordinates()
    both = (dlog(ctx, atom_t(ctx, 1)) + dlog(ctx, atom_t(ctx, 2))).expand_coordinates()
    assert coord_rank([dx, dy]) == 2
    assert coord_rank([dx, dy, both]) == 2
    assert coord_rank([CoordForm.zero(ctx, 1)]) == 0
