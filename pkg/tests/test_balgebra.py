import pytest
from hypothesis import given
from hypothesis import strategies as st

from rsquantum.balgebra import (
    E,
    F,
    BElement,
    adjoint,
    adjoint_serre,
    antipode,
    bracket,
    coproduct,
    counit,
    multiply,
)
from rsquantum.coeffs import ONE, R, S, ZERO
from rsquantum.rootsystem import build, unit

RD = build("A", 3)
sides = st.sampled_from([E, F])
letters = st.lists(st.integers(1, 3), min_size=0, max_size=3).map(tuple)
tori = st.tuples(*[st.integers(-1, 1)] * 3)


def elt(side, w, t=None):
    return BElement.word(RD, side, w, torus=t)


@given(sides, letters, tori)
def test_coassociativity(side, w, t):
    x = elt(side, w, t)
    d = coproduct(x)
    left = d.apply(0, coproduct)
    right = d.apply(1, coproduct)
    assert left == right


@given(sides, letters, tori, letters, tori)
def test_coproduct_is_multiplicative(side, w1, t1, w2, t2):
    x, y = elt(side, w1, t1), elt(side, w2, t2)
    assert coproduct(multiply(x, y)) == coproduct(x) * coproduct(y)


@given(sides, letters, tori)
def test_counit_axioms(side, w, t):
    x = elt(side, w, t)
    d = coproduct(x)
    via_left = d.contract(lambda fs: fs[1].scale(counit(fs[0])))
    via_right = d.contract(lambda fs: fs[0].scale(counit(fs[1])))
    assert via_left == x
    assert via_right == x


@given(sides, letters, tori)
def test_antipode_axioms(side, w, t):
    x = elt(side, w, t)
    d = coproduct(x)
    one = BElement.one(RD, side).scale(counit(x))
    assert d.contract(lambda fs: multiply(antipode(fs[0]), fs[1])) == one
    assert d.contract(lambda fs: multiply(fs[0], antipode(fs[1]))) == one


@given(sides, letters, tori, letters, tori)
def test_antipode_reverses_products(side, w1, t1, w2, t2):
    x, y = elt(side, w1, t1), elt(side, w2, t2)
    assert antipode(multiply(x, y)) == multiply(antipode(y), antipode(x))


def test_antipode_generators():
    e6 = build("E", 6)
    inv = tuple(-x for x in unit(6, 1))
    se = antipode(BElement.gen(e6, E, 1))
    # -w_1^{-1} e_1 in right-torus form: w_t e_j = <w'_j, w_t> e_j w_t
    assert se == BElement.word(e6, E, (1,), -e6.torus_pair(unit(6, 1), inv), inv)
    assert antipode(BElement.gen(e6, F, 1)) == BElement.word(e6, F, (1,), -ONE, inv)
    assert antipode(BElement.one(e6, E)) == BElement.one(e6, E)


def test_torus_commutation():
    e6 = build("E", 6)
    w1 = BElement.torus(e6, E, unit(6, 1))
    e3 = BElement.gen(e6, E, 3)
    # w_1 e_3 w_1^{-1} = <w'_3, w_1> e_3 = s e_3
    lhs = multiply(multiply(w1, e3), BElement.torus(e6, E, tuple(-x for x in unit(6, 1))))
    assert lhs == e3.scale(S)


def W(rd, side, w, c=ONE):
    return BElement.word(rd, side, w, c)


@pytest.mark.parametrize("i,j", [(1, 3), (3, 1), (2, 4), (4, 2), (4, 5), (5, 4), (5, 6), (6, 5), (3, 4), (4, 3)])
def test_adjoint_serre_reproduces_relations(i, j):
    rd = build("E", 6)
    lo = i < j
    a, b = (R + S, R * S) if lo else (R.inverse() + S.inverse(), (R * S).inverse())
    e_ref = W(rd, E, (i, i, j)) - W(rd, E, (i, j, i), a) + W(rd, E, (j, i, i), b)
    f_ref = W(rd, F, (j, i, i)) - W(rd, F, (i, j, i), a) + W(rd, F, (i, i, j), b)
    assert adjoint_serre(rd, i, j, E) == e_ref
    assert adjoint_serre(rd, i, j, F) == f_ref


def test_adjoint_serre_orthogonal():
    rd = build("E", 6)
    assert adjoint_serre(rd, 1, 2) == W(rd, E, (1, 2)) - W(rd, E, (2, 1))
    with pytest.raises(ValueError):
        adjoint_serre(rd, 1, 1)


def test_adjoint_is_action():
    rd = RD
    a, b = BElement.gen(rd, E, 1), BElement.gen(rd, E, 2)
    x = BElement.gen(rd, E, 3)
    assert adjoint(multiply(a, b), x) == adjoint(a, adjoint(b, x))


def test_bracket_examples():
    e6 = build("E", 6)
    e1, e3, e2 = (BElement.gen(e6, E, i) for i in (1, 3, 2))
    assert bracket(e1, e3) == W(e6, E, (1, 3)) - W(e6, E, (3, 1), S)
    assert bracket(e1, e2) == W(e6, E, (1, 2)) - W(e6, E, (2, 1))
    assert bracket(e1, e1) == W(e6, E, (1, 1), ONE - R / S)
    f1, f3 = BElement.gen(e6, F, 1), BElement.gen(e6, F, 3)
    assert bracket(f1, f3) == W(e6, F, (3, 1)) - W(e6, F, (1, 3), R)


def test_inhomogeneous_weight_raises():
    x = W(RD, E, (1,)) + W(RD, E, (2,))
    with pytest.raises(ValueError):
        x.weight()
    with pytest.raises(ValueError):
        W(RD, E, (1,)) + W(RD, F, (1,))


def test_counit_values():
    assert counit(BElement.gen(RD, E, 1)) == ZERO
    assert counit(BElement.torus(RD, E, (1, 0, -1))) == ONE
