from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rsquantum.coeffs import ONE, R, S
from rsquantum.pbw import engine
from rsquantum.rootsystem import build, unit
from rsquantum.verma import (
    GENERIC,
    RMatrix,
    TruncatedVerma,
    act_tensor,
    build_pair,
    f_value,
    generators,
    hat_lambda,
    injectivity_check,
    integer_scalars,
    module_property_check,
    parse_weight,
    rmatrix_check,
    torus_commutation_check,
    yang_baxter_check,
)

A2 = build("A", 2)
P2 = engine(A2)


def test_hat_lambda_simple_root(e6):
    ch = hat_lambda(e6, unit(6, 1))
    assert ch.omega[0] == R / S
    # <w'_1, w_3> is the (1,3) matrix entry r^-1
    assert ch.omega[2] == R.inverse()
    assert ch.omega_p[0] == S / R


def test_hat_lambda_zero(e6):
    ch = hat_lambda(e6, (0,) * 6)
    assert all(x == ONE for x in ch.omega + ch.omega_p)


@given(st.tuples(*[st.integers(-3, 3)] * 6), st.tuples(*[st.integers(-3, 3)] * 6))
def test_hat_lambda_is_multiplicative(a, b):
    rd = build("E", 6)
    ha, hb = hat_lambda(rd, a), hat_lambda(rd, b)
    hab = hat_lambda(rd, tuple(x + y for x, y in zip(a, b)))
    assert hab.omega == [x * y for x, y in zip(ha.omega, hb.omega)]
    assert hab.omega_p == [x * y for x, y in zip(ha.omega_p, hb.omega_p)]


def test_hat_lambda_matches_torus_pair(e6):
    lam = (1, -2, 0, 3, 1, 0)
    ch = hat_lambda(e6, lam)
    for j in range(1, 7):
        assert ch.omega[j - 1] == e6.torus_pair(lam, unit(6, j))
        assert ch.omega_p[j - 1] == e6.torus_pair(unit(6, j), lam).inverse()


def test_injectivity_box(e6):
    rep = injectivity_check(e6, 3)
    assert rep.ok


def test_parse_weight():
    assert parse_weight("generic", 2) == GENERIC
    assert parse_weight("1, 1/2", 2) == (Fraction(1), Fraction(1, 2))
    with pytest.raises(ValueError):
        parse_weight("1,2,3", 2)


def _module(P, lam, depth):
    return TruncatedVerma(P, hat_lambda(P.rd, lam), depth)


def test_e1_f1_on_highest(P6):
    lam = (2, 0, 1, 0, 0, -1)
    M = _module(P6, lam, 2)
    ch = M.char
    v1, lost = M.act(("f", 1), M.highest())
    assert not lost
    v0, _ = M.act(("e", 1), v1)
    assert v0 == {(): (ch.omega[0] - ch.omega_p[0]) / (R - S)}


def test_e_kills_highest(P6):
    M = _module(P6, (1, 0, 0, 0, 0, 0), 2)
    for i in range(1, 7):
        assert M.act(("e", i), M.highest())[0] == {}


def test_omega_on_f3v(P6):
    M = _module(P6, (1, 1, 0, 0, 0, 0), 2)
    v, _ = M.act(("f", 3), M.highest())
    w, _ = M.act(("w", 1), v)
    (m, c), = v.items()
    assert w == {m: c * M.char.omega[0] / S}


def test_module_properties_a2():
    M = _module(P2, (1, 2), 3)
    assert module_property_check(M).ok


def test_module_properties_generic_e6(P6):
    M = TruncatedVerma(P6, hat_lambda(P6.rd, GENERIC), 2)
    assert module_property_check(M).ok


def test_f_value_definition(e6):
    la, lb = (1, 0, 0, 0, 0, 0), (0, 0, 1, 0, 0, 0)
    got = f_value(e6, la, lb, integer_scalars())
    assert got == e6.torus_pair(lb, la).inverse()


def test_r_on_highest_tensor(P6):
    la, lb = (1, 0, 0, 0, 0, 0), (0, 0, 1, 0, 0, 0)
    M, Mp, f0 = build_pair(P6, la, lb, 1)
    Rm = RMatrix(M, Mp, f0)
    out, lost = Rm.apply({((), ()): ONE})
    assert not lost
    assert out == {((), ()): P6.rd.torus_pair(lb, la).inverse()}


@pytest.mark.parametrize(
    "lam_a,lam_b,depth",
    [
        ((1, 2), (0, 1), 2),
        ((1, 2), (0, 1), 3),
        ((Fraction(1, 2), 0), (0, Fraction(-1, 3)), 2),
        (GENERIC, GENERIC, 2),
        (GENERIC, (1, 0), 2),
    ],
)
def test_rmatrix_intertwines_a2(lam_a, lam_b, depth):
    res = rmatrix_check(P2, lam_a, lam_b, depth)
    assert res.failures == 0
    assert res.interior > 0


def test_rmatrix_generic_depth3_a2():
    res = rmatrix_check(P2, GENERIC, GENERIC, 3)
    assert res.failures == 0 and res.interior > 0


def test_rmatrix_e6_depth2(P6):
    res = rmatrix_check(P6, (1, 0, 0, 1, 0, 0), (0, 1, 0, 0, 0, 2), 2)
    assert res.failures == 0 and res.interior > 0


def _failures(Rm, M, Mp):
    bad = 0
    for bp in Mp.basis:
        for b in M.basis:
            x = {(bp, b): ONE}
            Rx, l0 = Rm.apply(x)
            for g in generators(2):
                ux, l1 = act_tensor(g, x, Mp, M)
                left, l2 = Rm.apply(ux)
                right, l3 = act_tensor(g, Rx, M, Mp)
                if not (l0 or l1 or l2 or l3) and left != right:
                    bad += 1
    return bad


def test_negative_control_without_twist():
    M, Mp, f0 = build_pair(P2, (1, 2), (0, 1), 2)
    Rm = RMatrix(M, Mp, f0)
    Rm.f_twist = lambda m, mp: f0
    assert _failures(Rm, M, Mp) > 0


def test_negative_control_wrong_theta_coefficient():
    M, Mp, f0 = build_pair(P2, (1, 2), (0, 1), 2)
    Rm = RMatrix(M, Mp, f0)
    k = next(k for k, (m, _) in enumerate(Rm.terms) if len(m) == 1)
    m, c = Rm.terms[k]
    Rm.terms[k] = (m, c * 2)
    assert _failures(Rm, M, Mp) > 0


def test_torus_commutation_a2():
    assert torus_commutation_check(P2, (1, 0), (2, -1), 2).ok


@pytest.mark.parametrize("lam", [(1, 1), GENERIC])
def test_yang_baxter_a2(lam):
    res = yang_baxter_check(P2, lam, 2)
    assert res.failures == 0 and res.interior > 0

