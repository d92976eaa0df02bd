import pytest

from rsquantum.balgebra import E, F, BElement, TensorElement
from rsquantum.coeffs import ONE, R, S, psi
from rsquantum.double import (
    Q_RS,
    c_beta,
    double_mixed_check,
    dual_basis_check,
    is_zero_f,
    literal_serre_variant,
    theta,
    theta_coefficient,
    verify_eta_relations,
)
from rsquantum.pbw import engine
from rsquantum.rootsystem import build, unit, weights_up_to
from rsquantum.words import from_str


def test_c_beta_simple_and_adjacent(P6):
    c = c_beta(P6)
    for rv in P6.roots:
        if rv.height == 1:
            assert c[rv.index] == S - R
    assert c[P6.by_word[(1, 3)].index] == S - R
    assert c[P6.by_word[(3, 4)].index] == S - R


def test_c_beta_nonzero(P6):
    assert all(not x.is_zero() for x in c_beta(P6))


def test_c_beta_recursion_by_hand(P6, e6):
    c = c_beta(P6)
    for rv in P6.roots:
        if rv.factors is None:
            continue
        k1, k2 = rv.factors
        b1, b2 = P6.roots[k1].root, P6.roots[k2].root
        p12, p21 = e6.torus_pair(b1, b2), e6.torus_pair(b2, b1)
        assert c[rv.index] * (ONE - p21 * p12) == -p12 * c[k1] * c[k2]


def test_eta_relations_e6(P6):
    rep = verify_eta_relations(P6)
    assert rep.ok, [c.name for c in rep.failures()]


def test_literal_serre_variant_is_not_a_relation(P6):
    assert not is_zero_f(literal_serre_variant(P6, 3, 4))
    assert not is_zero_f(literal_serre_variant(P6, 4, 3))


@pytest.mark.parametrize("kind,rank", [("A", 2), ("A", 3), ("E", 6)])
def test_double_mixed(kind, rank):
    rep = double_mixed_check(build(kind, rank))
    assert rep.ok
    assert len(rep.checks) == rank * rank


def test_theta_low_degrees(P6, e6):
    th = theta(P6, 1)
    assert th.degree_part(0) == [((), ONE)]
    deg1 = th.degree_part(1)
    assert len(deg1) == 6
    assert all(c == S - R for _, c in deg1)
    want = TensorElement.of(BElement.one(e6, F), BElement.one(e6, E))
    for i in range(1, 7):
        want = want + TensorElement.of(BElement.gen(e6, F, i), BElement.gen(e6, E, i)).scale(S - R)
    assert th.tensor() == want


def test_theta_diagonal_power(P6):
    c = c_beta(P6)
    k = P6.by_word[from_str("13")].index
    for n in (1, 2, 3):
        m = (k,) * n
        assert theta_coefficient(P6, m, c) == ((ONE - Q_RS) * c[k]) ** n / psi(n)


def test_theta_truncation_coherence(a3):
    P = engine(a3)
    t3, t2 = theta(P, 3), theta(P, 2)
    assert t3.restrict(2).monomial_terms == t2.monomial_terms


def test_theta_terms_are_balanced(a3):
    P = engine(a3)
    for (kf, ke), _ in theta(P, 3).tensor().terms.items():
        wf, we = kf[0], ke[0]
        assert sorted(wf) == sorted(we)


def test_dual_basis_examples(P6, a2):
    assert dual_basis_check(P6, (0,) * 6).ok
    assert dual_basis_check(P6, (2, 0, 0, 0, 0, 0)).ok
    P2 = engine(a2)
    rep = dual_basis_check(P2, (1, 1))
    assert rep.ok


@pytest.mark.parametrize("kind,rank,h", [("A", 2, 6), ("A", 3, 6)])
def test_dual_basis_small_types(kind, rank, h):
    P = engine(build(kind, rank))
    for mu in weights_up_to(rank, h, 1):
        assert dual_basis_check(P, mu).ok, mu


def test_dual_basis_e6_height4(P6):
    for mu in weights_up_to(6, 4, 1):
        assert dual_basis_check(P6, mu).ok, mu


def test_dual_basis_detects_wrong_scale(P6):
    bad = list(c_beta(P6))
    bad[0] = bad[0] * 2
    assert not dual_basis_check(P6, unit(6, 1), bad).ok
