from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rsquantum.coeffs import ONE, R, S, specialize, q_power
from rsquantum.rootsystem import build, kostant, parse_type, structural_constants, unit, vadd

TYPES = [("A", 1), ("A", 2), ("A", 3), ("A", 5), ("D", 4), ("D", 5), ("E", 6), ("E", 7), ("E", 8)]
COUNTS = {("A", 1): 1, ("A", 2): 3, ("A", 3): 6, ("A", 5): 15, ("D", 4): 12, ("D", 5): 20, ("E", 6): 36, ("E", 7): 63, ("E", 8): 120}


@pytest.mark.parametrize("t", TYPES)
def test_root_counts(t):
    rd = build(*t)
    assert len(rd.positive_roots) == COUNTS[t]
    assert len(set(rd.positive_roots)) == COUNTS[t]


@pytest.mark.parametrize("t", TYPES)
def test_structural_constants(t):
    rd = build(*t)
    n = rd.rank
    p, q = rd.p_matrix, rd.q_matrix
    for i, j in product(range(n), repeat=2):
        assert p[j][i] == q[i][j]
        assert p[i][j] + q[i][j] == rd.cartan[i][j]
        assert p[i][j] in (-1, 0, 1) and q[i][j] in (-1, 0, 1)
        if i != j and rd.cartan[i][j]:
            # p - q has the sign of j - i
            assert (p[i][j] - q[i][j] > 0) == (j > i)


def test_e6_diagram_and_matrix(e6):
    assert sorted(e6.edges) == [(1, 3), (2, 4), (3, 4), (4, 5), (5, 6)]
    A = e6.pairing_matrix
    assert A[0][0] == R / S
    assert A[0][2] == ONE / R
    assert A[2][0] == S
    assert A[0][1] == ONE
    assert max(e6.positive_roots, key=sum) == (1, 2, 2, 3, 2, 1)


def test_parse_type():
    assert parse_type("E6") == ("E", 6)
    assert parse_type("a_3") == ("A", 3)
    with pytest.raises(ValueError):
        parse_type("G2")
    with pytest.raises(ValueError):
        build("E", 9)
    with pytest.raises(ValueError):
        build("D", 3)


vec6 = st.tuples(*[st.integers(-2, 2)] * 6)


@given(vec6, vec6, vec6)
def test_torus_pair_bilinear(a, b, c):
    rd = build("E", 6)
    assert rd.torus_pair(vadd(a, b), c) == rd.torus_pair(a, c) * rd.torus_pair(b, c)
    assert rd.torus_pair(a, vadd(b, c)) == rd.torus_pair(a, b) * rd.torus_pair(a, c)


@given(vec6, vec6)
def test_torus_pair_symmetrized(a, b):
    # <w'_a, w_b> <w'_b, w_a> = (r s^-1)^{(a, b)}
    rd = build("E", 6)
    assert rd.torus_pair(a, b) * rd.torus_pair(b, a) == (R / S) ** rd.inner(a, b)
    assert specialize(rd.torus_pair(a, b)) == q_power(rd.inner(a, b))


def _kostant_brute(rd, mu):
    roots = rd.positive_roots

    def count(rest, k):
        if not any(rest):
            return 1
        if k == len(roots):
            return 0
        total = 0
        b = roots[k]
        cur = rest
        while all(x >= 0 for x in cur):
            total += count(cur, k + 1)
            cur = tuple(x - y for x, y in zip(cur, b))
        return total

    return count(tuple(mu), 0)


@pytest.mark.parametrize("t", [("A", 2), ("A", 3), ("D", 4)])
def test_kostant_against_brute_force(t):
    from rsquantum.rootsystem import weights_up_to

    rd = build(*t)
    for mu in weights_up_to(rd.rank, 5):
        assert kostant(rd, mu) == _kostant_brute(rd, mu)


def test_kostant_known_values(a2):
    assert kostant(a2, (1, 1)) == 2
    assert kostant(a2, (2, 2)) == 3
    assert kostant(a2, (-1, 0)) == 0


def test_structural_constants_direct():
    p, q = structural_constants(((2, -1), (-1, 2)), 2)
    assert p == ((1, 0), (-1, 1))
    assert q == ((1, -1), (0, 1))
    assert unit(3, 2) == (0, 1, 0)
