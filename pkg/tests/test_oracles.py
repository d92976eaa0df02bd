import numpy as np
import pytest

from rsquantum.oracles import (
    graded,
    kostant_dims,
    row_basis_mod_p,
    serre_generators,
    serre_quotient_dims,
    span_rank_mod_p,
)
from rsquantum.pbw import engine
from rsquantum.rootsystem import build


@pytest.mark.parametrize("kind,rank,deg", [("A", 2, 6), ("A", 3, 5)])
def test_serre_quotient_matches_kostant_and_pbw(kind, rank, deg):
    rd = build(kind, rank)
    dims = serre_quotient_dims(rd, deg)
    assert dims == kostant_dims(rd, deg)
    P = engine(rd)
    assert all(len(P.monomials(mu)) == d for mu, d in dims.items())


def test_a2_graded_dimensions():
    # Hilbert series 1 / ((1 - t)^2 (1 - t^2))
    assert graded(serre_quotient_dims(build("A", 2), 5)) == {1: 2, 2: 4, 3: 6, 4: 9, 5: 12}


def test_serre_generators_are_torus_free(e6):
    gens = serre_generators(e6)
    # two per edge, one per orthogonal pair
    assert len(gens) == 2 * 5 + (15 - 5)
    for g in gens:
        assert all(not any(t) for _, t in g.terms)


def test_span_rank_matches_kostant_e6(e6):
    assert span_rank_mod_p(e6, 5) == kostant_dims(e6, 5)


def test_span_rank_d4():
    rd = build("D", 4)
    assert span_rank_mod_p(rd, 5) == kostant_dims(rd, 5)


def test_row_basis_mod_p():
    p = 101
    M = np.array([[1, 2, 3], [2, 4, 6], [0, 1, 1]], dtype=np.int64)
    B = row_basis_mod_p(M, p)
    assert B.shape == (2, 3)
    assert list(B[0]) == [1, 0, 1]
    assert list(B[1]) == [0, 1, 1]
