"""Independent dimension oracles for the positive part.

Two routes to dim U^+_mu, both compared against the Kostant partition count:

* ``serre_quotient_dims``: the free algebra modulo explicitly generated
  two-sided ideal elements u * S * v (S a Serre element or an orthogonal
  commutator), by exact row reduction in each content component;
* ``span_rank_mod_p``: the rank of the pairing on words of content mu, computed
  as the dimension of span{chi(w)} with chi(w a) = chi(w) shuffled with a, so
  each weight only needs the basis of its predecessors. Arithmetic is modulo a
  prime at a random point, which can only lower a rank.
"""

from __future__ import annotations

import random
from collections import defaultdict
from itertools import product

import numpy as np

from .balgebra import E, BElement, adjoint_serre
from .linalg import EchelonBasis
from .rootsystem import RootDatum, kostant, unit, vsub, weights_up_to
from .words import words_with_content


def serre_generators(rd: RootDatum) -> list:
    """Torus-free ideal generators: both adjoint Serre elements per edge, and e_i e_j - e_j e_i for orthogonal i < j."""
    gens = []
    n = rd.rank
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i == j:
                continue
            if rd.adjacent(i, j):
                gens.append(adjoint_serre(rd, i, j, E))
            elif i < j:
                gens.append(BElement.word(rd, E, (i, j)) - BElement.word(rd, E, (j, i)))
    return gens


def serre_quotient_dims(rd: RootDatum, max_degree: int) -> dict:
    """{weight: dim of the free algebra modulo the ideal} for heights 1..max_degree."""
    gens = []
    for g in serre_generators(rd):
        if any(any(t) for _, t in g.terms):
            raise ValueError("Serre generator carries a torus factor")
        gens.append(({w: c for (w, _), c in g.terms.items()}, g.weight()))
    n = rd.rank
    dims = {}
    for mu in weights_up_to(n, max_degree, 1):
        words = list(words_with_content(mu))
        eb = EchelonBasis()
        for g, gw in gens:
            rest = vsub(mu, gw)
            if any(x < 0 for x in rest):
                continue
            deg = sum(rest)
            for split in range(deg + 1):
                for u_cont in _sub_contents(rest, split):
                    for u in words_with_content(u_cont):
                        for v in words_with_content(vsub(rest, u_cont)):
                            eb.add({u + w + v: c for w, c in g.items()})
        dims[mu] = len(words) - eb.rank
    return dims


def _sub_contents(mu, total):
    ranges = [range(min(m, total) + 1) for m in mu]
    for c in product(*ranges):
        if sum(c) == total:
            yield c


def graded(dims: dict) -> dict:
    out = defaultdict(int)
    for mu, d in dims.items():
        out[sum(mu)] += d
    return dict(sorted(out.items()))


def kostant_dims(rd: RootDatum, max_degree: int) -> dict:
    return {mu: kostant(rd, mu) for mu in weights_up_to(rd.rank, max_degree, 1)}


def span_rank_mod_p(rd: RootDatum, max_height: int, p: int = 2_147_483_647, seed: int = 1) -> dict:
    """{weight: rank of span chi(words of content weight)} modulo p at a random (r, s)."""
    rng = random.Random(seed)
    r = rng.randrange(2, p - 1)
    s = rng.randrange(2, p - 1)
    n = rd.rank
    pe = rd.pair_exps
    # A[a][x] evaluated mod p, used when letter a is inserted before letter x
    A = [[pow(r, pe[a][x][0] % (p - 1), p) * pow(s, pe[a][x][1] % (p - 1), p) % p for x in range(n)] for a in range(n)]
    index: dict = {(0,) * n: [()]}
    basis: dict = {(0,) * n: np.ones((1, 1), dtype=np.int64)}
    ranks = {}
    for mu in weights_up_to(n, max_height, 1):
        words = list(words_with_content(mu))
        idx = {w: k for k, w in enumerate(words)}
        index[mu] = words
        blocks = []
        for a in range(1, n + 1):
            prev = vsub(mu, unit(n, a))
            if any(x < 0 for x in prev):
                continue
            B = basis[prev]
            if B.shape[0] == 0:
                continue
            # sparse insertion map: word u of prev, position k -> word of mu, weight
            tgt, fac, col = [], [], []
            for ci, u in enumerate(index[prev]):
                f = 1
                for k in range(len(u), -1, -1):
                    tgt.append(idx[u[:k] + (a,) + u[k:]])
                    fac.append(f)
                    col.append(ci)
                    if k:
                        f = f * A[a - 1][u[k - 1] - 1] % p
            tgt = np.array(tgt)
            fac = np.array(fac, dtype=np.int64)
            col = np.array(col)
            block = np.zeros((B.shape[0], len(words)), dtype=np.int64)
            for bi in range(B.shape[0]):
                vals = B[bi, col] * fac % p
                out = np.zeros(len(words), dtype=np.int64)
                np.add.at(out, tgt, vals)
                block[bi] = out % p
            blocks.append(block)
        red = row_basis_mod_p(np.vstack(blocks) if blocks else np.zeros((0, len(words)), dtype=np.int64), p)
        basis[mu] = red
        ranks[mu] = red.shape[0]
    return ranks


def row_basis_mod_p(M: np.ndarray, p: int) -> np.ndarray:
    """Reduced row echelon basis of the row space of M over GF(p), p < 2^31."""
    M = M.copy() % p
    nrows, ncols = M.shape
    rank = 0
    for col in range(ncols):
        if rank == nrows:
            break
        nz = np.nonzero(M[rank:, col])[0]
        if nz.size == 0:
            continue
        piv = rank + nz[0]
        if piv != rank:
            M[[rank, piv]] = M[[piv, rank]]
        M[rank] = M[rank] * pow(int(M[rank, col]), p - 2, p) % p
        others = np.nonzero(M[:, col])[0]
        others = others[others != rank]
        if others.size:
            M[others] = (M[others] - M[others, col].reshape(-1, 1) * M[rank] % p) % p
        rank += 1
    return M[:rank]


__all__ = [
    "serre_generators",
    "serre_quotient_dims",
    "graded",
    "kostant_dims",
    "span_rank_mod_p",
    "row_basis_mod_p",
]
