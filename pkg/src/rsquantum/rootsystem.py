"""Simply-laced root data and the two-parameter structural constants.

Generators are numbered 1..n in Bourbaki order. Lattice vectors are integer
tuples of length n in the simple-root basis, so ``vec[i - 1]`` is the
coefficient of alpha_i. Matrices are stored 0-based.

The pairing matrix entry ``A[i][j] = <w'_i, w_j> = r^{p_ji} s^{-q_ji}`` is kept
as an exponent pair ``(a, b)`` meaning ``r^a s^b``; ``torus_pair`` is its
bilinear extension and is computed on exponents only.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

from .coeffs import RatFn

Vec = tuple


def _edges(kind: str, rank: int) -> list[tuple[int, int]]:
    if kind == "A":
        if rank < 1:
            raise ValueError("A_n needs n >= 1")
        return [(i, i + 1) for i in range(1, rank)]
    if kind == "D":
        if rank < 4:
            raise ValueError("D_n needs n >= 4")
        return [(i, i + 1) for i in range(1, rank - 1)] + [(rank - 2, rank)]
    if kind == "E":
        if rank not in (6, 7, 8):
            raise ValueError("E_n needs n in 6, 7, 8")
        chain = [1, 3, 4] + list(range(5, rank + 1))
        return sorted([(a, b) for a, b in zip(chain, chain[1:])] + [(2, 4)])
    raise ValueError(f"unsupported type {kind}{rank}")


def parse_type(text: str) -> tuple[str, int]:
    m = re.fullmatch(r"\s*([ADEade])_?(\d+)\s*", text)
    if not m:
        raise ValueError(f"cannot parse root system type {text!r}")
    return m.group(1).upper(), int(m.group(2))


@dataclass(frozen=True, eq=False)
class RootDatum:
    kind: str
    rank: int
    edges: tuple
    cartan: tuple
    positive_roots: tuple
    p_matrix: tuple
    q_matrix: tuple
    pair_exps: tuple
    _root_index: dict = field(repr=False)

    @property
    def name(self) -> str:
        return f"{self.kind}{self.rank}"

    @property
    def simple_roots(self) -> list[Vec]:
        return [unit(self.rank, i) for i in range(1, self.rank + 1)]

    @property
    def pairing_matrix(self) -> list[list[RatFn]]:
        return [[RatFn.rs(*ab) for ab in row] for row in self.pair_exps]

    def heights(self) -> list[int]:
        return [sum(b) for b in self.positive_roots]

    def is_root(self, v: Vec) -> bool:
        return tuple(v) in self._root_index

    def root_index(self, v: Vec) -> int:
        return self._root_index[tuple(v)]

    def adjacent(self, i: int, j: int) -> bool:
        return self.cartan[i - 1][j - 1] == -1

    def inner(self, mu: Vec, nu: Vec) -> int:
        return sum(
            mu[i] * self.cartan[i][j] * nu[j]
            for i in range(self.rank)
            if mu[i]
            for j in range(self.rank)
            if nu[j]
        )

    def tp_exps(self, mu: Vec, nu: Vec) -> tuple[int, int]:
        """Exponents (a, b) with torus_pair(mu, nu) = r^a s^b."""
        a = b = 0
        pe = self.pair_exps
        for i, mi in enumerate(mu):
            if mi:
                row = pe[i]
                for j, nj in enumerate(nu):
                    if nj:
                        x, y = row[j]
                        a += mi * nj * x
                        b += mi * nj * y
        return a, b

    def torus_pair(self, mu: Vec, nu: Vec) -> RatFn:
        """<w'_mu, w_nu>, multiplicative in both arguments."""
        return RatFn.rs(*self.tp_exps(mu, nu))


def unit(n: int, i: int) -> Vec:
    return tuple(int(k == i - 1) for k in range(n))


def vadd(a: Vec, b: Vec) -> Vec:
    return tuple(x + y for x, y in zip(a, b))


def vsub(a: Vec, b: Vec) -> Vec:
    return tuple(x - y for x, y in zip(a, b))


def vneg(a: Vec) -> Vec:
    return tuple(-x for x in a)


def structural_constants(cartan, rank: int):
    """Unique p, q with p + q = Cartan, entries in {0, +-1}, orthogonal pairs zero."""
    p = [[0] * rank for _ in range(rank)]
    q = [[0] * rank for _ in range(rank)]
    for i in range(rank):
        for j in range(rank):
            a = cartan[i][j]
            if i == j:
                p[i][j] = q[i][j] = 1
            elif a == -1 and i < j:
                p[i][j], q[i][j] = 0, -1
            elif a == -1:
                p[i][j], q[i][j] = -1, 0
    return tuple(map(tuple, p)), tuple(map(tuple, q))


def _closure(cartan, rank: int) -> list[Vec]:
    roots = {unit(rank, i) for i in range(1, rank + 1)}
    frontier = list(roots)
    while frontier:
        nxt = []
        for beta in frontier:
            for i in range(rank):
                ip = sum(beta[k] * cartan[k][i] for k in range(rank))
                if ip == -1:
                    gamma = vadd(beta, unit(rank, i + 1))
                    if gamma not in roots:
                        roots.add(gamma)
                        nxt.append(gamma)
        frontier = nxt
    return sorted(roots, key=lambda v: (sum(v), v))


@lru_cache(maxsize=None)
def build(kind: str, rank: int | None = None) -> RootDatum:
    if rank is None:
        kind, rank = parse_type(kind)
    kind = kind.upper()
    edges = _edges(kind, rank)
    cartan = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]
    for a, b in edges:
        cartan[a - 1][b - 1] = cartan[b - 1][a - 1] = -1
    cartan = tuple(map(tuple, cartan))
    p, q = structural_constants(cartan, rank)
    pair_exps = tuple(
        tuple((p[j][i], -q[j][i]) for j in range(rank)) for i in range(rank)
    )
    roots = _closure(cartan, rank)
    return RootDatum(
        kind=kind,
        rank=rank,
        edges=tuple(edges),
        cartan=cartan,
        positive_roots=tuple(roots),
        p_matrix=p,
        q_matrix=q,
        pair_exps=pair_exps,
        _root_index={b: k for k, b in enumerate(roots)},
    )


def kostant(rd: RootDatum, mu: Vec) -> int:
    """Number of multisets of positive roots summing to mu."""
    return _kostant(rd, tuple(mu))


@lru_cache(maxsize=None)
def _kostant(rd: RootDatum, mu: Vec) -> int:
    roots = rd.positive_roots

    @lru_cache(maxsize=None)
    def count(rest: Vec, start: int) -> int:
        if not any(rest):
            return 1
        total = 0
        for k in range(start, len(roots)):
            beta = roots[k]
            if all(b <= x for b, x in zip(beta, rest)):
                total += count(vsub(rest, beta), k)
        return total

    if any(x < 0 for x in mu):
        return 0
    return count(mu, 0)


def weights_up_to(rank: int, max_height: int, min_height: int = 0):
    """All nonnegative lattice vectors with height in [min_height, max_height]."""
    for h in range(min_height, max_height + 1):
        yield from _compositions(h, rank)


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for k in range(total, -1, -1):
        for rest in _compositions(total - k, parts - 1):
            yield (k,) + rest


def lattice_box(rank: int, radius: int):
    return product(range(-radius, radius + 1), repeat=rank)
