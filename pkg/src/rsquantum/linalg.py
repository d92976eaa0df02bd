"""Exact Gaussian elimination over RatFn, plus rank over a prime field."""

from __future__ import annotations

from .coeffs import ONE, ZERO, RatFn


class SingularSystem(ArithmeticError):
    pass


def solve(G: list, v: list) -> list:
    """Solve G c = v exactly for square nonsingular G."""
    n = len(G)
    if n == 0:
        return []
    if all(G[i][j].is_zero() for i in range(n) for j in range(n) if i != j):
        out = []
        for i in range(n):
            if G[i][i].is_zero():
                raise SingularSystem(f"zero pivot at {i}")
            out.append(v[i] / G[i][i] if v[i] else ZERO)
        return out
    M = [list(row) + [b] for row, b in zip(G, v)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col]), None)
        if piv is None:
            raise SingularSystem(f"no pivot in column {col}")
        M[col], M[piv] = M[piv], M[col]
        inv = M[col][col].inverse()
        M[col] = [x * inv if x else x for x in M[col]]
        for r in range(n):
            if r != col and M[r][col]:
                f = M[r][col]
                M[r] = [a - f * b if b else a for a, b in zip(M[r], M[col])]
    return [M[i][n] for i in range(n)]


class EchelonBasis:
    """Incremental row echelon form of sparse vectors (dict column -> RatFn)."""

    def __init__(self, order=None):
        self.rows: dict = {}  # pivot column -> row with 1 at pivot
        self.order = order  # key function; pivot is the max column under it

    def _pivot(self, row: dict):
        return max(row, key=self.order) if self.order else max(row)

    def reduce(self, row: dict) -> dict:
        row = {k: v for k, v in row.items() if v}
        while row:
            p = self._pivot(row)
            base = self.rows.get(p)
            if base is None:
                return row
            f = row[p]
            for k, v in base.items():
                nv = row.get(k, ZERO) - f * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
        return row

    def add(self, row: dict) -> bool:
        """Insert; returns True iff the row was independent."""
        row = self.reduce(row)
        if not row:
            return False
        p = self._pivot(row)
        inv = row[p].inverse()
        self.rows[p] = {k: v * inv for k, v in row.items()}
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)


def rank_mod_p(rows: list, p: int) -> int:
    """Rank of an integer matrix over GF(p); rows are lists of ints."""
    import numpy as np

    if not rows:
        return 0
    M = np.array(rows, dtype=np.int64) % p
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
        inv = pow(int(M[rank, col]), p - 2, p)
        M[rank] = (M[rank] * inv) % p
        others = np.nonzero(M[:, col])[0]
        others = others[others != rank]
        if others.size:
            f = M[others, col].reshape(-1, 1)
            M[others] = (M[others] - f * M[rank]) % p
        rank += 1
    return rank


def eval_mod_p(x: RatFn, point: dict, p: int) -> int:
    """Evaluate at integer values of the variables, modulo p."""
    names = x.context().names()

    def ev(poly, shift):
        total = 0
        for exps, c in poly.terms():
            t = int(c) % p
            for nm, k in zip(names, [a + b for a, b in zip(exps, shift)]):
                if k:
                    t = t * pow(point[nm], k, p) % p
            total = (total + t) % p
        return total

    den = ev(x.d, (0,) * len(names))
    if den == 0:
        raise ZeroDivisionError("denominator vanishes at the evaluation point")
    return ev(x.n, x.e) * pow(den, p - 2, p) % p


__all__ = ["solve", "SingularSystem", "EchelonBasis", "rank_mod_p", "eval_mod_p", "ONE"]
