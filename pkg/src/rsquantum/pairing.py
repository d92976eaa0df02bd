"""The skew pairing between B' and B, and the shuffle image used for zero tests.

For an f-word ``y`` and an e-word ``x`` of length n put

    P(y, x) = (s - r)^n <f_y, e_x>.

Peeling the leftmost f-letter through the coproduct gives

    P(i y', x) = sum over k with x_k = i of prod_{m < k} A[i][x_m] * P(y', x without k)

so P is a sum over bijections between the letters with a weight A[b][a] for
every pair (a before b in x) that the bijection inverts. The shuffle image

    chi(x) = sum over f-words y of P(y, x) y

is therefore a morphism of algebras from the free algebra into a twisted
shuffle algebra. Its kernel on torus-free elements is the radical of the
pairing, which is the Serre ideal, so ``chi(x) == 0`` is an exact test for
vanishing in the quotient. Pairing an F-side combination with x is a sparse
dot product against chi(x).
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass, field
from functools import lru_cache

from .balgebra import E, F, BElement, _addto
from .coeffs import ONE, RS, ZERO, RatFn, S, R
from .rootsystem import RootDatum
from .words import content, to_str

CACHE_VERSION = "rsquantum-pairing-v1"

SR = S - R


def _poly_from_exps(counts: dict) -> RatFn:
    """Sum of count * r^a s^b as a RatFn."""
    if not counts:
        return ZERO
    a0 = min(a for a, _ in counts)
    b0 = min(b for _, b in counts)
    poly = RS.from_dict({(a - a0, b - b0): c for (a, b), c in counts.items() if c})
    if poly.is_zero():
        return ZERO
    return RatFn.from_poly(poly, (a0, b0))


class Shuffler:
    """Twisted shuffle products for one root datum.

    On the E-side, a letter b of the right factor placed before a letter a of
    the left factor contributes A[b][a]; on the F-side it contributes A[a][b].
    """

    def __init__(self, rd: RootDatum, side: str = E):
        self.rd = rd
        self.side = side
        self._interleave = lru_cache(maxsize=200000)(self._interleave_raw)
        self._poly = lru_cache(maxsize=200000)(self._poly_raw)

    def _weight(self, b: int, a: int):
        pe = self.rd.pair_exps
        return pe[b - 1][a - 1] if self.side == E else pe[a - 1][b - 1]

    def _interleave_raw(self, u: tuple, v: tuple) -> dict:
        """word -> {(a, b): count} over all interleavings of u and v."""
        if not u:
            return {v: {(0, 0): 1}}
        if not v:
            return {u: {(0, 0): 1}}
        out: dict = {}
        for w, cnt in self._interleave(u[1:], v).items():
            out[(u[0],) + w] = dict(cnt)
        b = v[0]
        da = db = 0
        for a in u:
            x, y = self._weight(b, a)
            da += x
            db += y
        for w, cnt in self._interleave(u, v[1:]).items():
            key = (b,) + w
            tgt = out.setdefault(key, {})
            for (x, y), c in cnt.items():
                k = (x + da, y + db)
                tgt[k] = tgt.get(k, 0) + c
        return out

    def _poly_raw(self, u: tuple, v: tuple) -> tuple:
        return tuple((w, _poly_from_exps(cnt)) for w, cnt in self._interleave(u, v).items())

    def words(self, u: tuple, v: tuple):
        return self._poly(u, v)

    def product(self, X: dict, Y: dict) -> dict:
        out: dict = {}
        for u, cu in X.items():
            for v, cv in Y.items():
                c = cu * cv
                for w, p in self._poly(u, v):
                    _addto(out, w, c * p)
        return out

    def clear(self) -> None:
        self._interleave.cache_clear()
        self._poly.cache_clear()


@lru_cache(maxsize=None)
def shuffler(rd: RootDatum, side: str = E) -> Shuffler:
    return Shuffler(rd, side)


def sv_add(X: dict, Y: dict, c: RatFn = ONE) -> dict:
    out = dict(X)
    for w, v in Y.items():
        _addto(out, w, v * c)
    return out


def sv_scale(X: dict, c: RatFn) -> dict:
    if not c:
        return {}
    return {w: v * c for w, v in X.items()}


def sv_dot(Fw: dict, X: dict) -> RatFn:
    """sum of Fw[w] * X[w]; iterates over the smaller map."""
    if len(Fw) > len(X):
        Fw, X = X, Fw
    total = ZERO
    for w, c in Fw.items():
        v = X.get(w)
        if v is not None:
            total = total + c * v
    return total


def chi_word(rd: RootDatum, w: tuple, side: str = E) -> dict:
    """Shuffle image of a single word (built letter by letter)."""
    return dict(_chi_word(rd, tuple(w), side))


@lru_cache(maxsize=4096)
def _chi_word(rd: RootDatum, w: tuple, side: str) -> tuple:
    if len(w) <= 1:
        return ((w, ONE),)
    head = dict(_chi_word(rd, w[:-1], side))
    return tuple(shuffler(rd, side).product(head, {w[-1:]: ONE}).items())


def chi(x: BElement) -> dict:
    """Shuffle image of a torus-free element, on its own side."""
    out: dict = {}
    for (w, t), c in x.terms.items():
        if any(t):
            raise ValueError("chi takes torus-free elements; split by torus first")
        for v, p in _chi_word(x.rd, w, x.side):
            _addto(out, v, c * p)
    return out


def split_by_torus(x: BElement) -> dict:
    parts: dict = {}
    for (w, t), c in x.terms.items():
        parts.setdefault(t, {})[(w, (0,) * x.rd.rank)] = c
    return {t: BElement(x.rd, x.side, d) for t, d in parts.items()}


def is_zero_mod_serre(x: BElement) -> bool:
    """True iff x vanishes in the quotient by the Serre ideal (exact, all words)."""
    for part in split_by_torus(x).values():
        if chi(part):
            return False
    return True


class PairingMemo:
    """Memo table for P(y, x) on words, optionally persisted to a JSON file."""

    def __init__(self, rd: RootDatum, path: str | None = None):
        self.rd = rd
        self.path = path
        self.table: dict = {}
        self.conflicts = 0
        if path and os.path.exists(path):
            self._load()

    def _header(self) -> str:
        return f"{CACHE_VERSION}:{self.rd.name}"

    def _load(self) -> None:
        with open(self.path) as fh:
            data = json.load(fh)
        if data.get("version") != self._header():
            return
        for key, val in data["entries"].items():
            fw, ew = key.split("|")
            self.table[(_parse_word(fw), _parse_word(ew))] = RatFn.from_json(val)

    def save(self) -> None:
        if not self.path:
            return
        entries = {
            f"{'.'.join(map(str, fw))}|{'.'.join(map(str, ew))}": v.to_json()
            for (fw, ew), v in sorted(self.table.items())
        }
        tmp = self.path + ".tmp"
        with open(tmp, "w") as fh:
            json.dump({"version": self._header(), "entries": entries}, fh, sort_keys=True)
        os.replace(tmp, self.path)

    def scaled(self, fw: tuple, ew: tuple) -> RatFn:
        """(s - r)^n <f_fw, e_ew>, by peeling the leftmost f-letter."""
        if len(fw) != len(ew):
            return ZERO
        if not fw:
            return ONE
        key = (fw, ew)
        hit = self.table.get(key)
        if hit is not None:
            return hit
        if sorted(fw) != sorted(ew):
            val = ZERO
        else:
            i = fw[0]
            pe = self.rd.pair_exps[i - 1]
            a = b = 0
            val = ZERO
            for k, jk in enumerate(ew):
                if jk == i:
                    sub = self.scaled(fw[1:], ew[:k] + ew[k + 1 :])
                    if sub:
                        val = val + sub * RatFn.rs(a, b)
                x, y = pe[jk - 1]
                a += x
                b += y
        self.table[key] = val
        return val

    def record(self, fw: tuple, ew: tuple, value: RatFn) -> None:
        """Insert a value computed elsewhere; a disagreement is counted."""
        old = self.table.get((fw, ew))
        if old is not None and old != value:
            self.conflicts += 1
        self.table[(fw, ew)] = value


def _parse_word(text: str) -> tuple:
    return tuple(int(x) for x in text.split(".") if x)


@lru_cache(maxsize=None)
def memo_for(rd: RootDatum) -> PairingMemo:
    return PairingMemo(rd)


def pair(y: BElement, x: BElement, memo: PairingMemo | None = None) -> RatFn:
    """<y, x> for y in B' and x in B."""
    if y.side != F or x.side != E:
        raise ValueError("pair takes an F-side element and an E-side element")
    memo = memo or memo_for(x.rd)
    rd = x.rd
    total = ZERO
    for (fw, ft), cy in y.terms.items():
        for (ew, et), cx in x.terms.items():
            if len(fw) != len(ew):
                continue
            p = memo.scaled(fw, ew)
            if not p:
                continue
            c = cy * cx * p
            if any(ft) and any(et):
                c = c * rd.torus_pair(ft, et)
            if fw:
                c = c / SR ** len(fw)
            total = total + c
    return total


def pair_matchings(y: BElement, x: BElement) -> RatFn:
    """Independent evaluation by summing over all letter bijections."""
    from itertools import permutations

    rd = x.rd
    pe = rd.pair_exps
    total = ZERO
    for (fw, ft), cy in y.terms.items():
        for (ew, et), cx in x.terms.items():
            if sorted(fw) != sorted(ew):
                continue
            val = ZERO
            for perm in permutations(range(len(ew))):
                # perm[p] = position in ew matched with fw[p]
                if any(fw[p] != ew[perm[p]] for p in range(len(fw))):
                    continue
                a = b = 0
                for p in range(len(fw)):
                    for q in range(p + 1, len(fw)):
                        if perm[p] > perm[q]:
                            xa, xb = pe[ew[perm[p]] - 1][ew[perm[q]] - 1]
                            a += xa
                            b += xb
                val = val + RatFn.rs(a, b)
            c = cy * cx * val * rd.torus_pair(ft, et)
            if fw:
                c = c / SR ** len(fw)
            total = total + c
    return total


def f_word_part(y: BElement) -> dict:
    return y.word_part()


def pair_with_chi(y_words: dict, chi_x: dict, degree: int) -> RatFn:
    """<y, x> from the word expansion of a torus-free y and chi(x)."""
    val = sv_dot(y_words, chi_x)
    return val / SR**degree if degree else val


def gram(weight: tuple, fbasis: list, ebasis: list, rd: RootDatum | None = None) -> list:
    """G[m][n] = <fbasis[m], ebasis[n]>."""
    for z in list(fbasis) + list(ebasis):
        if not z.is_zero() and z.weight() != tuple(weight):
            raise ValueError("basis element of the wrong weight")
    deg = sum(weight)
    chis = [chi(x) for x in ebasis]
    rows = []
    for y in fbasis:
        yw = y.word_part()
        rows.append([pair_with_chi(yw, cx, deg) for cx in chis])
    return rows


@dataclass
class FunctionalVector:
    weight: tuple
    basis_tags: list
    values: list = field(default_factory=list)

    def is_zero(self) -> bool:
        return all(not v for v in self.values)


def functional_vector(x: BElement, fbasis: list, tags: list | None = None) -> FunctionalVector:
    mu = x.weight()
    deg = sum(mu)
    cx = chi(x)
    vals = []
    for y in fbasis:
        if y.weight() != mu:
            raise ValueError("weight mismatch")
        vals.append(pair_with_chi(y.word_part(), cx, deg))
    return FunctionalVector(mu, list(tags) if tags is not None else list(range(len(fbasis))), vals)


def content_hash(obj) -> str:
    return hashlib.sha256(json.dumps(obj, sort_keys=True).encode()).hexdigest()[:16]
