"""Good Lyndon words, quantum root vectors, PBW monomials and normal forms.

Everything here runs through the shuffle image ``chi`` of module pairing.

Certificates
------------
For a torus-free x write ``top(x)`` for the largest word in the support of
chi(x). Two facts drive the exact independence tests:

* If ``u'`` is smaller than ``u``, every interleaving of ``u'`` with ``v`` is
  beaten by the interleaving of ``u`` with ``v`` that uses the same positions.
  Hence ``top(x * y)`` is the largest interleaving of ``top(x)`` and ``top(y)``.
  Its coefficient is ``lead(x) lead(y)`` times a sum of monomials with positive
  integer coefficients, which is never zero.
* For a PBW monomial with good words ``l_1 >= l_2 >= ...`` the largest
  interleaving is the concatenation, so ``top(E_m)`` is the good word of m and
  distinct monomials have distinct tops (checked, not assumed).

So if x is a combination of monomials from a set S, then ``top(x)`` is the top
of one of them. Peeling the top term repeatedly either reaches zero (x lies in
the span) or exposes a top outside S (x does not). This decides membership
exactly, without Gram matrices over the full word space.
"""

from __future__ import annotations

import time
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache

from .balgebra import E, F, BElement, bracket, multiply
from .coeffs import ONE, ZERO, RatFn
from .linalg import SingularSystem, solve
from .pairing import SR, chi, chi_word, pair_with_chi, shuffler, sv_add
from .rootsystem import RootDatum, build, kostant, vadd, vsub
from .words import content, enumerate_lyndon, max_shuffle, std_factorize, to_str


class ConventionError(RuntimeError):
    """A structural expectation failed; indicates a convention bug."""


@dataclass
class RootVector:
    index: int  # position in the convex order (0-based)
    root: tuple
    word: tuple
    factors: tuple | None  # (index of left factor, index of right factor)
    e_expansion: BElement
    f_expansion: BElement
    chi_e: dict  # shuffle image of E_beta
    chi_f: dict  # F-side shuffle image of F_beta

    @property
    def height(self) -> int:
        return sum(self.root)

    @property
    def label(self) -> str:
        return to_str(self.word)


@dataclass
class LSRelation:
    beta: int
    gamma: int
    scalar: RatFn
    expansion: dict
    gram_size: int = 0
    residual_ok: bool = True
    convex: bool = True
    seconds: float = 0.0


@dataclass
class SelectionLog:
    root: tuple
    word: tuple
    candidates: int
    tested: list = field(default_factory=list)  # (word, verdict, method)


def tp(rd: RootDatum, mu, nu) -> RatFn:
    return rd.torus_pair(mu, nu)


def top_word(X: dict):
    return max(X) if X else None


class PBW:
    """Root vectors and PBW machinery for one root datum."""

    def __init__(self, rd: RootDatum, candidates: str = "factors"):
        """candidates: "factors" tests Lyndon words whose standard factors are
        already good, bracketed; "all" tests every Lyndon word of the content
        through the raw word itself (slow, for cross-checks on small types)."""
        if candidates not in ("factors", "all"):
            raise ValueError("candidates must be 'factors' or 'all'")
        self.rd = rd
        self.mode = candidates
        self.sh_e = shuffler(rd, E)
        self.sh_f = shuffler(rd, F)
        self.logs: list[SelectionLog] = []
        self.roots: list[RootVector] = self._select()
        self.by_word = {rv.word: rv for rv in self.roots}
        self.by_root = {rv.root: rv for rv in self.roots}
        self._mono_cache: dict = {}
        self._chi_mono: dict = {}
        self._chi_mono_f: dict = {}
        self._fexp: dict = {}
        self._eexp: dict = {}

    # ---------------------------------------------------------------- selection

    def _select(self) -> list[RootVector]:
        rd = self.rd
        found: dict = {}  # word -> provisional record
        roots_by_height = sorted(rd.positive_roots, key=lambda b: (sum(b), b))
        for mu in roots_by_height:
            if sum(mu) == 1:
                i = mu.index(1) + 1
                found[(i,)] = self._leaf(i)
                self.logs.append(SelectionLog(mu, (i,), 1, [((i,), "good", "leaf")]))
                continue
            if self.mode == "all":
                cands = sorted(enumerate_lyndon(mu), reverse=True)
            else:
                cands = self._candidates(mu, found)
            log = SelectionLog(mu, (), len(cands))
            lower = dict(found)
            chosen = None
            for w in cands:
                u, v = std_factorize(w)
                if self.mode == "all":
                    X = chi_word(rd, w)
                else:
                    X = self._bracket_chi(found[u], found[v])
                verdict, method = self._independent(mu, w, X, lower)
                log.tested.append((w, "good" if verdict else "reducible", method))
                if verdict:
                    chosen = (w, u, v, X)
                    break
            if chosen is None:
                raise ConventionError(f"no good Lyndon word found for root {mu}")
            w, u, v, X = chosen
            if u not in found or v not in found:
                raise ConventionError(f"good word {to_str(w)} has a factor that is not good")
            if self.mode == "all":
                X = self._bracket_chi(found[u], found[v])
            log.word = w
            self.logs.append(log)
            found[w] = self._composite(w, found[u], found[v], X)
        ordered = sorted(found.values(), key=lambda rec: rec["word"])
        index = {rec["word"]: k for k, rec in enumerate(ordered)}
        out = []
        for k, rec in enumerate(ordered):
            fac = None
            if rec["factors"]:
                fac = tuple(index[x] for x in rec["factors"])
            out.append(
                RootVector(k, rec["root"], rec["word"], fac, rec["E"], rec["F"], rec["chi_e"], rec["chi_f"])
            )
        return out

    def _leaf(self, i: int) -> dict:
        rd = self.rd
        return {
            "word": (i,),
            "root": content((i,), rd.rank),
            "factors": None,
            "E": BElement.gen(rd, E, i),
            "F": BElement.gen(rd, F, i),
            "chi_e": {(i,): ONE},
            "chi_f": {(i,): ONE},
        }

    def _composite(self, w, ru: dict, rv: dict, X: dict) -> dict:
        Ew = bracket(ru["E"], rv["E"])
        Fw = bracket(ru["F"], rv["F"])
        zeta, eta = ru["root"], rv["root"]
        Y = sv_add(
            self.sh_f.product(rv["chi_f"], ru["chi_f"]),
            self.sh_f.product(ru["chi_f"], rv["chi_f"]),
            -tp(self.rd, zeta, eta).inverse(),
        )
        return {
            "word": w,
            "root": vadd(zeta, eta),
            "factors": (ru["word"], rv["word"]),
            "E": Ew,
            "F": Fw,
            "chi_e": X,
            "chi_f": Y,
        }

    def _bracket_chi(self, ru: dict, rv: dict) -> dict:
        p = tp(self.rd, rv["root"], ru["root"])
        A = self.sh_e.product(ru["chi_e"], rv["chi_e"])
        B = self.sh_e.product(rv["chi_e"], ru["chi_e"])
        return sv_add(A, B, -p)

    def _candidates(self, mu, found: dict) -> list:
        """Lyndon words of content mu whose standard factors are both good."""
        rank = self.rd.rank
        conts = {w: content(w, rank) for w in found}
        out = set()
        for u, cu in conts.items():
            rest = vsub(mu, cu)
            if any(x < 0 for x in rest):
                continue
            for v, cv in conts.items():
                if cv == rest and u < v:
                    w = u + v
                    if std_factorize(w) == (u, v):
                        out.add(w)
        return sorted(out, reverse=True)

    def _independent(self, mu, w, X: dict, found: dict):
        """Is the element with image X independent of monomials with words > w?"""
        if not X:
            return False, "zero"
        records = sorted(found.values(), key=lambda rec: rec["word"])
        monos = _monomials_from(self.rd, [rec["root"] for rec in records], mu)
        tops = {}
        for m in monos:
            words = [records[k]["word"] for k in m]
            cat = tuple(x for word in words for x in word)
            if cat > w:
                tops[cat] = m
                merged = ()
                for word in words:
                    merged = max_shuffle(merged, word)
                if merged != cat:
                    raise ConventionError(f"monomial top mismatch at {to_str(cat)}")
        t = top_word(X)
        if t <= w:
            return True, "top"
        R = dict(X)
        while R:
            t = top_word(R)
            if t <= w or t not in tops:
                return True, "peel"
            m = tops[t]
            Y = self._chi_of_records([records[k] for k in m])
            R = sv_add(R, Y, -(R[t] / Y[t]))
        return False, "peel"

    def _chi_of_records(self, recs: list) -> dict:
        X = {(): ONE}
        for rec in recs:
            X = self.sh_e.product(X, rec["chi_e"])
        return X

    # ------------------------------------------------------------ PBW monomials

    @property
    def words(self) -> list:
        return [rv.word for rv in self.roots]

    def monomials(self, weight) -> list:
        """PBW monomials of a weight: tuples of root indices, non-increasing."""
        weight = tuple(weight)
        hit = self._mono_cache.get(weight)
        if hit is None:
            hit = _monomials_from(self.rd, [rv.root for rv in self.roots], weight)
            hit = sorted(hit, key=self.mono_word)
            self._mono_cache[weight] = hit
        return hit

    def monomials_between(self, weight, lo: int, hi: int) -> list:
        """Monomials using only roots with index strictly between lo and hi."""
        roots = [rv.root if lo < rv.index < hi else None for rv in self.roots]
        return sorted(_monomials_from(self.rd, roots, tuple(weight)), key=self.mono_word)

    def mono_word(self, m) -> tuple:
        return tuple(x for k in m for x in self.roots[k].word)

    def mono_label(self, m) -> str:
        if not m:
            return "1"
        parts = []
        for k, n in sorted(Counter(m).items(), reverse=True):
            lab = f"E{self.roots[k].label}"
            parts.append(lab if n == 1 else f"{lab}^{n}")
        return "*".join(parts)

    def mono_json(self, m) -> list:
        return [[self.roots[k].label, n] for k, n in sorted(Counter(m).items(), reverse=True)]

    def mono_weight(self, m) -> tuple:
        out = (0,) * self.rd.rank
        for k in m:
            out = vadd(out, self.roots[k].root)
        return out

    def chi_mono(self, m) -> dict:
        m = tuple(m)
        hit = self._chi_mono.get(m)
        if hit is None:
            if not m:
                hit = {(): ONE}
            elif len(m) == 1:
                hit = self.roots[m[0]].chi_e
            else:
                hit = self.sh_e.product(self.chi_mono(m[:-1]), self.roots[m[-1]].chi_e)
            self._chi_mono[m] = hit
        return hit

    def chi_mono_f(self, m) -> dict:
        m = tuple(m)
        hit = self._chi_mono_f.get(m)
        if hit is None:
            if not m:
                hit = {(): ONE}
            elif len(m) == 1:
                hit = self.roots[m[0]].chi_f
            else:
                hit = self.sh_f.product(self.chi_mono_f(m[:-1]), self.roots[m[-1]].chi_f)
            self._chi_mono_f[m] = hit
        return hit

    def e_mono(self, m) -> BElement:
        m = tuple(m)
        hit = self._eexp.get(m)
        if hit is None:
            hit = BElement.one(self.rd, E)
            for k in m:
                hit = multiply(hit, self.roots[k].e_expansion)
            self._eexp[m] = hit
        return hit

    def f_mono(self, m) -> BElement:
        m = tuple(m)
        hit = self._fexp.get(m)
        if hit is None:
            hit = BElement.one(self.rd, F)
            for k in m:
                hit = multiply(hit, self.roots[k].f_expansion)
            self._fexp[m] = hit
        return hit

    def f_words(self, m) -> dict:
        return self.f_mono(m).word_part()

    def pair_mono(self, mf, me) -> RatFn:
        """<F_mf, E_me> via the F-side word expansion and chi(E_me)."""
        deg = sum(self.mono_weight(me))
        if self.mono_weight(mf) != self.mono_weight(me):
            return ZERO
        return pair_with_chi(self.f_words(mf), self.chi_mono(me), deg)

    # ------------------------------------------------------------ normal forms

    def gram(self, weight, monos=None) -> list:
        monos = self.monomials(weight) if monos is None else monos
        return [[self.pair_mono(a, b) for b in monos] for a in monos]

    def normal_form(self, x: BElement, check: bool = True) -> dict:
        """PBW coefficients of the image of a homogeneous torus-free x."""
        if x.side != E:
            raise ValueError("normal_form takes an E-side element")
        if x.is_zero():
            return {}
        mu = x.weight()
        monos = self.monomials(mu)
        X = chi(x)
        return self._solve(X, mu, monos, check)

    def normal_form_chi(self, X: dict, mu, monos=None, check: bool = True) -> dict:
        monos = self.monomials(mu) if monos is None else monos
        return self._solve(X, mu, monos, check)

    def _solve(self, X: dict, mu, monos, check: bool) -> dict:
        deg = sum(mu)
        if not X:
            return {}
        G = self.gram(mu, monos)
        v = [pair_with_chi(self.f_words(m), X, deg) for m in monos]
        try:
            c = solve(G, v)
        except SingularSystem as exc:
            raise ConventionError(f"singular Gram matrix at weight {mu}") from exc
        out = {m: cm for m, cm in zip(monos, c) if cm}
        if check:
            residual = dict(X)
            for m, cm in out.items():
                residual = sv_add(residual, self.chi_mono(m), -cm)
            if residual:
                raise ConventionError(f"normal form residual nonzero at weight {mu}")
        return out

    def normal_form_f(self, y: BElement, check: bool = True) -> dict:
        """F-side PBW coefficients of a homogeneous torus-free y in B'."""
        if y.is_zero():
            return {}
        mu = y.weight()
        monos = self.monomials(mu)
        deg = sum(mu)
        yw = y.word_part()
        G = self.gram(mu, monos)
        GT = [[G[j][i] for j in range(len(monos))] for i in range(len(monos))]
        v = [pair_with_chi(yw, self.chi_mono(m), deg) for m in monos]
        try:
            c = solve(GT, v)
        except SingularSystem as exc:
            raise ConventionError(f"singular Gram matrix at weight {mu}") from exc
        out = {m: cm for m, cm in zip(monos, c) if cm}
        if check:
            from .pairing import chi as chi_any

            residual = chi_any(y)
            for m, cm in out.items():
                residual = sv_add(residual, self.chi_mono_f(m), -cm)
            if residual:
                raise ConventionError(f"F-side normal form residual nonzero at weight {mu}")
        return out

    # ---------------------------------------------------------------- LS table

    def bracket_chi(self, a: int, b: int) -> tuple[dict, RatFn]:
        ra, rb = self.roots[a], self.roots[b]
        p = tp(self.rd, rb.root, ra.root)
        X = sv_add(self.sh_e.product(ra.chi_e, rb.chi_e), self.sh_e.product(rb.chi_e, ra.chi_e), -p)
        return X, p

    def ls_relation(self, a: int, b: int) -> LSRelation:
        t0 = time.perf_counter()
        X, p = self.bracket_chi(a, b)
        mu = vadd(self.roots[a].root, self.roots[b].root)
        monos = self.monomials_between(mu, a, b)
        rel = LSRelation(a, b, p, {}, gram_size=len(monos))
        if X and monos:
            deg = sum(mu)
            G = self.gram(mu, monos)
            v = [pair_with_chi(self.f_words(m), X, deg) for m in monos]
            try:
                c = solve(G, v)
            except SingularSystem:
                rel.residual_ok = False
                rel.convex = False
                rel.seconds = time.perf_counter() - t0
                return rel
            rel.expansion = {m: cm for m, cm in zip(monos, c) if cm}
        residual = dict(X)
        for m, cm in rel.expansion.items():
            residual = sv_add(residual, self.chi_mono(m), -cm)
        rel.residual_ok = not residual
        rel.convex = rel.residual_ok and all(a < k < b for m in rel.expansion for k in m)
        rel.seconds = time.perf_counter() - t0
        return rel

    def ls_pairs(self, max_height: int) -> list:
        n = len(self.roots)
        return [
            (a, b)
            for a in range(n)
            for b in range(a + 1, n)
            if self.roots[a].height + self.roots[b].height <= max_height
        ]

    def ls_table(self, max_height: int = 11, progress=None) -> list:
        out = []
        for a, b in self.ls_pairs(max_height):
            rel = self.ls_relation(a, b)
            out.append(rel)
            if progress:
                progress(rel)
        return out

    # ------------------------------------------------------------ diagnostics

    def top_property(self) -> bool:
        """top(chi(E_beta)) is the good word of beta, for every root."""
        return all(top_word(rv.chi_e) == rv.word for rv in self.roots)

    def lowest_word_property(self) -> bool:
        """The smallest word of E_beta is its good word, with coefficient 1."""
        for rv in self.roots:
            wp = rv.e_expansion.word_part()
            low = min(wp)
            if low != rv.word or wp[low] != ONE:
                return False
        return True


def _monomials_from(rd: RootDatum, roots: list, weight: tuple) -> list:
    """Non-increasing index tuples of usable roots (None entries skipped) summing to weight."""
    usable = [k for k, b in enumerate(roots) if b is not None]
    out = []

    def rec(rest, pos, acc):
        if not any(rest):
            out.append(tuple(acc))
            return
        for idx in range(pos, -1, -1):
            k = usable[idx]
            b = roots[k]
            if all(x <= y for x, y in zip(b, rest)):
                acc.append(k)
                rec(vsub(rest, b), idx, acc)
                acc.pop()

    if any(x < 0 for x in weight):
        return []
    if usable:
        rec(tuple(weight), len(usable) - 1, [])
    elif not any(weight):
        out.append(())
    return out


@lru_cache(maxsize=None)
def engine(rd_or_name) -> PBW:
    rd = build(rd_or_name) if isinstance(rd_or_name, str) else rd_or_name
    return PBW(rd)


def good_lyndon_words(rd: RootDatum) -> list:
    """[(root, word)] sorted by word."""
    return [(rv.root, rv.word) for rv in engine(rd).roots]


def root_vectors(rd: RootDatum) -> list:
    return engine(rd).roots


def pbw_monomials(rd: RootDatum, weight) -> list:
    return engine(rd).monomials(weight)


def normal_form(rd: RootDatum, x: BElement) -> dict:
    return engine(rd).normal_form(x)


def ls_table(rd: RootDatum, max_height: int = 11) -> list:
    return engine(rd).ls_table(max_height)
