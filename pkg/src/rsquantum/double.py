"""Drinfeld-double layer: eta functionals, c_beta, the mixed product, Theta.

The functionals eta_beta are realized inside B' as ``c_beta * F_beta`` and
gamma_i as w'_i; eta_i = (s - r) f_i.
"""

from __future__ import annotations

import time
from collections import Counter
from dataclasses import dataclass, field

from .balgebra import E, F, BElement, TensorElement, _addto, antipode, coproduct, multiply
from .coeffs import ONE, ZERO, R, S, RatFn, psi
from .pairing import SR, chi, pair, sv_add
from .pbw import PBW, engine
from .rootsystem import RootDatum, unit, vadd, vneg

Q_RS = RatFn.rs(1, -1)  # r s^{-1}


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""
    seconds: float = 0.0

    def to_json(self):
        return {"name": self.name, "status": "pass" if self.ok else "fail", "detail": self.detail}


@dataclass
class Report:
    suite: str
    checks: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def add(self, name, ok, detail=""):
        self.checks.append(Check(name, bool(ok), detail))
        return ok

    def failures(self):
        return [c for c in self.checks if not c.ok]


# ------------------------------------------------------------------ c_beta


def c_beta(P: PBW) -> list:
    """c_beta for every root in convex order; simple roots get s - r."""
    rd = P.rd
    out: list = [None] * len(P.roots)

    def value(k):
        if out[k] is not None:
            return out[k]
        rv = P.roots[k]
        if rv.factors is None:
            out[k] = SR
            return SR
        k1, k2 = rv.factors
        b1, b2 = P.roots[k1].root, P.roots[k2].root
        p12 = rd.torus_pair(b1, b2)
        p21 = rd.torus_pair(b2, b1)
        denom = ONE - p21 * p12
        if denom.is_zero():
            raise ZeroDivisionError("vanishing denominator in c_beta recursion")
        out[k] = -p12 / denom * value(k1) * value(k2)
        return out[k]

    for k in range(len(P.roots)):
        value(k)
    return out


def eta(P: PBW, k: int, c_table=None) -> BElement:
    c_table = c_table or c_beta(P)
    return P.roots[k].f_expansion.scale(c_table[k])


def _eta_simple(rd, i):
    return BElement.gen(rd, F, i).scale(SR)


def _gamma(rd, i, power=1):
    return BElement.torus(rd, F, tuple(power * x for x in unit(rd.rank, i)))


def is_zero_f(y: BElement) -> bool:
    """Zero test in U(n^-): every torus component has vanishing F-side image."""
    from .pairing import split_by_torus

    return all(not chi(part) for part in split_by_torus(y).values())


def verify_eta_relations(P: PBW, c_table=None) -> Report:
    rd = P.rd
    c_table = c_table or c_beta(P)
    rep = Report("eta")
    n = rd.rank
    eta_i = {i: _eta_simple(rd, i) for i in range(1, n + 1)}
    rinv, sinv = R.inverse(), S.inverse()
    for i in range(1, n + 1):
        # conjugation by gamma_i
        for j in range(1, n + 1):
            lhs = multiply(multiply(_gamma(rd, i), eta_i[j]), _gamma(rd, i, -1))
            rhs = eta_i[j].scale(rd.torus_pair(unit(n, i), unit(n, j)))
            rep.add(f"conjugation gamma_{i} eta_{j}", lhs == rhs)
        # coproduct shape under the opposite comultiplication
        d = coproduct(eta_i[i])
        flipped = TensorElement(rd, (F, F), {(k2, k1): c for (k1, k2), c in d.terms.items()})
        expect = TensorElement.of(eta_i[i], BElement.one(rd, F)) + TensorElement.of(_gamma(rd, i), eta_i[i])
        rep.add(f"coproduct eta_{i}", flipped == expect)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i == j:
                continue
            ei, ej = eta_i[i], eta_i[j]
            if rd.cartan[i - 1][j - 1] == 0:
                rep.add(f"commute eta_{i} eta_{j}", is_zero_f(ei * ej - ej * ei))
                continue
            if i < j:
                k = P.by_root[vadd(unit(n, i), unit(n, j))].index
                lhs = ei * ej - (ej * ei).scale(rinv)
                rhs = P.roots[k].f_expansion.scale(c_table[k] * (ONE - rinv * S))
                rep.add(f"adjacent eta_{i} eta_{j}", lhs == rhs, "exact in the free algebra")
                eij = P.roots[k].f_expansion.scale(c_table[k])
                rep.add(
                    f"eta_{i} eta_{i}{j} commutation",
                    is_zero_f(ei * eij - (eij * ei).scale(sinv)),
                )
                a, b = rinv + sinv, rinv * sinv
            else:
                a, b = R + S, R * S
            serre = ei * ei * ej - (ei * ej * ei).scale(a) + (ej * ei * ei).scale(b)
            rep.add(f"serre eta_{i}^2 eta_{j}", is_zero_f(serre))
    return rep


def literal_serre_variant(P: PBW, i: int, j: int) -> BElement:
    """The variant whose last term is eta_i eta_j^2 (weight-inhomogeneous)."""
    rd = P.rd
    ei, ej = _eta_simple(rd, i), _eta_simple(rd, j)
    if i < j:
        a, b = R.inverse() + S.inverse(), (R * S).inverse()
    else:
        a, b = R + S, R * S
    return ei * ei * ej - (ei * ej * ei).scale(a) + (ei * ej * ej).scale(b)


# ------------------------------------------------------------------ the double


class DoubleElement:
    """Sum of coeff * (E-side key (x) F-side key) in D(B, B')."""

    __slots__ = ("rd", "terms")

    def __init__(self, rd, terms=None):
        self.rd = rd
        self.terms = terms if terms is not None else {}

    @classmethod
    def of(cls, a: BElement, f: BElement) -> "DoubleElement":
        out = {}
        for ka, ca in a.terms.items():
            for kf, cf in f.terms.items():
                _addto(out, (ka, kf), ca * cf)
        return cls(a.rd, out)

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            _addto(out, k, c)
        return DoubleElement(self.rd, out)

    def __neg__(self):
        return DoubleElement(self.rd, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        return isinstance(other, DoubleElement) and self.terms == other.terms

    def __mul__(self, other: "DoubleElement") -> "DoubleElement":
        return double_product(self, other)

    def __repr__(self):
        return f"DoubleElement({self.terms})"


def _delta2(x: BElement) -> dict:
    """(Delta (x) id) Delta as {(k1, k2, k3): coeff}."""
    out = {}
    for (k1, k2), c in coproduct(x).terms.items():
        left = BElement.word(x.rd, x.side, k1[0], torus=k1[1])
        for (j1, j2), c2 in coproduct(left).terms.items():
            _addto(out, (j1, j2, k2), c * c2)
    return out


def double_product(x: DoubleElement, y: DoubleElement) -> DoubleElement:
    """(a (x) f)(a' (x) f') = sum <S(f_1), a'_1> <f_3, a'_3> a a'_2 (x) f_2 f'."""
    rd = x.rd
    out = {}
    for (ka, kf), c in x.terms.items():
        a = BElement.word(rd, E, ka[0], torus=ka[1])
        f = BElement.word(rd, F, kf[0], torus=kf[1])
        df = _delta2(f)
        for (kb, kg), c2 in y.terms.items():
            a2 = BElement.word(rd, E, kb[0], torus=kb[1])
            f2 = BElement.word(rd, F, kg[0], torus=kg[1])
            da = _delta2(a2)
            for (f1, fm, f3), cf in df.items():
                s1 = antipode(BElement.word(rd, F, f1[0], torus=f1[1]))
                for (a1, am, a3), ca in da.items():
                    p3 = pair(BElement.word(rd, F, f3[0], torus=f3[1]), BElement.word(rd, E, a3[0], torus=a3[1]))
                    if not p3:
                        continue
                    p1 = pair(s1, BElement.word(rd, E, a1[0], torus=a1[1]))
                    if not p1:
                        continue
                    coeff = c * c2 * cf * ca * p1 * p3
                    left = multiply(a, BElement.word(rd, E, am[0], torus=am[1]))
                    right = multiply(BElement.word(rd, F, fm[0], torus=fm[1]), f2)
                    for kl, cl in left.terms.items():
                        for kr, cr in right.terms.items():
                            _addto(out, (kl, kr), coeff * cl * cr)
    return DoubleElement(rd, out)


def double_mixed_check(rd: RootDatum) -> Report:
    """eta_j e_i = e_i eta_j + delta_ij (w_i - gamma_i) inside the double."""
    rep = Report("double")
    n = rd.rank
    one_e, one_f = BElement.one(rd, E), BElement.one(rd, F)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            t0 = time.perf_counter()
            e_check = DoubleElement.of(BElement.gen(rd, E, i), one_f)
            eta_check = DoubleElement.of(one_e, _eta_simple(rd, j))
            lhs = eta_check * e_check
            rhs = e_check * eta_check
            if i == j:
                rhs = rhs + DoubleElement.of(BElement.torus(rd, E, unit(n, i)), one_f)
                rhs = rhs - DoubleElement.of(one_e, _gamma(rd, i))
            ok = lhs == rhs
            rep.checks.append(Check(f"eta_{j} e_{i}", ok, "" if ok else repr(lhs - rhs), time.perf_counter() - t0))
    return rep


# ------------------------------------------------------------------ Theta


@dataclass
class ThetaTruncation:
    max_degree: int
    monomial_terms: list  # (monomial, coefficient)
    P: PBW

    def tensor(self) -> TensorElement:
        """Word-level expansion with F-side left factors."""
        rd = self.P.rd
        out = {}
        for m, c in self.monomial_terms:
            fm, em = self.P.f_mono(m), self.P.e_mono(m)
            for kf, cf in fm.terms.items():
                cc = c * cf
                for ke, ce in em.terms.items():
                    _addto(out, (kf, ke), cc * ce)
        return TensorElement(rd, (F, E), out)

    def restrict(self, degree: int) -> "ThetaTruncation":
        return ThetaTruncation(
            degree,
            [(m, c) for m, c in self.monomial_terms if sum(self.P.mono_weight(m)) <= degree],
            self.P,
        )

    def degree_part(self, degree: int) -> list:
        return [(m, c) for m, c in self.monomial_terms if sum(self.P.mono_weight(m)) == degree]


def theta_coefficient(P: PBW, m, c_table) -> RatFn:
    counts = Counter(m)
    out = ONE
    for k, nk in counts.items():
        out = out * ((ONE - Q_RS) * c_table[k]) ** nk / psi(nk)
    return out


def theta(P: PBW, max_degree: int, c_table=None) -> ThetaTruncation:
    from .rootsystem import weights_up_to

    c_table = c_table or c_beta(P)
    terms = []
    for mu in weights_up_to(P.rd.rank, max_degree):
        for m in P.monomials(mu):
            terms.append((m, theta_coefficient(P, m, c_table)))
    terms.sort(key=lambda mc: (sum(P.mono_weight(mc[0])), P.mono_word(mc[0])))
    return ThetaTruncation(max_degree, terms, P)


# ------------------------------------------------------------------ dual basis


def dual_basis_check(P: PBW, weight, c_table=None) -> Report:
    c_table = c_table or c_beta(P)
    weight = tuple(weight)
    rep = Report(f"dualbasis {list(weight)}")
    monos = P.monomials(weight)
    for a in monos:
        scale = ONE
        for k in a:
            scale = scale * c_table[k]
        for b in monos:
            val = P.pair_mono(a, b) * scale
            if a == b:
                expect = ONE
                for k, nk in Counter(a).items():
                    expect = expect * psi(nk) / (ONE - Q_RS) ** nk
            else:
                expect = ZERO
            if val != expect:
                rep.add(f"{P.mono_label(a)} | {P.mono_label(b)}", False, f"got {val}, expected {expect}")
    if not rep.checks:
        rep.add(f"gram {len(monos)}x{len(monos)}", True)
    return rep
