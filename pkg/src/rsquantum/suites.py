"""Verification suites behind ``rsquantum verify``.

Each suite returns a SuiteReport. Reports carry no timing unless asked for, so
two runs with the same flags serialize to identical bytes whatever the thread
count.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .balgebra import E, F, BElement, adjoint_serre
from .coeffs import ONE, R, S, RatFn, psi, q_power, specialize
from .double import Report, c_beta, double_mixed_check, dual_basis_check, literal_serre_variant, theta, verify_eta_relations
from .golden import (
    coproduct_in_pbw,
    diff_is_empty,
    golden_coproduct,
    golden_diff,
    golden_matrix,
    golden_words,
    matrix_table,
    words_table,
)
from .oracles import graded, kostant_dims, serre_quotient_dims, span_rank_mod_p
from .pairing import PairingMemo, chi, is_zero_mod_serre, pair, pair_matchings
from .pbw import PBW, engine
from .rootsystem import RootDatum, unit, weights_up_to
from .verma import (
    GENERIC,
    build_pair,
    injectivity_check,
    module_property_check,
    rmatrix_check,
    torus_commutation_check,
    yang_baxter_check,
)

SUITES = (
    "structure",
    "golden",
    "appendix",
    "serre",
    "eta",
    "double",
    "dualbasis",
    "ls",
    "dims",
    "oracle",
    "specialize",
    "rmatrix",
)


@dataclass
class Options:
    max_height: int | None = None
    max_degree: int | None = None
    depth: int | None = None
    lambda_a: object = GENERIC
    lambda_b: object = GENERIC
    cache: str | None = None
    threads: int = 1
    timings: bool = False


@dataclass
class SuiteReport:
    suite: str
    checks: list = field(default_factory=list)
    counters: dict = field(default_factory=dict)

    def add(self, name: str, status, detail: str = "", witness=None, seconds: float | None = None):
        if status is None:
            st = "skipped"
        else:
            st = "pass" if status else "fail"
        entry = {"name": name, "status": st, "detail": detail}
        if witness is not None:
            entry["witness"] = witness
        if seconds is not None:
            entry["seconds"] = round(seconds, 3)
        self.checks.append(entry)
        return status

    def absorb(self, rep: Report, prefix: str = "", limit: int = 20):
        """Fold a double.Report in; only failures are listed individually."""
        fails = rep.failures()
        self.add(f"{prefix}{rep.suite}: {len(rep.checks)} checks", not fails, f"{len(fails)} failures" if fails else "")
        for c in fails[:limit]:
            self.add(f"{prefix}{c.name}", False, c.detail)

    @property
    def ok(self) -> bool:
        return all(c["status"] != "fail" for c in self.checks)

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "status": "pass" if self.ok else "fail",
            "checks": self.checks,
            "counters": self.counters,
        }


def _timed(opts: Options, fn, *args):
    t0 = time.perf_counter()
    out = fn(*args)
    return out, (time.perf_counter() - t0 if opts.timings else None)


def _pmap(opts: Options, fn, items):
    items = list(items)
    if opts.threads > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=opts.threads) as ex:
            return list(ex.map(fn, items))
    return [fn(x) for x in items]


# ------------------------------------------------------------------ suites


def suite_structure(rd: RootDatum, opts: Options) -> SuiteReport:
    rep = SuiteReport("structure")
    n = rd.rank
    p, q = rd.p_matrix, rd.q_matrix
    rep.add("transpose(p) == q", all(p[j][i] == q[i][j] for i in range(n) for j in range(n)))
    rep.add("p + q == Cartan", all(p[i][j] + q[i][j] == rd.cartan[i][j] for i in range(n) for j in range(n)))
    A = rd.pairing_matrix
    rep.add(
        "A[i][j] A[j][i] == (r/s)^a_ij",
        all(A[i][j] * A[j][i] == (R / S) ** rd.cartan[i][j] for i in range(n) for j in range(n)),
    )
    ok = True
    for i in range(n):
        for j in range(n):
            if i == j:
                expect = R / S
            elif rd.adjacent(i + 1, j + 1):
                expect = R.inverse() if i < j else S
            else:
                expect = ONE
            ok = ok and A[i][j] == expect
    rep.add("pairing matrix pattern", ok)
    return rep


def suite_golden(rd: RootDatum, opts: Options) -> SuiteReport:
    rep = SuiteReport("golden")
    if rd.name != "E6":
        rep.add("shipped tables exist only for E6", None)
        return rep
    d = golden_diff(matrix_table(rd), golden_matrix())
    rep.add("matrix A", diff_is_empty(d), witness=None if diff_is_empty(d) else d)
    d = golden_diff(words_table(engine(rd)), golden_words())
    rep.add("36 good Lyndon words", diff_is_empty(d), witness=None if diff_is_empty(d) else d)
    return rep


def suite_appendix(rd: RootDatum, opts: Options) -> SuiteReport:
    rep = SuiteReport("appendix")
    if rd.name != "E6":
        rep.add("the coproduct display is an E6 example", None)
        return rep
    P = engine(rd)
    comp, sec = _timed(opts, coproduct_in_pbw, P, (2, 4, 5, 3))
    gold = golden_coproduct(P)
    d = golden_diff(comp, gold)
    rep.add("Delta(E_2453) against the golden terms", diff_is_empty(d), witness=None if diff_is_empty(d) else d, seconds=sec)
    rep.counters["terms"] = len(comp)
    # negative control: one corrupted coefficient must give one mismatch
    key = sorted(gold)[1]
    bad = dict(gold)
    bad[key] = gold[key] * 2
    d2 = golden_diff(comp, bad)
    rep.add("corrupted golden copy is detected", len(d2["mismatched"]) == 1 and not d2["missing"] and not d2["extra"])
    return rep


def suite_serre(rd: RootDatum, opts: Options) -> SuiteReport:
    rep = SuiteReport("serre")
    P = engine(rd)
    n = rd.rank
    count = bad = 0
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i == j:
                continue
            if rd.adjacent(i, j):
                for side in (E, F):
                    x = adjoint_serre(rd, i, j, side)
                    zero = is_zero_mod_serre(x)
                    if side == E:
                        zero = zero and not P.normal_form(x)
                    count += 1
                    if not zero:
                        bad += 1
                        rep.add(f"ad({side}{i})^2 {side}{j}", False)
            elif i < j:
                x = BElement.word(rd, E, (i, j)) - BElement.word(rd, E, (j, i))
                count += 1
                if P.normal_form(x) or not is_zero_mod_serre(x):
                    bad += 1
                    rep.add(f"[e{i}, e{j}]", False)
    rep.add(f"{count} Serre elements and orthogonal commutators vanish", bad == 0)
    # negative control: a single product of two generators is not in the ideal
    rep.add("e1 e2 is nonzero (control)", bool(P.normal_form(BElement.word(rd, E, (1, 2)))))
    return rep


def suite_eta(rd: RootDatum, opts: Options) -> SuiteReport:
    rep = SuiteReport("eta")
    P = engine(rd)
    rep.absorb(verify_eta_relations(P, c_beta(P)))
    edges = [(i, j) for i in range(1, rd.rank + 1) for j in range(1, rd.rank + 1) if rd.adjacent(i, j)]
    if edges:
        i, j = edges[0]
        x = literal_serre_variant(P, i, j)
        rep.add(f"variant with last term eta_{i} eta_{j}^2 is not a relation (control)", not is_zero_mod_serre(x))
    return rep


def suite_double(rd: RootDatum, opts: Options) -> SuiteReport:
    rep = SuiteReport("double")
    rep.absorb(double_mixed_check(rd))
    return rep


def suite_dualbasis(rd: RootDatum, opts: Options) -> SuiteReport:
    rep = SuiteReport("dualbasis")
    P = engine(rd)
    ct = c_beta(P)
    h = opts.max_height or 5
    weights = list(weights_up_to(rd.rank, h, 1))
    reports = _pmap(opts, lambda mu: dual_basis_check(P, mu, ct), weights)
    fails = [r for r in reports if not r.ok]
    rep.add(f"{len(weights)} weights of height <= {h}", not fails)
    for r in fails[:10]:
        rep.absorb(r)
    # <eta_beta^2, E_beta^2> = Psi_2 / (1 - r s^-1)^2 for simple beta
    ok = True
    for i in range(1, rd.rank + 1):
        k = P.by_root[unit(rd.rank, i)].index
        val = P.pair_mono((k, k), (k, k)) * ct[k] ** 2
        ok = ok and val == psi(2) / (ONE - R / S) ** 2
    rep.add("squares of simple root vectors", ok)
    return rep


def suite_ls(rd: RootDatum, opts: Options) -> SuiteReport:
    rep = SuiteReport("ls")
    P = engine(rd)
    h = opts.max_height or 11
    pairs = P.ls_pairs(h)
    rels = _pmap(opts, lambda ab: P.ls_relation(*ab), pairs)
    residual = [r for r in rels if not r.residual_ok]
    convex = [r for r in rels if not r.convex]
    rep.add(f"{len(rels)} relations up to height {h}: residuals", not residual)
    rep.add("convexity", not convex)
    for r in (residual + convex)[:10]:
        rep.add(f"{P.roots[r.beta].label} / {P.roots[r.gamma].label}", False)
    sizes = sorted((r.gram_size for r in rels), reverse=True)
    rep.counters["relations"] = len(rels)
    rep.counters["largest_gram_sizes"] = sizes[:5]
    rep.counters["convexity_violations"] = len(convex)
    return rep


def suite_dims(rd: RootDatum, opts: Options) -> SuiteReport:
    rep = SuiteReport("dims")
    P = engine(rd)
    deg = opts.max_degree or (6 if rd.rank <= 3 else 4)
    k = kostant_dims(rd, deg)
    pbw = {mu: len(P.monomials(mu)) for mu in k}
    sq = serre_quotient_dims(rd, deg)
    rep.add(f"Serre quotient == PBW count, degrees <= {deg}", sq == pbw)
    rep.add(f"PBW count == Kostant, degrees <= {deg}", pbw == k)
    rep.counters["graded_dims"] = {str(d): v for d, v in graded(k).items()}
    h = opts.max_height or 7
    kh = kostant_dims(rd, h)
    ranks = span_rank_mod_p(rd, h)
    rep.add(f"pairing rank on words == Kostant, heights <= {h} (mod p)", ranks == kh)
    return rep


def suite_oracle(rd: RootDatum, opts: Options) -> SuiteReport:
    rep = SuiteReport("oracle")
    memo = PairingMemo(rd, opts.cache)
    rng = random.Random(7)
    n = rd.rank
    bad = 0
    trials = 150
    for _ in range(trials):
        length = rng.randint(1, 4)
        ew = tuple(rng.randint(1, n) for _ in range(length))
        fw = list(ew)
        rng.shuffle(fw)
        t1 = tuple(rng.randint(-1, 1) for _ in range(n))
        t2 = tuple(rng.randint(-1, 1) for _ in range(n))
        y = BElement.word(rd, F, tuple(fw), torus=t1)
        x = BElement.word(rd, E, ew, torus=t2)
        a = pair(y, x, memo)
        b = pair_matchings(y, x)
        ec = chi(BElement.word(rd, E, ew)).get(tuple(fw), RatFn.const(0))
        fc = chi(BElement.word(rd, F, tuple(fw))).get(ew, RatFn.const(0))
        scaled = memo.scaled(tuple(fw), ew)
        if not (a == b and ec == scaled == fc):
            bad += 1
    rep.add(f"{trials} random word pairs: recursion, bijections, E-side and F-side images", bad == 0)
    rep.counters["memo_conflicts"] = memo.conflicts
    rep.add("no cache conflicts", memo.conflicts == 0)
    memo.save()
    return rep


def suite_specialize(rd: RootDatum, opts: Options) -> SuiteReport:
    rep = SuiteReport("specialize")
    n = rd.rank
    A = rd.pairing_matrix
    ok = all(specialize(A[i][j]) == q_power(rd.cartan[i][j]) for i in range(n) for j in range(n))
    rep.add("pairing matrix -> q^(a_i, a_j)", ok)
    rep.add("s - r -> q^-1 - q", specialize(S - R) == q_power(-1) - q_power(1))
    P = engine(rd)
    th = theta(P, 1)
    ok = all(specialize(c) == q_power(-1) - q_power(1) for m, c in th.degree_part(1))
    rep.add("degree-1 Theta coefficients -> q^-1 - q", ok and len(th.degree_part(1)) == n)
    ok = True
    for k in range(5):
        expect = RatFn.const(1, q_power(0).context())
        for j in range(1, k + 1):
            expect = expect * (RatFn.const(1, expect.context()) - q_power(2 * j))
        ok = ok and specialize(psi(k)) == expect
    rep.add("psi(n) -> prod (1 - q^2k)", ok)
    return rep


def suite_rmatrix(rd: RootDatum, opts: Options) -> SuiteReport:
    rep = SuiteReport("rmatrix")
    P = engine(rd)
    depth = opts.depth or (3 if rd.rank <= 2 else 2)
    la, lb = opts.lambda_a, opts.lambda_b
    res = rmatrix_check(P, la, lb, depth)
    rep.add(
        f"R(u x) == u R(x), depth {depth}",
        res.failures == 0 and res.interior > 0,
        f"interior {res.interior}, boundary {res.boundary}, failures {res.failures}",
    )
    for c in res.report.failures()[:10]:
        rep.add(c.name, False, c.detail)
    rep.counters["interior"] = res.interior
    rep.counters["boundary_excluded"] = res.boundary
    rep.absorb(torus_commutation_check(P, la, lb, depth))
    M, _, _ = build_pair(P, la, lb, depth)
    rep.absorb(module_property_check(M))
    rep.absorb(injectivity_check(rd, 3 if rd.rank <= 6 else 2))
    small, _, _ = build_pair(P, la, la, 2)
    if len(small.basis) <= 15:
        yb = yang_baxter_check(P, la, 2)
        rep.add(
            "Yang-Baxter, depth 2",
            yb.failures == 0 and yb.interior > 0,
            f"interior {yb.interior}, boundary {yb.boundary}, failures {yb.failures}",
        )
    else:
        rep.add("Yang-Baxter, depth 2", None, "module too large for the triple tensor check")
    return rep


RUNNERS = {
    "structure": suite_structure,
    "golden": suite_golden,
    "appendix": suite_appendix,
    "serre": suite_serre,
    "eta": suite_eta,
    "double": suite_double,
    "dualbasis": suite_dualbasis,
    "ls": suite_ls,
    "dims": suite_dims,
    "oracle": suite_oracle,
    "specialize": suite_specialize,
    "rmatrix": suite_rmatrix,
}


def run_suites(rd: RootDatum, names: list, opts: Options) -> list:
    engine(rd)  # build shared state before any worker thread starts
    reports = []
    for name in names:
        t0 = time.perf_counter()
        rep = RUNNERS[name](rd, opts)
        if opts.timings:
            rep.counters["seconds"] = round(time.perf_counter() - t0, 3)
        reports.append(rep)
    return reports


__all__ = ["SUITES", "Options", "SuiteReport", "run_suites", "RUNNERS", "PBW"]
