"""Shipped reference tables and term-by-term comparison against them."""

from __future__ import annotations

import json
from importlib import resources

from .balgebra import E, BElement, coproduct
from .coeffs import RatFn, parse
from .pbw import PBW
from .words import from_str, to_str

GOLDEN_IDS = ("e6-matrix", "e6-good-words", "e6-delta-2453")
_FILES = {
    "e6-matrix": "e6_matrix.json",
    "e6-good-words": "e6_good_words.json",
    "e6-delta-2453": "e6_delta_2453.json",
}


def load(golden_id: str) -> dict:
    name = _FILES[golden_id]
    return json.loads(resources.files("rsquantum").joinpath("golden", name).read_text())


def golden_diff(computed: dict, golden: dict) -> dict:
    """Compare two {key: RatFn} maps; keys are strings, values canonical."""
    missing = sorted(k for k in golden if k not in computed)
    extra = sorted(k for k in computed if k not in golden)
    mismatched = [
        {"key": k, "computed": str(computed[k]), "golden": str(golden[k])}
        for k in sorted(golden)
        if k in computed and computed[k] != golden[k]
    ]
    return {"missing": missing, "extra": extra, "mismatched": mismatched}


def diff_is_empty(diff: dict) -> bool:
    return not (diff["missing"] or diff["extra"] or diff["mismatched"])


# ---------------------------------------------------------------- tables


def matrix_table(rd) -> dict:
    A = rd.pairing_matrix
    n = rd.rank
    return {f"{i + 1},{j + 1}": A[i][j] for i in range(n) for j in range(n)}


def golden_matrix() -> dict:
    data = load("e6-matrix")
    return {f"{i + 1},{j + 1}": parse(x) for i, row in enumerate(data["rows"]) for j, x in enumerate(row)}


def words_table(P: PBW) -> dict:
    return {to_str(rv.word): RatFn.const(1) for rv in P.roots}


def golden_words() -> dict:
    data = load("e6-good-words")
    return {w: RatFn.const(1) for group in data["groups"].values() for w in group}


def group_words(words: list) -> dict:
    groups: dict = {}
    for w in words:
        groups.setdefault(w[0], []).append(w)
    return groups


# ---------------------------------------------------------------- coproduct


def _tensor_key(P: PBW, ml, tl, mr, tr) -> str:
    return f"{P.mono_label(ml)}{list(tl)} (x) {P.mono_label(mr)}{list(tr)}"


def coproduct_in_pbw(P: PBW, root_word: tuple) -> dict:
    """Delta(E_beta) written in PBW monomial (x) PBW monomial, with torus parts.

    The left and right factors are normalized one at a time, so the result is
    the image in U^+ (x) U^+ and does not depend on the word representative.
    """
    rd = P.rd
    k = next(i for i, rv in enumerate(P.roots) if rv.word == tuple(root_word))
    delta = coproduct(P.roots[k].e_expansion)

    # normalize the left factor for each (torus pair, right word)
    stage: dict = {}
    for ((wl, tl), (wr, tr)), c in delta.terms.items():
        stage.setdefault((tl, tr, wr), {})
        d = stage[(tl, tr, wr)]
        d[wl] = d.get(wl, RatFn.const(0)) + c
    mid: dict = {}
    for (tl, tr, wr), lefts in stage.items():
        x = BElement(rd, E, {(w, (0,) * rd.rank): c for w, c in lefts.items() if c})
        if x.is_zero():
            continue
        for ml, cl in P.normal_form(x).items():
            d = mid.setdefault((ml, tl, tr), {})
            d[wr] = d.get(wr, RatFn.const(0)) + cl
    out: dict = {}
    for (ml, tl, tr), rights in mid.items():
        y = BElement(rd, E, {(w, (0,) * rd.rank): c for w, c in rights.items() if c})
        if y.is_zero():
            continue
        for mr, cr in P.normal_form(y).items():
            key = _tensor_key(P, ml, tl, mr, tr)
            out[key] = out.get(key, RatFn.const(0)) + cr
    return {k: v for k, v in out.items() if v}


def golden_coproduct(P: PBW) -> dict:
    data = load("e6-delta-2453")
    index = {rv.word: i for i, rv in enumerate(P.roots)}

    def mono(labels):
        m = tuple(index[from_str(x)] for x in labels)
        if list(m) != sorted(m, reverse=True):
            raise ValueError(f"golden monomial {labels} is not in convex order")
        return m

    out = {}
    for t in data["terms"]:
        key = _tensor_key(P, mono(t["left"]), tuple(t["left_torus"]), mono(t["right"]), tuple(t["right_torus"]))
        out[key] = parse(t["coeff"])
    return out
