"""Command line entry point: ``rsquantum <command> [options]``.

Exit status is 0 when every requested check passes, 1 when a check fails and
2 on a usage error. JSON output has sorted keys and canonical coefficients.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .coeffs import RatFn
from .double import c_beta, theta
from .golden import group_words
from .pbw import PBW, engine
from .rootsystem import build, parse_type
from .suites import SUITES, Options, run_suites
from .verma import GENERIC, parse_weight
from .words import to_str


class UsageError(Exception):
    pass


def _rd(args):
    try:
        kind, rank = parse_type(args.type)
        return build(kind, rank)
    except (ValueError, KeyError) as exc:
        raise UsageError(f"unsupported type {args.type!r}: {exc}") from exc


def _coeff(x: RatFn) -> str:
    return str(x)


# ------------------------------------------------------------------ commands


def cmd_roots(args):
    rd = _rd(args)
    rows = [{"index": k + 1, "root": list(b), "height": sum(b)} for k, b in enumerate(rd.positive_roots)]
    return {"type": rd.name, "count": len(rows), "roots": rows}, True, (["index", "root", "height"], rows)


def cmd_pairing_matrix(args):
    rd = _rd(args)
    A = [[_coeff(x) for x in row] for row in rd.pairing_matrix]
    data = {
        "type": rd.name,
        "matrix": A,
        "p": [list(r) for r in rd.p_matrix],
        "q": [list(r) for r in rd.q_matrix],
    }
    rows = [{"row": i + 1, **{str(j + 1): A[i][j] for j in range(rd.rank)}} for i in range(rd.rank)]
    return data, True, (["row"] + [str(j + 1) for j in range(rd.rank)], rows)


def _engine(args, rd) -> PBW:
    if getattr(args, "candidates", "factors") == "all":
        return PBW(rd, candidates="all")
    return engine(rd)


def cmd_good_words(args):
    rd = _rd(args)
    P = _engine(args, rd)
    words = [to_str(rv.word) for rv in P.roots]
    rows = [
        {"index": rv.index + 1, "word": to_str(rv.word), "root": list(rv.root), "height": rv.height}
        for rv in P.roots
    ]
    data = {"type": rd.name, "count": len(words), "words": words, "groups": group_words(words), "roots": rows}
    return data, True, (["index", "word", "root", "height"], rows)


def cmd_relations(args):
    rd = _rd(args)
    P = engine(rd)
    h = args.max_height or 11
    rels = P.ls_table(h)
    rows = []
    for r in rels:
        rows.append(
            {
                "left": P.roots[r.beta].label,
                "right": P.roots[r.gamma].label,
                "scalar": _coeff(r.scalar),
                "expansion": {P.mono_label(m): _coeff(c) for m, c in sorted(r.expansion.items())},
                "gram_size": r.gram_size,
                "residual_ok": r.residual_ok,
                "convex": r.convex,
            }
        )
    ok = all(r.residual_ok and r.convex for r in rels)
    data = {
        "type": rd.name,
        "max_height": h,
        "count": len(rows),
        "convexity_violations": sum(not r.convex for r in rels),
        "residual_failures": sum(not r.residual_ok for r in rels),
        "largest_gram_sizes": sorted((r.gram_size for r in rels), reverse=True)[:5],
        "relations": rows,
    }
    csv_rows = [{**r, "expansion": json.dumps(r["expansion"], sort_keys=True)} for r in rows]
    return data, ok, (["left", "right", "scalar", "expansion", "gram_size", "residual_ok", "convex"], csv_rows)


def cmd_theta(args):
    rd = _rd(args)
    P = engine(rd)
    d = args.max_degree if args.max_degree is not None else 2
    th = theta(P, d, c_beta(P))
    rows = [
        {"degree": sum(P.mono_weight(m)), "F": P.mono_label(m).replace("E", "F"), "E": P.mono_label(m), "coeff": _coeff(c)}
        for m, c in th.monomial_terms
    ]
    data = {
        "type": rd.name,
        "max_degree": d,
        "c_beta": {rv.label: _coeff(c) for rv, c in zip(P.roots, c_beta(P))},
        "terms": rows,
    }
    return data, True, (["degree", "F", "E", "coeff"], rows)


def _weights(args, rank):
    try:
        la = parse_weight(args.lambdaA, rank)
        lb = parse_weight(args.lambdaB, rank)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(str(exc)) from exc
    return la, lb


def _weight_json(w):
    return GENERIC if w == GENERIC else [str(x) for x in w]


def _options(args, rd) -> Options:
    la, lb = _weights(args, rd.rank)
    return Options(
        max_height=args.max_height,
        max_degree=args.max_degree,
        depth=args.depth,
        lambda_a=la,
        lambda_b=lb,
        cache=args.cache,
        threads=max(1, args.threads),
        timings=args.timings,
    )


def cmd_rmatrix_check(args):
    rd = _rd(args)
    opts = _options(args, rd)
    rep = run_suites(rd, ["rmatrix"], opts)[0]
    data = {
        "type": rd.name,
        "lambdaA": _weight_json(opts.lambda_a),
        "lambdaB": _weight_json(opts.lambda_b),
        "report": rep.to_json(),
    }
    return data, rep.ok, (["name", "status", "detail"], rep.checks)


def cmd_verify(args):
    rd = _rd(args)
    opts = _options(args, rd)
    names = list(SUITES) if args.suite == "all" else [args.suite]
    reports = run_suites(rd, names, opts)
    data = {
        "type": rd.name,
        "status": "pass" if all(r.ok for r in reports) else "fail",
        "suites": [r.to_json() for r in reports],
    }
    rows = [{"suite": r.suite, **c} for r in reports for c in r.checks]
    return data, all(r.ok for r in reports), (["suite", "name", "status", "detail"], rows)


COMMANDS = {
    "roots": cmd_roots,
    "pairing-matrix": cmd_pairing_matrix,
    "good-words": cmd_good_words,
    "relations": cmd_relations,
    "theta": cmd_theta,
    "rmatrix-check": cmd_rmatrix_check,
    "verify": cmd_verify,
}


# ------------------------------------------------------------------ plumbing


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--type", default="E6", help="A<n>, D<n>, E6, E7 or E8")
    common.add_argument("--max-height", type=int, default=None)
    common.add_argument("--max-degree", type=int, default=None)
    common.add_argument("--depth", type=int, default=None)
    common.add_argument("--lambdaA", default=GENERIC, help="comma-separated rationals, or 'generic'")
    common.add_argument("--lambdaB", default=GENERIC, help="comma-separated rationals, or 'generic'")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--out", default=None)
    common.add_argument("--cache", default=None, help="pairing cache file")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--timings", action="store_true", help="include wall times (output is then not reproducible)")

    parser = argparse.ArgumentParser(prog="rsquantum", description="Two-parameter quantum groups of simply-laced type.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name == "good-words":
            p.add_argument("--candidates", choices=("factors", "all"), default="factors")
        if name == "verify":
            p.add_argument("--suite", choices=SUITES + ("all",), required=True)
    return parser


def render(data, table, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(data, sort_keys=True, indent=2) + "\n"
    header, rows = table
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=header, extrasaction="ignore", lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: (json.dumps(v) if isinstance(v, (list, dict)) else v) for k, v in row.items()})
    return buf.getvalue()


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        data, ok, table = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"rsquantum: error: {exc}", file=sys.stderr)
        return 2
    text = render(data, table, args.format)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if ok else 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
