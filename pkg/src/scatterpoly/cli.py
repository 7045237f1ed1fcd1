"""Command-line front end: single checks, family scans, verification suites.

Exit codes: 0 success, 1 usage or parse problem, 2 field construction problem,
3 verification failure (including any criteria/oracle disagreement, which is
treated as a hard error rather than a report row).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import time

from .criteria import CriterionVerdict, applicable_criteria
from .errors import (
    BadIndex,
    EvenCharacteristicRejected,
    FieldTooLarge,
    HypothesisViolated,
    NonPrime,
    NotABinomial,
    NotADivisor,
    ParseError,
    ScatterpolyError,
    ZeroPolynomial,
)
from .field import DEFAULT_CAP, FieldCtx, FieldParams, build_field, modulus_text
from .linpoly import parse_poly, parse_poly_dlogs
from .scatter import ScatterReport, is_exceptional_desk, is_scattered_bruteforce
from .verify import SUITES, run_suites

_CSV_COLUMNS = ["p", "m", "n", "poly", "index", "criteria", "oracle", "agree",
                "witness_y", "witness_z"]

_USAGE_ERRORS = (ParseError, BadIndex, ZeroPolynomial, NotADivisor,
                 NotABinomial, HypothesisViolated, ValueError, KeyError)
_CONSTRUCTION_ERRORS = (NonPrime, FieldTooLarge, EvenCharacteristicRejected)


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would sys.exit(2); we want exit 1
        raise ParseError(message)


def _default_cap() -> int:
    return int(os.environ.get("SCATTERPOLY_CAP", DEFAULT_CAP))


def _parse_int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip() != ""]
    except ValueError as exc:
        raise ParseError(f"bad integer list {text!r}") from exc


# ---------------------------------------------------------------------------
# JSON-friendly views


def _fingerprint(ctx: FieldCtx | None, params: FieldParams) -> dict:
    base = {
        "p": params.p,
        "m": params.m,
        "n": params.n,
        "q": params.q,
        "extension_degree": params.degree,
        "size": params.size,
        "order": params.order,
        "projective_points": params.subfield_index,
        "materialized": ctx is not None,
    }
    if ctx is not None:
        base.update({
            "modulus": list(ctx.modulus),
            "modulus_text": modulus_text(ctx),
            "modulus_encoding": ctx.modulus_encoding,
            "gamma_coeffs": list(ctx.gamma.coeffs),
            "gamma_encoding": ctx.gamma_encoding,
            "factorization": [[prime, exp] for prime, exp in ctx.factorization],
        })
    return base


def _element_view(elem) -> dict:
    return {"dlog": elem.dlog, "coeffs": list(elem.coeffs), "text": str(elem)}


def _report_view(report: ScatterReport) -> dict:
    out = {
        "scattered": report.scattered,
        "index": report.index,
        "projective_points": report.projective_points,
        "distinct_ratio_values": report.distinct_ratio_values,
        "witness": None,
        "deciding_pair_count": report.deciding_pair_count,
    }
    if report.witness is not None:
        out["witness"] = {"y": _element_view(report.witness[0]),
                          "z": _element_view(report.witness[1])}
    return out


def _verdict_view(v: CriterionVerdict) -> dict:
    return {
        "source": v.source,
        "applicable": v.applicable,
        "verdict": v.verdict,
        "hypotheses": [{"name": h.name, "satisfied": h.satisfied,
                        "detail": h.detail} for h in v.hypotheses],
        "index_verdicts": [[t, bool(val)] for t, val in v.index_verdicts],
        "notes": list(v.notes),
    }


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


# ---------------------------------------------------------------------------
# field-info


def cmd_field_info(args) -> int:
    params = FieldParams(args.p, args.m, args.n)
    ctx = build_field(args.p, args.m, args.n, cap=args.cap)
    info = _fingerprint(ctx, params)
    if args.output == "json":
        print(_dump(info))
        return 0
    factor_text = " * ".join(f"{prime}^{exp}" if exp > 1 else str(prime)
                             for prime, exp in ctx.factorization) or "1"
    print(f"field F_{params.q}^{params.n} = F_{params.p}^{params.degree} "
          f"(p={params.p}, m={params.m}, n={params.n})")
    print(f"modulus: {modulus_text(ctx)} (encoding {ctx.modulus_encoding})")
    print(f"generator g: coeffs {list(ctx.gamma.coeffs)} "
          f"(encoding {ctx.gamma_encoding}), order {ctx.order}")
    print(f"group order: {ctx.order} = {factor_text}")
    print(f"subfield index (q^n-1)/(q-1): {ctx.subfield_index}")
    return 0


# ---------------------------------------------------------------------------
# check


def _criteria_cell(verdicts: list[CriterionVerdict], t: int) -> str:
    for v in verdicts:
        value = v.verdict_for_index(t)
        if value is not None:
            return "scattered" if value else "not-scattered"
    return "n/a"


def _check_row(params, poly_text_value, t, verdicts, report) -> dict:
    witness_y = witness_z = ""
    oracle_cell = ""
    if report is not None:
        oracle_cell = "scattered" if report.scattered else "not-scattered"
        if report.witness is not None:
            witness_y, witness_z = str(report.witness[0]), str(report.witness[1])
    criteria_cell = _criteria_cell(verdicts, t)
    agree = ""
    if report is not None and criteria_cell != "n/a":
        agree = "yes" if (criteria_cell == oracle_cell) else "no"
    return {
        "p": params.p, "m": params.m, "n": params.n,
        "poly": poly_text_value, "index": t,
        "criteria": criteria_cell, "oracle": oracle_cell, "agree": agree,
        "witness_y": witness_y, "witness_z": witness_z,
    }


def _print_csv(rows) -> None:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=_CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    sys.stdout.write(buf.getvalue())


def build_check_envelope(args) -> tuple[dict, bool]:
    """Run one check request; returns (envelope, disagreement_flag)."""
    params = FieldParams(args.p, args.m, args.n)
    t = args.index
    if not 0 <= t < params.n:
        raise BadIndex(f"index {t} out of range 0..{params.n - 1}")
    m_list = _parse_int_list(args.m_list) if args.m_list else []

    timing: dict[str, float] = {}
    ctx = None
    need_field = args.mode in ("oracle", "both") or bool(m_list)
    if params.size <= args.cap:
        t0 = time.perf_counter()
        ctx = build_field(args.p, args.m, args.n, cap=args.cap)
        timing["build_s"] = time.perf_counter() - t0
    elif need_field:
        raise FieldTooLarge(params.size, args.cap)

    if ctx is not None:
        poly = parse_poly(ctx, args.poly)
        terms = poly.dlog_terms()
        poly_norm = str(poly)
    else:
        terms = parse_poly_dlogs(params.n, params.order, args.poly)
        poly_norm = ",".join(f"{r}:g^{k}" for r, k in terms)

    verdicts: list[CriterionVerdict] = []
    if args.mode in ("criteria", "both"):
        t0 = time.perf_counter()
        verdicts = applicable_criteria(params, terms, t)
        timing["criteria_s"] = time.perf_counter() - t0

    report = None
    if args.mode in ("oracle", "both"):
        t0 = time.perf_counter()
        report = is_scattered_bruteforce(ctx, poly, t, jobs=args.jobs,
                                         census=args.census)
        timing["oracle_s"] = time.perf_counter() - t0

    tower = []
    if m_list:
        t0 = time.perf_counter()
        for verdict in is_exceptional_desk(args.p, args.m, args.n, terms, t,
                                           m_list, cap=args.cap, jobs=args.jobs):
            tower.append({
                "m": verdict.m,
                "extension_degree": verdict.extension_degree,
                "field_size": verdict.field_size,
                "report": _report_view(verdict.report),
            })
        timing["tower_s"] = time.perf_counter() - t0

    disagreement = False
    if report is not None:
        for v in verdicts:
            value = v.verdict_for_index(t)
            if value is not None and value != report.scattered:
                disagreement = True

    envelope = {
        "request": {
            "command": "check",
            "p": args.p, "m": args.m, "n": args.n,
            "poly": args.poly, "poly_normalized": poly_norm,
            "index": t, "mode": args.mode, "census": args.census,
            "jobs": args.jobs, "cap": args.cap, "m_list": m_list,
        },
        "field": _fingerprint(ctx, params),
        "results": {
            "criteria": [_verdict_view(v) for v in verdicts],
            "oracle": _report_view(report) if report is not None else None,
            "agreement": (None if report is None or not verdicts
                          else not disagreement),
            "tower": tower,
        },
        "timing": timing,
    }
    return envelope, disagreement


def _row_from_envelope(envelope: dict) -> dict:
    req = envelope["request"]
    res = envelope["results"]
    criteria_cell = "n/a"
    for v in res["criteria"]:
        for t, val in v["index_verdicts"]:
            if t == req["index"]:
                criteria_cell = "scattered" if val else "not-scattered"
                break
        if criteria_cell != "n/a":
            break
    oracle = res["oracle"]
    oracle_cell = "" if oracle is None else (
        "scattered" if oracle["scattered"] else "not-scattered")
    witness_y = witness_z = ""
    if oracle is not None and oracle["witness"] is not None:
        witness_y = oracle["witness"]["y"]["text"]
        witness_z = oracle["witness"]["z"]["text"]
    agree = ""
    if oracle is not None and criteria_cell != "n/a":
        agree = "yes" if criteria_cell == oracle_cell else "no"
    return {
        "p": req["p"], "m": req["m"], "n": req["n"],
        "poly": req["poly_normalized"], "index": req["index"],
        "criteria": criteria_cell, "oracle": oracle_cell, "agree": agree,
        "witness_y": witness_y, "witness_z": witness_z,
    }


def cmd_check(args) -> int:
    envelope, disagreement = build_check_envelope(args)
    if args.output == "json":
        print(_dump(envelope))
    elif args.output == "csv":
        _print_csv([_row_from_envelope(envelope)])
    else:
        _print_check_text(envelope)
    if disagreement:
        print("error: criteria and oracle disagree; this falsifies a criterion",
              file=sys.stderr)
        return 3
    return 0


def _print_check_text(envelope) -> None:
    req = envelope["request"]
    res = envelope["results"]
    print(f"check {req['poly_normalized']} over "
          f"F_{envelope['field']['q']}^{req['n']} at index {req['index']}")
    for v in res["criteria"]:
        if v["applicable"]:
            per_index = ", ".join(f"@{t}: {'scattered' if val else 'not scattered'}"
                                  for t, val in v["index_verdicts"])
            if not per_index:
                per_index = "holds" if v["verdict"] else "does not hold"
            print(f"  criterion {v['source']}: {per_index}")
        else:
            missing = [h["name"] for h in v["hypotheses"] if not h["satisfied"]]
            print(f"  criterion {v['source']}: not applicable ({', '.join(missing)})")
    oracle = res["oracle"]
    if oracle is not None:
        line = (f"  oracle: {'scattered' if oracle['scattered'] else 'not scattered'} "
                f"({oracle['distinct_ratio_values']}/{oracle['projective_points']} "
                f"distinct ratio values)")
        if oracle["deciding_pair_count"] is not None:
            line += f", {oracle['deciding_pair_count']} deciding pairs"
        print(line)
        if oracle["witness"] is not None:
            print(f"  witness: y={oracle['witness']['y']['text']}, "
                  f"z={oracle['witness']['z']['text']}")
    if res["agreement"] is not None:
        print(f"  agreement: {'yes' if res['agreement'] else 'NO'}")
    for step in res["tower"]:
        verdict = "scattered" if step["report"]["scattered"] else "not scattered"
        print(f"  tower m={step['m']} (degree {step['extension_degree']}, "
              f"size {step['field_size']}): {verdict}")


# ---------------------------------------------------------------------------
# scan


def _scan_targets(args, ctx, params):
    """Yield (poly_text, dlog_terms, indices) per family member."""
    if args.indices and args.indices != "own":
        explicit = _parse_int_list(args.indices) if args.indices != "all" else None
    else:
        explicit = "own"

    def indices_for(own):
        if explicit == "own":
            return own
        if explicit is None:
            return list(range(params.n))
        return explicit

    if args.family == "pseudoregulus":
        for r in range(params.n):
            terms = ((r, 0),)
            yield f"{r}:g^0", terms, indices_for(list(range(params.n)))
    elif args.family == "binomial":
        coeffs = _parse_int_list(args.coeff_dlogs) if args.coeff_dlogs else \
            ([0, params.order // 2] if params.order % 2 == 0 else [0])
        for r1 in range(1, params.n):
            bound = params.q**r1 - 1
            for r2 in range(r1 + 1, params.n):
                for k1 in coeffs:
                    for k2 in coeffs:
                        order2 = params.order // math.gcd(params.order, k2)
                        if bound % order2 != 0:
                            continue
                        terms = ((r1, k1 % params.order), (r2, k2 % params.order))
                        text = f"{r1}:g^{terms[0][1]},{r2}:g^{terms[1][1]}"
                        yield text, terms, indices_for([r1, r2])
    elif args.family == "custom":
        if not args.poly:
            return
        for text in args.poly:
            if ctx is not None:
                poly = parse_poly(ctx, text)
                terms = poly.dlog_terms()
            else:
                terms = parse_poly_dlogs(params.n, params.order, text)
            own = sorted({r for r, _ in terms})
            yield text, terms, indices_for(own)
    else:
        raise ParseError(f"unknown family {args.family!r}")


def cmd_scan(args) -> int:
    params = FieldParams(args.p, args.m, args.n)
    ctx = build_field(args.p, args.m, args.n, cap=args.cap) \
        if params.size <= args.cap else None

    rows = []
    disagreement = False
    for text, terms, indices in _scan_targets(args, ctx, params):
        poly = None
        if ctx is not None:
            poly = parse_poly(ctx, text)
        for t in indices:
            if not 0 <= t < params.n:
                raise BadIndex(f"index {t} out of range 0..{params.n - 1}")
            verdicts = applicable_criteria(params, terms, t)
            report = None
            if poly is not None:
                report = is_scattered_bruteforce(ctx, poly, t, jobs=args.jobs)
            row = _check_row(params, text, t, verdicts, report)
            if row["agree"] == "no":
                disagreement = True
            rows.append(row)

    if args.output == "json":
        print(_dump({"request": {"command": "scan", "family": args.family,
                                 "p": args.p, "m": args.m, "n": args.n},
                     "rows": rows}))
    elif args.output == "text":
        for row in rows:
            print(f"{row['poly']} @ {row['index']}: criteria={row['criteria']} "
                  f"oracle={row['oracle'] or 'skipped'}"
                  + (f" agree={row['agree']}" if row["agree"] else ""))
    else:
        _print_csv(rows)
    if disagreement:
        print("error: criteria and oracle disagree somewhere in the scan",
              file=sys.stderr)
        return 3
    return 0


# ---------------------------------------------------------------------------
# verify


def cmd_verify(args) -> int:
    try:
        results = run_suites(args.suite, jobs=args.jobs)
    except KeyError as exc:
        raise ParseError(str(exc)) from exc
    if args.output == "json":
        print(_dump([{
            "name": r.name, "passed": r.passed, "checks": r.checks,
            "failures": r.failures, "seconds": r.seconds, "metrics": r.metrics,
        } for r in results]))
    else:
        for r in results:
            print(r.line())
        total = sum(r.checks for r in results)
        failed = [r.name for r in results if not r.passed]
        print(f"{len(results)} suites, {total} checks, "
              f"{'all passed' if not failed else 'FAILED: ' + ', '.join(failed)}")
    return 0 if all(r.passed for r in results) else 3


# ---------------------------------------------------------------------------


def build_parser() -> _Parser:
    parser = _Parser(prog="scatterpoly",
                     description="Scatteredness of linearized polynomials over "
                                 "small finite fields: exhaustive oracle, fast "
                                 "criteria, verification suites.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_field_args(p, cap=True):
        p.add_argument("--p", type=int, required=True, help="characteristic")
        p.add_argument("--m", type=int, default=1, help="q = p^m (default 1)")
        p.add_argument("--n", type=int, required=True, help="extension degree over F_q")
        if cap:
            p.add_argument("--cap", type=int, default=_default_cap(),
                           help="max field size for table construction "
                                "(env SCATTERPOLY_CAP)")

    info = sub.add_parser("field-info", help="print the field fingerprint")
    add_field_args(info)
    info.add_argument("--output", choices=("text", "json"), default="text")
    info.set_defaults(func=cmd_field_info)

    check = sub.add_parser("check", help="decide one polynomial at one index")
    add_field_args(check)
    check.add_argument("--poly", required=True,
                       help="terms r:g^k or r:[c0,c1,...], comma separated")
    check.add_argument("--index", type=int, required=True)
    check.add_argument("--mode", choices=("oracle", "criteria", "both"),
                       default="both")
    check.add_argument("--output", choices=("text", "json", "csv"), default="text")
    check.add_argument("--jobs", type=int, default=1)
    check.add_argument("--census", action="store_true",
                       help="also count deciding pairs")
    check.add_argument("--m-list", dest="m_list", default="",
                       help="extension multipliers for the tower oracle, e.g. 1,2")
    check.set_defaults(func=cmd_check)

    scan = sub.add_parser("scan", help="sweep a family and cross-check")
    add_field_args(scan)
    scan.add_argument("--family", choices=("pseudoregulus", "binomial", "custom"),
                      required=True)
    scan.add_argument("--poly", action="append", default=[],
                      help="custom family member (repeatable)")
    scan.add_argument("--indices", default="own",
                      help="'all', 'own' (family-specific), or a comma list")
    scan.add_argument("--coeff-dlogs", dest="coeff_dlogs", default="",
                      help="coefficient dlogs for the binomial family "
                           "(default: 0 and the dlog of -1)")
    scan.add_argument("--output", choices=("csv", "json", "text"), default="csv")
    scan.add_argument("--jobs", type=int, default=1)
    scan.set_defaults(func=cmd_scan)

    verify = sub.add_parser("verify", help="run a named verification suite")
    verify.add_argument("--suite", required=True,
                        help=f"one of: {', '.join(SUITES)}")
    verify.add_argument("--jobs", type=int, default=1)
    verify.add_argument("--output", choices=("text", "json"), default="text")
    verify.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _USAGE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except _CONSTRUCTION_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ScatterpolyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
