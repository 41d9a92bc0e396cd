"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 guard violation or insufficient truncation order.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from .exact import TruncSeries
from .genfun import catalan_series, default_order, dseries, fmr_equation, fmr_series
from .hankel import InsufficientOrderError, detect_periodicity, hankel_sequence
from .paths import GuardError, HeightSet, count_avoiding, dump_paths, iter_dyck, MAX_SEMILENGTH
from .tau import tau_chain
from .verify import (
    MAX_M,
    predicted_pattern,
    verify_bijection,
    verify_classical,
    verify_first_return_identity,
    verify_oracles,
    verify_theorem,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3
JOBS_ENV = "DYCKHANKEL_JOBS"

CASE_SCHEMA = {
    "type": "object",
    "required": ["m", "r", "n_max", "predicted", "computed", "tau_chain", "status"],
    "properties": {
        "m": {"type": "integer", "minimum": 2},
        "r": {"type": "integer", "minimum": 1},
        "n_max": {"type": "integer", "minimum": 1},
        "predicted": {"type": "array", "items": {"type": "string", "pattern": r"^-?\d+$"}},
        "computed": {"type": "array", "items": {"type": "string", "pattern": r"^-?\d+(/\d+)?$"}},
        "tau_chain": {
            "type": "object",
            "required": ["delta", "sigma", "steps"],
            "properties": {
                "delta": {"type": ["integer", "null"]},
                "sigma": {"type": ["integer", "null"], "enum": [1, -1, None]},
                "steps": {"type": "array", "items": {"type": "object"}},
            },
        },
        "status": {"enum": ["pass", "fail"]},
    },
}

CASE_CSV_HEADER = ["m", "r", "n_max", "status", "first_mismatch", "delta", "sigma",
                   "predicted", "computed"]


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    subcommand: str
    m: int | None = None
    r: int | None = None
    m_min: int = 2
    m_max: int = 8
    order: int | None = None
    n_max: int | None = None
    fmt: str = "plain"
    output: str | None = None
    jobs: int = 1
    seed: int = 0
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        for name in ("m", "m_max"):
            v = getattr(self, name)
            if v is not None and v > MAX_M:
                raise GuardError(f"{name} = {v} exceeds the limit {MAX_M}")
        if self.m is not None and self.m < 2:
            raise UsageError(f"m must be >= 2, got {self.m}")
        if self.m_min < 2:
            raise UsageError(f"m-min must be >= 2, got {self.m_min}")
        if self.m_max < self.m_min:
            raise UsageError("m-max must be >= m-min")
        if self.jobs < 1:
            raise UsageError("jobs must be >= 1")


def _rat(c) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _default_jobs() -> int:
    raw = os.environ.get(JOBS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise UsageError(f"{JOBS_ENV}={raw!r} is not an integer")


def parse_series(spec: str, order: int) -> TruncSeries:
    """fmr:m=5,r=3 | catalan | set:<heightset>."""
    if spec == "catalan":
        return catalan_series(order)
    if spec.startswith("fmr:"):
        mt = re.fullmatch(r"m=(\d+),r=(\d+)", spec[4:].replace(" ", ""))
        if not mt:
            raise UsageError(f"bad series spec {spec!r}; expected fmr:m=<int>,r=<int>")
        m, r = int(mt[1]), int(mt[2])
        if m > MAX_M:
            raise GuardError(f"m = {m} exceeds the limit {MAX_M}")
        if m < 2 or not 1 <= r <= m:
            raise UsageError(f"need m >= 2 and 1 <= r <= m in {spec!r}")
        return fmr_series(m, r, order)
    if spec.startswith("set:"):
        try:
            S = HeightSet.parse(spec[4:])
        except ValueError as e:
            raise UsageError(str(e))
        return dseries(S, order)
    raise UsageError(f"unknown series spec {spec!r}")


def _series_m(spec: str) -> int:
    mt = re.search(r"m=(\d+)", spec)
    return int(mt[1]) if mt else 8


# ---------------------------------------------------------------------------
# commands; each returns (text, exit code)


def cmd_count(args) -> tuple[str, int]:
    if args.n > MAX_SEMILENGTH:
        raise GuardError(f"n = {args.n} exceeds the enumeration limit {MAX_SEMILENGTH}")
    if args.n < 0:
        raise UsageError("n must be >= 0")
    try:
        S = HeightSet.parse(args.set)
    except ValueError as e:
        raise UsageError(str(e))
    count = count_avoiding(args.n, S)
    if args.dump_paths:
        with open(args.dump_paths, "w") as fh:
            fh.write(dump_paths(iter_dyck(args.n, S)))
    if args.format == "json":
        return json.dumps({"n": args.n, "set": str(S), "count": str(count)}, indent=2), EXIT_OK
    if args.format == "csv":
        return _csv([["n", "set", "count"], [args.n, str(S), count]]), EXIT_OK
    return str(count), EXIT_OK


def cmd_hankel(args) -> tuple[str, int]:
    if args.n < 1 or args.k < 0:
        raise UsageError("need n >= 1 and k >= 0")
    order = args.order if args.order is not None else max(default_order(_series_m(args.series)),
                                                          2 * (args.n - 1) + args.k)
    if order < 0:
        raise UsageError("order must be >= 0")
    F = parse_series(args.series, order)
    values = hankel_sequence(F, args.k, args.n)
    per = detect_periodicity(values)
    if args.format == "json":
        rec = {"series": args.series, "k": args.k, "n": args.n, "order": order,
               "values": [_rat(v) for v in values],
               "periodicity": {"preperiod": per.preperiod, "period": per.period,
                               "word": [_rat(w) for w in per.word], "status": per.status,
                               "star": per.star()}}
        return json.dumps(rec, indent=2), EXIT_OK
    if args.format == "csv":
        rows = [["series", "k", "n", "value"]]
        rows += [[args.series, args.k, i, _rat(v)] for i, v in enumerate(values, start=1)]
        return _csv(rows), EXIT_OK
    lines = [" ".join(_rat(v) for v in values)]
    if per.confirmed:
        lines.append(f"preperiod={per.preperiod} period={per.period} {per.star()}")
    else:
        lines.append("period: inconclusive")
    return "\n".join(lines), EXIT_OK


def cmd_tau(args) -> tuple[str, int]:
    cfg = RunConfig("tau", m=args.m, r=args.r, fmt=args.format)
    if not 1 <= args.r <= args.m:
        raise UsageError(f"need 1 <= r <= m, got r={args.r}")
    rep = tau_chain(fmr_equation(cfg.m, cfg.r), max_steps=args.max_steps)
    code = EXIT_OK if rep.cycle else EXIT_FAIL
    if args.format == "json":
        rec = {"m": cfg.m, "r": cfg.r, **rep.to_record(), "notes": rep.notes}
        return json.dumps(rec, indent=2), code
    if args.format == "csv":
        rows = [["index", "d", "k", "u", "v", "case", "drop", "sign"]]
        for i, eq in enumerate(rep.equations):
            rel = rep.relations[i] if i < len(rep.relations) else None
            rows.append([i, eq.d, eq.k, str(eq.u), str(eq.v),
                         rel.case if rel else "", rel.drop if rel else "", rel.sign if rel else ""])
        return _csv(rows), code
    lines = []
    for i, eq in enumerate(rep.equations):
        lines.append(f"F{i}: F = x^{eq.d} / (u + x^{eq.k} v F),  u = {eq.u},  v = {eq.v}")
        if i < len(rep.relations):
            rel = rep.relations[i]
            lines.append(f"   case {rel.case}: H_n(F{i}) = {rel.sign:+d} H_(n-{rel.drop})(F{i + 1})")
    if rep.cycle:
        c = rep.cycle
        lines.append(f"{rep.steps} steps, cycle at F{c.start}, delta={c.delta}, sigma={c.sigma:+d}")
    lines += rep.notes
    return "\n".join(lines), code


def _verify_theorem_records(cfg: RunConfig) -> list[dict]:
    recs = verify_theorem(range(cfg.m_min, cfg.m_max + 1), cfg.extra.get("mode", "both"), cfg.jobs)
    return [r for r in recs if r["status"] == "fail"] + [r for r in recs if r["status"] == "pass"]


def _case_row(rec: dict) -> list:
    tc = rec.get("tau_chain", {})
    return [rec["m"], rec["r"], rec["n_max"], rec["status"], rec.get("first_mismatch", ""),
            tc.get("delta", ""), tc.get("sigma", ""), " ".join(rec["predicted"]),
            " ".join(rec["computed"])]


def cmd_verify(args) -> tuple[str, int]:
    cfg = RunConfig("verify", m_min=args.m_min, m_max=args.m_max, fmt=args.format,
                    jobs=args.jobs if args.jobs is not None else _default_jobs(),
                    seed=args.seed, extra={"mode": args.mode})
    scopes = ["theorem", "classical", "bijection"] if args.scope == "all" else [args.scope]
    cases: list[dict] = []
    checks = []
    if "theorem" in scopes:
        cases = _verify_theorem_records(cfg)
        checks.append(verify_oracles())
    if "classical" in scopes:
        checks += verify_classical(seed=cfg.seed)
    if "bijection" in scopes:
        checks += verify_bijection()
        checks.append(verify_first_return_identity())
    failed = any(r["status"] == "fail" for r in cases) or any(not c.passed for c in checks)
    code = EXIT_FAIL if failed else EXIT_OK
    check_recs = [{"name": c.name, "cases": c.cases, "status": "pass" if c.passed else "fail",
                   "failures": c.failures} for c in checks]
    check_recs = [c for c in check_recs if c["status"] == "fail"] + \
                 [c for c in check_recs if c["status"] == "pass"]
    if args.format == "json":
        out = {"scope": args.scope, "seed": cfg.seed, "status": "fail" if failed else "pass",
               "cases": cases, "checks": check_recs}
        return json.dumps(out, indent=2), code
    if args.format == "csv":
        return _csv([CASE_CSV_HEADER] + [_case_row(r) for r in cases]), code
    lines = []
    for r in cases:
        tc = r.get("tau_chain", {})
        head = (f"m={r['m']} r={r['r']}: {r['status'].upper()}  "
                f"{_star(r['m'], r['r'])}  delta={tc.get('delta')} sigma={tc.get('sigma')}")
        lines.append(head)
        lines += [f"    {p}" for p in r["problems"]]
        lines += [f"    warning: {w}" for w in r["warnings"]]
    for c in check_recs:
        lines.append(f"{c['name']}: {c['cases']} cases, {c['status'].upper()}")
        lines += [f"    {f}" for f in c["failures"][:10]]
    n_fail = sum(r["status"] == "fail" for r in cases) + sum(c["status"] == "fail" for c in check_recs)
    lines.append(f"{'FAIL' if failed else 'PASS'}: {len(cases)} theorem cases, "
                 f"{len(check_recs)} identity checks, {n_fail} failing")
    return "\n".join(lines), code


def _star(m: int, r: int) -> str:
    return "(" + ",".join(str(w) for w in predicted_pattern(m, r).word) + ")*"


def _csv(rows) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue().rstrip("\n")


# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="dyckhankel", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--format", choices=["plain", "json", "csv"], default="plain")
        sp.add_argument("--output", help="write to this file instead of stdout")

    c = sub.add_parser("count", help="number of Dyck paths of semilength n avoiding a set of peak heights")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--set", required=True, help="finite:1,3 | periodic:m=5,V=1,2,4 | parts joined by +")
    c.add_argument("--dump-paths", metavar="FILE", help="also write the admissible paths to FILE")
    common(c)

    h = sub.add_parser("hankel", help="Hankel determinants of a series")
    h.add_argument("--series", required=True, help="fmr:m=<m>,r=<r> | catalan | set:<heightset>")
    h.add_argument("--n", type=int, required=True, help="largest determinant size")
    h.add_argument("--k", type=int, default=0, help="shift (0 ordinary, 1 shifted)")
    h.add_argument("--order", type=int, help="truncation order of the series")
    common(h)

    t = sub.add_parser("tau", help="tau chain of F^{m,r}")
    t.add_argument("--m", type=int, required=True)
    t.add_argument("--r", type=int, required=True)
    t.add_argument("--max-steps", type=int, default=8)
    common(t)

    v = sub.add_parser("verify", help="run the verification suites")
    v.add_argument("--scope", choices=["theorem", "classical", "bijection", "all"], default="all")
    v.add_argument("--m-min", type=int, default=2)
    v.add_argument("--m-max", type=int, default=8)
    v.add_argument("--mode", choices=["direct", "tau", "both"], default="both")
    v.add_argument("--jobs", type=int, help=f"worker processes (default ${JOBS_ENV} or 1)")
    v.add_argument("--seed", type=int, default=0)
    common(v)
    return p


COMMANDS = {"count": cmd_count, "hankel": cmd_hankel, "tau": cmd_tau, "verify": cmd_verify}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        text, code = COMMANDS[args.command](args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (GuardError, InsufficientOrderError) as e:
        kind = "insufficient order" if isinstance(e, InsufficientOrderError) else "guard"
        print(f"error ({kind}): {e}", file=sys.stderr)
        return EXIT_GUARD
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
