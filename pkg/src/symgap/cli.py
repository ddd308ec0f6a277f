"""Command-line front end: ``analyze``, ``table`` and ``verify``.

Exit codes: 0 all checks pass, 1 a verification failed, 2 invalid input,
3 the Hodge oracle was skipped because the cochain space exceeds the cap.
"""

from __future__ import annotations

import argparse
import ast
import json
import math
import operator
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import yaml

from . import __version__
from .chevalley import ConstructionError, build_algebra
from .homology import DEFAULT_ORACLE_CAP
from .kostant import HasseWord2, harmonic_module, harmonic_modules, is_hasse_word
from .model import (WeightLatticeSpec, build_canonical_model, canonical_exclusion,
                    split_real_sign_check, twistor_descend)
from .parabolic import build_parabolic, parse_cross
from .prolong import module_bound
from .rootsystem import InvalidInput, SimpleType
from .suite import parse_checks, run_suite

SCHEMA = "symgap.report/1"

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_SKIPPED = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InvalidInput(message)


@dataclass(frozen=True)
class AnalysisRequest:
    algebra: SimpleType
    cross: frozenset
    module: HasseWord2 | None = None
    real_form: str = "complex"
    lattice: WeightLatticeSpec | None = None
    checks: tuple = ()
    format: str = "text"


def _column_error(label: str, text: str, pattern: str) -> InvalidInput:
    """Point at the first character of ``text`` that cannot start a valid parse."""
    for col in range(len(text), -1, -1):
        if re.fullmatch(pattern, text[:col]):
            break
    return InvalidInput(f"{label}: cannot parse {text!r} at column {col + 1}")


def parse_algebra(text: str) -> SimpleType:
    if not re.fullmatch(r"\s*[A-Ga-g]_?\d+\s*", text):
        raise _column_error("--algebra", text, r"\s*([A-Ga-g](_?\d*)?)?")
    return SimpleType.parse(text)


def parse_nodes(text: str, rank: int) -> frozenset:
    if not re.fullmatch(r"\s*(P_?\{?)?\d+(\s*,\s*\d+)*\}?\s*", text):
        raise _column_error("--cross", text, r"\s*(P_?\{?)?(\d+(\s*,\s*\d+)*(\s*,)?)?")
    nodes = parse_cross(text)
    bad = [i for i in sorted(nodes) if not 1 <= i <= rank]
    if bad:
        raise InvalidInput(f"--cross: node {bad[0]} out of range 1..{rank}")
    if not nodes:
        raise InvalidInput("--cross: the crossed-node set must be nonempty")
    return nodes


def make_request(args) -> AnalysisRequest:
    t = parse_algebra(args.algebra)
    cross = parse_nodes(args.cross, t.rank)
    module = HasseWord2.parse(args.module) if getattr(args, "module", None) else None
    real = getattr(args, "real", "complex")
    lattice = getattr(args, "lattice", None)
    if lattice is not None and real != "split":
        raise InvalidInput("--lattice is only meaningful with --real split")
    spec = None
    if real == "split":
        spec = WeightLatticeSpec.parse(lattice or "sc")
        spec.check_type(t)
    checks = parse_checks(getattr(args, "checks", None) or "all")
    return AnalysisRequest(t, cross, module, real, spec, checks, args.format)


# -- analyze -----------------------------------------------------------------------

def cmd_analyze(req: AnalysisRequest) -> tuple[dict, int]:
    pd = build_parabolic(build_algebra(req.algebra), req.cross)
    modules = harmonic_modules(pd)
    if req.module is not None:
        if not is_hasse_word(pd, req.module):
            raise InvalidInput(f"--module: {req.module} is not a length-two Hasse word "
                               f"for crossed nodes {sorted(pd.cross)}")
        modules = [harmonic_module(pd, req.module)]
    excluded = canonical_exclusion(pd)
    status = EXIT_OK
    rows = []
    for m in modules:
        row = m.to_json()
        row["regular"] = m.regular
        if m.regular:
            b = module_bound(pd, m)
            row["U_mu"] = b.U_mu
            row["a0_dim"] = b.a0_dim
            row["prolongation_dims"] = {str(k): v for k, v in b.prolongation_dims.items()}
            row["twistor"] = sorted(twistor_descend(pd.alg, pd.cross, m.w))
            if excluded:
                row["model"] = {"excluded": excluded}
            else:
                try:
                    am = build_canonical_model(pd, m)
                    row["model"] = {"f_dim": am.dim, "kappa_support": am.kappa_support(),
                                    "checks": {k: r.passed for k, r in am.report.checks.items()}}
                except ConstructionError as exc:
                    row["model"] = {"error": str(exc)}
                    status = EXIT_FAIL
            if req.lattice is not None:
                row["split_real"] = split_real_sign_check(pd, m, req.lattice).to_json()
        rows.append(row)
    regular = [r["U_mu"] for r in rows if r["regular"]]
    report = {
        "schema": SCHEMA,
        "version": __version__,
        "command": "analyze",
        "algebra": str(req.algebra),
        "cross": sorted(pd.cross),
        "real_form": req.real_form,
        "lattice": req.lattice.short if req.lattice else None,
        "dims": {str(k): v for k, v in pd.dims().items()},
        "modules": rows,
        "U": max(regular) if regular else None,
    }
    if not modules:
        report["note"] = "no length-2 Hasse words"
    elif not regular:
        report["note"] = "no regular modules"
    return report, status


# -- table ---------------------------------------------------------------------------

_OPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul,
        ast.FloorDiv: operator.floordiv, ast.Pow: operator.pow, ast.USub: operator.neg}


def eval_formula(expr: str, r: int) -> int:
    """Integer arithmetic in the rank ``r`` with ``comb(a, b)``; ``^`` is a power."""
    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return node.value
        if isinstance(node, ast.Name) and node.id == "r":
            return r
        if isinstance(node, ast.BinOp) and type(node.op) in _OPS:
            return _OPS[type(node.op)](ev(node.left), ev(node.right))
        if isinstance(node, ast.UnaryOp) and type(node.op) in _OPS:
            return _OPS[type(node.op)](ev(node.operand))
        if (isinstance(node, ast.Call) and isinstance(node.func, ast.Name)
                and node.func.id == "comb" and len(node.args) == 2):
            return math.comb(ev(node.args[0]), ev(node.args[1]))
        raise InvalidInput(f"--formula: unsupported expression {expr!r}")
    try:
        tree = ast.parse(expr.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise InvalidInput(f"--formula: cannot parse {expr!r} at column {exc.offset}") from None
    return ev(tree)


def cross_pattern(pattern: str, r: int) -> frozenset:
    """Nodes like ``"1,r"`` or ``"1,2"``; ``r`` is the rank."""
    nodes = set()
    for tok in pattern.split(","):
        tok = tok.strip()
        if not tok:
            continue
        if not re.fullmatch(r"(\d+|r([+-]\d+)?)", tok):
            raise InvalidInput(f"--cross: bad node pattern {tok!r}")
        nodes.add(eval_formula(tok, r))
    return frozenset(nodes)


def parse_ranks(text: str) -> list[int]:
    m = re.fullmatch(r"\s*(\d+)\s*(?:\.\.|-)\s*(\d+)\s*", text)
    if m:
        lo, hi = int(m.group(1)), int(m.group(2))
        return list(range(lo, hi + 1))
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise InvalidInput(f"--ranks: cannot parse {text!r}") from None


def table_row(family: str, r: int, pattern: str, formula: str | None) -> dict:
    t = SimpleType(family, r)
    cross = cross_pattern(pattern, r)
    pd = build_parabolic(build_algebra(t), cross)
    bounds = [module_bound(pd, m) for m in harmonic_modules(pd) if m.regular]
    row = {
        "algebra": str(t),
        "rank": r,
        "cross": sorted(cross),
        "U_mu": {str(b.module.w): b.U_mu for b in bounds},
        "degree": {str(b.module.w): b.module.degree for b in bounds},
        "U": max((b.U_mu for b in bounds), default=None),
    }
    if formula:
        expected = eval_formula(formula, r)
        row["formula"] = expected
        row["match"] = row["U"] == expected
    return row


def cmd_table(family: str, ranks, pattern: str, formula: str | None = None,
              jobs: int = 1) -> tuple[dict, int]:
    family = family.strip().upper()
    for r in ranks:
        SimpleType(family, r)
    args = [(family, r, pattern, formula) for r in ranks]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            rows = list(ex.map(table_row, *zip(*args)))
    else:
        rows = [table_row(*a) for a in args]
    rows.sort(key=lambda row: row["rank"])
    report = {
        "schema": SCHEMA,
        "version": __version__,
        "command": "table",
        "family": family,
        "cross": pattern,
        "formula": formula,
        "rows": rows,
    }
    ok = all(row.get("match", True) for row in rows)
    return report, EXIT_OK if ok else EXIT_FAIL


# -- verify ---------------------------------------------------------------------------

def cmd_verify(req: AnalysisRequest, cap: int = DEFAULT_ORACLE_CAP) -> tuple[dict, int]:
    pd = build_parabolic(build_algebra(req.algebra), req.cross)
    res = run_suite(pd, req.checks, cap)
    checks = {}
    for name in req.checks:
        if name in res.skipped:
            checks[name] = {"status": "skipped", "witness": "cochain space exceeds --oracle-cap"}
        else:
            r = res.checks[name]
            checks[name] = {"status": "pass" if r.passed else "fail", "witness": r.witness}
    report = {
        "schema": SCHEMA,
        "version": __version__,
        "command": "verify",
        "algebra": str(req.algebra),
        "cross": sorted(pd.cross),
        "checks": checks,
    }
    if not res.passed:
        return report, EXIT_FAIL
    return report, EXIT_SKIPPED if res.skipped else EXIT_OK


# -- rendering --------------------------------------------------------------------------

def render(report: dict, fmt: str) -> str:
    """JSON is deterministic byte for byte; text is the same data as YAML."""
    if fmt == "json":
        return json.dumps(report, indent=2, ensure_ascii=False) + "\n"
    if report.get("command") == "table":
        return render_table(report)
    return yaml.safe_dump(report, sort_keys=False, default_flow_style=None, width=100)


def render_table(report: dict) -> str:
    """Aligned rows followed by the same data in YAML."""
    head = ["algebra", "cross", "U_mu", "U"] + (["formula", "match"] if report["formula"] else [])
    lines = []
    for row in report["rows"]:
        cells = [row["algebra"], ",".join(map(str, row["cross"])),
                 " ".join(f"{w}:{u}" for w, u in row["U_mu"].items()), str(row["U"])]
        if report["formula"]:
            cells += [str(row["formula"]), "yes" if row["match"] else "NO"]
        lines.append(cells)
    widths = [max(len(h), *(len(c[i]) for c in lines)) for i, h in enumerate(head)]
    out = ["  ".join(h.ljust(w) for h, w in zip(head, widths))]
    out += ["  ".join(c.ljust(w) for c, w in zip(cells, widths)) for cells in lines]
    return "\n".join(out) + "\n\n" + yaml.safe_dump(report, sort_keys=False,
                                                    default_flow_style=None, width=100)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="symgap", description="Submaximal symmetry data of parabolic geometries.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(q):
        q.add_argument("--algebra", required=True, help="simple type such as G2 or E8")
        q.add_argument("--cross", required=True, help="crossed nodes, e.g. 1,2")
        q.add_argument("--format", choices=("text", "json"), default="text")
        q.add_argument("--out", help="write the report to this file")

    a = sub.add_parser("analyze", help="modules, bounds, models and sign checks")
    common(a)
    a.add_argument("--module", help="restrict to one Hasse word, e.g. 2,1")
    a.add_argument("--real", choices=("complex", "split"), default="complex")
    a.add_argument("--lattice", choices=("sc", "adjoint", "sl", "pgl", "so-split"))

    t = sub.add_parser("table", help="U per rank for a family")
    t.add_argument("--family", required=True)
    t.add_argument("--ranks", required=True, help="e.g. 3..6")
    t.add_argument("--cross", required=True, help="node pattern in the rank r, e.g. 1,r")
    t.add_argument("--formula", help="closed form in r to compare against, e.g. (r-1)^2+4")
    t.add_argument("--jobs", type=int, default=1)
    t.add_argument("--format", choices=("text", "json"), default="text")
    t.add_argument("--out")

    v = sub.add_parser("verify", help="run the invariant suite")
    common(v)
    v.add_argument("--checks", default="all", help="comma list or all")
    v.add_argument("--oracle-cap", type=int, default=DEFAULT_ORACLE_CAP)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.command == "analyze":
            report, code = cmd_analyze(make_request(args))
        elif args.command == "table":
            report, code = cmd_table(args.family, parse_ranks(args.ranks), args.cross,
                                     args.formula, args.jobs)
        else:
            if args.oracle_cap < 0:
                raise InvalidInput("--oracle-cap must be non-negative")
            report, code = cmd_verify(make_request(args), args.oracle_cap)
    except InvalidInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    text = render(report, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
