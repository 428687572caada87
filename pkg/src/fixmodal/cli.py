"""Command-line front end.

Exit status is 0 for an affirmative answer (provable, satisfiable, prime,
done), 1 for a negative one and 2 for usage or input errors.
"""
from __future__ import annotations

import argparse
import contextlib
import json
import sys
from pathlib import Path
from typing import Optional, Sequence, TextIO

from .decide import satisfiable, valid
from .formula import System, parse
from .isolator import (
    Tensor,
    count_admissible,
    count_definable,
    count_formula_classes,
    count_isolator_pairs,
    SymbolicCount,
    prime_check,
)
from .normalform import to_normal_form, to_second_order
from .fixlab import Pool, classify_pool, definability_audit, realize

OK, NEGATIVE, ERROR = 0, 1, 2


class _Exit(Exception):
    def __init__(self, code: int, message: str = ""):
        super().__init__(message)
        self.code = code
        self.message = message


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _Exit(ERROR, f"{self.prog}: {message}")

    def exit(self, status=0, message=None):
        raise _Exit(status, message or "")


def _system(text: str) -> System:
    try:
        return System.from_name(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")

    p = _Parser(prog="fixmodal", description="Modal logic of Kripke fixed points.")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def formula_cmd(name, help_text):
        c = sub.add_parser(name, parents=[common], help=help_text)
        c.add_argument("--system", type=_system, default=System.S5ConGroundMin)
        c.add_argument("--exhaustive", action="store_true", help="enumerate every frame, even at 27 cells")
        c.add_argument("formula")
        return c

    formula_cmd("decide", "decide provability")
    formula_cmd("sat", "decide satisfiability")

    c = sub.add_parser("normalize", parents=[common], help="isolator normal form")
    c.add_argument("--system", type=_system, default=System.S5ConGroundMin)
    c.add_argument("--allow-large", action="store_true", help="permit 27-cell enumeration")
    c.add_argument("formula")

    c = sub.add_parser("translate", parents=[common], help="second-order reading of a basic-form formula")
    c.add_argument("--ascii", action="store_true")
    c.add_argument("formula")

    c = sub.add_parser("count", parents=[common], help="exact counts")
    c.add_argument("--system", type=_system, default=System.S5ConGroundMin)
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--what", choices=("isolators", "formulas", "definable"), required=True)
    c.add_argument("--allow-large", action="store_true", help="permit the 27-cell sweep")

    c = sub.add_parser("prime-check", parents=[common], help="test the prime conditions")
    c.add_argument("--n", type=int, default=None)
    c.add_argument("--cells", required=True)

    c = sub.add_parser("realize", parents=[common], help="build a pool realizing a prime tensor")
    c.add_argument("--n", type=int, default=None)
    c.add_argument("--cells", required=True)
    c.add_argument("--layout", choices=("sparse", "dense"), default="sparse")
    c.add_argument("--out", default=None)

    lab = sub.add_parser("lab", help="pool experiments")
    labsub = lab.add_subparsers(dest="lab_command", required=True, parser_class=_Parser)
    for name, help_text in (("classify", "classify every sentence"), ("audit", "definability audit")):
        c = labsub.add_parser(name, parents=[common], help=help_text)
        src = c.add_mutually_exclusive_group(required=True)
        src.add_argument("--pool", help="pool JSON file")
        src.add_argument("--def", dest="defs", action="append", metavar="NAME=EXPR", help="inline definition")
    return p


def _load_pool(args) -> Pool:
    if args.pool is not None:
        return Pool.load(args.pool)
    defs = {}
    for item in args.defs:
        name, sep, expr = item.partition("=")
        if not sep:
            raise ValueError(f"inline definition {item!r} needs NAME=EXPR")
        defs[name.strip()] = expr
    return Pool.from_text(defs)


# -- commands: each returns (exit code, result dict, text lines) ---------------

def _decide(args):
    f = parse(args.formula)
    v = valid(f, args.system, exhaustive=args.exhaustive)
    if v.valid:
        lines = [f"PROVABLE in {args.system.label}"]
    else:
        lines = [f"NOT PROVABLE in {args.system.label}", f"countermodel: {v.witness}"]
    return (OK if v.valid else NEGATIVE), v.to_json(), lines


def _sat(args):
    f = parse(args.formula)
    v = satisfiable(f, args.system, exhaustive=args.exhaustive)
    if v.valid:
        lines = [f"SATISFIABLE in {args.system.label}", f"witness: {v.witness}"]
    else:
        lines = [f"UNSATISFIABLE in {args.system.label}"]
    return (OK if v.valid else NEGATIVE), v.to_json(), lines


def _normalize(args):
    f = parse(args.formula)
    nf = to_normal_form(f, args.system, allow_large=args.allow_large)
    names = ", ".join(str(x) for x in nf.variables) or "(none)"
    lines = [f"{len(nf.disjuncts)} isolator pairs over {names} in {args.system.label}"]
    lines += [f"  {p}" for p in nf.sorted_disjuncts()]
    return OK, nf.to_json(), lines


def _translate(args):
    text = to_second_order(parse(args.formula), ascii=args.ascii)
    return OK, {"translation": text}, [text]


def _count(args):
    system, n = args.system, args.n
    if args.what == "isolators":
        k = count_admissible(system, n, args.allow_large)
        pairs = count_isolator_pairs(system, n, args.allow_large)
        result = {"intensional": k, "pairs": pairs}
        return OK, result, [f"{k} intensional, {pairs} isolator pairs"]
    if args.what == "formulas":
        c = count_formula_classes(system, n, args.allow_large)
        return OK, c.to_json(), [str(c)]
    if system is System.S5ConGroundMin:
        d = count_definable(n, args.allow_large)
        result = dict(d.count.to_json(), lower=d.lower, upper=d.upper)
        return OK, result, [str(d)]
    c = SymbolicCount(count_admissible(system, n, args.allow_large))
    return OK, c.to_json(), [str(c)]


def _prime_check(args):
    t = Tensor.parse(args.cells, n=args.n)
    verdict = prime_check(t)
    if verdict.ok:
        return OK, {"tensor": t.to_json(), "prime": True}, ["PRIME"]
    why = verdict.violation.describe()
    return NEGATIVE, {"tensor": t.to_json(), "prime": False, "violation": why}, [f"VIOLATES: {why}"]


def _realize(args):
    t = Tensor.parse(args.cells, n=args.n)
    pool, names = realize(t, layout=args.layout)
    doc = dict(pool.to_json(), names=list(names))
    if args.out:
        Path(args.out).write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")
        lines = [f"wrote {len(pool)} sentences to {args.out}", "names: " + ", ".join(names)]
    else:
        lines = [json.dumps(doc, indent=2)]
    return OK, doc, lines


def _lab_classify(args):
    pool = _load_pool(args)
    classes = classify_pool(pool)
    lines = []
    for name, c in classes.items():
        flags = ", ".join(c.flags()) or "-"
        lines.append(f"{name}: {flags}  profile {c.profile}")
    return OK, {name: c.to_json() for name, c in classes.items()}, lines


def _lab_audit(args):
    report = definability_audit(_load_pool(args))
    return OK, report.to_json(), report.lines()


_COMMANDS = {
    "decide": _decide,
    "sat": _sat,
    "normalize": _normalize,
    "translate": _translate,
    "count": _count,
    "prime-check": _prime_check,
    "realize": _realize,
    ("lab", "classify"): _lab_classify,
    ("lab", "audit"): _lab_audit,
}


def _inputs(args) -> dict:
    out = {}
    for key, val in sorted(vars(args).items()):
        if key in ("json", "command", "lab_command"):
            continue
        out[key] = val.label if isinstance(val, System) else val
    return out


def run(argv: Optional[Sequence[str]] = None, stdout: Optional[TextIO] = None, stderr: Optional[TextIO] = None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = _build_parser()
    try:
        with contextlib.redirect_stdout(stdout):
            args = parser.parse_args(list(argv) if argv is not None else None)
    except _Exit as e:
        if e.message:
            stream = stdout if e.code == 0 else stderr
            stream.write(e.message if e.message.endswith("\n") else e.message + "\n")
        if e.code != 0:
            stderr.write(parser.format_usage())
        return ERROR if e.code else OK
    key = (args.command, args.lab_command) if args.command == "lab" else args.command
    try:
        code, result, lines = _COMMANDS[key](args)
    except (ValueError, KeyError, OSError) as e:
        message = e.args[0] if isinstance(e, KeyError) and e.args else e
        stderr.write(f"error: {message}\n")
        return ERROR
    if getattr(args, "json", False):
        command = " ".join(key) if isinstance(key, tuple) else key
        envelope = {"command": command, "inputs": _inputs(args), "result": result}
        stdout.write(json.dumps(envelope, indent=2, sort_keys=True) + "\n")
    else:
        stdout.write("\n".join(lines) + "\n")
    return code


def main() -> None:
    sys.exit(run())
