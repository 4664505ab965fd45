"""Command-line entry point.

Every subcommand prints one JSON RunReport on stdout. Exit codes: 0 on
success, 1 on usage or input errors, 2 when a mathematical verification
fails (the report then carries the witness).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from fractions import Fraction
from importlib import resources
from pathlib import Path

from . import __version__
from .bounds import bound_table, contradiction_replay
from .buchi import census, exact_powerful_locus, nth_differences, search_integer_buchi, sequence_to_form, theorem_harness
from .charp import build_witness, not_power_of_linear, probe_outside, verify_all_squares, verify_nondegenerate
from .errors import BuchiError, ParseError, VerificationFailed
from .fields import QQ
from .funcfield import BuchiForm, ProjPoint, QQx, classify, is_k_powerful, zero_profile
from .geometry import Correspondence, branch_data, lemma_linear_census, zeuthen_check
from .parser import parse_expr_any, parse_form, parse_ratfunc

SCHEMA_VERSION = "1.0"
log = logging.getLogger("buchifield")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def load_schema(name: str) -> dict:
    """Published JSON schema: ``run_report`` or a subcommand name."""
    text = resources.files("buchifield").joinpath("schemas", f"{name}.schema.json").read_text()
    return json.loads(text)


def _int_range(text: str) -> range:
    """Inclusive range ``A..B``; a single integer is a range of one."""
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            lo, hi = int(a), int(b)
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A..B or an integer, got {text!r}") from None
    if hi < lo:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return range(lo, hi + 1)


def _read_source(arg: str) -> str:
    """File contents if ``arg`` names a file, else the argument itself."""
    path = Path(arg)
    try:
        if path.is_file():
            return path.read_text()
    except OSError:
        pass
    return arg


def _load_form(arg: str) -> BuchiForm:
    return parse_form(_read_source(arg))


def _load_sequence(arg: str) -> list:
    path = Path(arg)
    if not path.is_file():
        raise UsageError(f"sequence file not found: {arg}")
    data = json.loads(path.read_text())
    if not isinstance(data, list) or not data:
        raise UsageError("sequence file must hold a non-empty JSON array")
    out = []
    for item in data:
        if isinstance(item, int):
            out.append(Fraction(item))
            continue
        value = parse_ratfunc(str(item), "x")
        out.append(value.constant_value() if value.is_constant else value)
    return out


def _str(v) -> str:
    return str(v)


# --------------------------------------------------------------------------
# subcommands; each returns (inputs, outputs, seed)
# --------------------------------------------------------------------------


def cmd_powerful(args):
    f = parse_expr_any(args.f, ("x",))
    if f.is_zero:
        raise UsageError("the zero function has no zero profile")
    prof = zero_profile(f)
    outputs = {
        "powerful": is_k_powerful(f, args.k),
        "k": args.k,
        "profile": prof.to_json()["profile"],
        "order_at_infinity": prof.order_at_infinity,
        "min_multiplicity": prof.min_multiplicity,
    }
    return {"f": str(f), "k": args.k}, outputs, None


def cmd_classify(args):
    F = _load_form(args.form)
    return {"form": F.to_json()}, classify(F).to_json(), None


def cmd_census(args):
    F = _load_form(args.form)
    points = [ProjPoint.affine(Fraction(v)) for v in args.lambda_range]
    if args.include_infinity:
        points.append(ProjPoint.infinity())
    report = census(F, points, args.mu, args.g)
    inputs = {"form": F.to_json(), "lambda_range": [args.lambda_range[0], args.lambda_range[-1]],
              "mu": args.mu, "g": args.g}
    return inputs, report.to_json(), None


def cmd_locus(args):
    F = _load_form(args.form)
    report = exact_powerful_locus(F, args.n)
    return {"form": F.to_json(), "n": args.n}, report.to_json(), None


def cmd_sequence(args):
    u = _load_sequence(args.file)
    inputs = {"file": args.file, "n": args.n, "action": args.action, "sequence": [_str(v) for v in u]}
    if args.action == "verify":
        diffs = nth_differences(u, args.n)
        target = 1
        for k in range(2, args.n + 1):
            target *= k
        outputs = {
            "differences": [_str(d) for d in diffs],
            "expected": target,
            "buchi": all(d == target for d in diffs),
        }
    else:
        coeffs = sequence_to_form(u, args.n)
        if coeffs is None:
            outputs = {"buchi": False, "coeffs": None}
        else:
            outputs = {"buchi": True, "coeffs": [_str(a) for a in coeffs]}
    return inputs, outputs, None


def cmd_search_int(args):
    found = search_integer_buchi(args.x1, args.x2, args.min_len, args.max_len, args.workers)
    outputs = {
        "count": len(found),
        "nontrivial": [s.to_json() for s in found if not s.trivial],
        "trivial_count": sum(1 for s in found if s.trivial),
        "longest_nontrivial": max((len(s) for s in found if not s.trivial), default=0),
    }
    if args.list_trivial:
        outputs["trivial"] = [s.to_json() for s in found if s.trivial]
    inputs = {
        "x1": [args.x1[0], args.x1[-1]],
        "x2": [args.x2[0], args.x2[-1]],
        "min_len": args.min_len,
        "max_len": args.max_len,
    }
    return inputs, outputs, None


def cmd_bound(args):
    rows = bound_table(args.n, args.g)
    outputs = dict(rows[0]) if len(rows) == 1 else {"table": rows}
    if args.replay:
        outputs["replay"] = [r for n in args.n for g in args.g for r in contradiction_replay(n, g)]
    inputs = {"n": [args.n[0], args.n[-1]], "g": [args.g[0], args.g[-1]]}
    return inputs, outputs, None


def cmd_charp(args):
    w = build_witness(args.p, args.e)
    report = verify_all_squares(w)
    outputs = {
        "witness": w.to_json(),
        "all_squares": report.passed,
        "checked": report.checked,
        "values": report.witnesses,
        "nondegenerate": verify_nondegenerate(w),
        "not_power_of_linear": not_power_of_linear(w),
        "outside": probe_outside(w, args.samples, args.seed),
    }
    if not (outputs["nondegenerate"] and outputs["not_power_of_linear"]):
        raise VerificationFailed("witness is degenerate", outputs)
    if any(o["two_powerful"] for o in outputs["outside"]):
        raise VerificationFailed("a value outside F_q is a square", outputs)
    return {"p": args.p, "e": args.e, "samples": args.samples}, outputs, args.seed


def cmd_lemma_linear(args):
    c = parse_expr_any(args.c, ("x",))
    census_ = lemma_linear_census(c)
    outputs = census_.to_json()
    outputs["branch"] = branch_data(c).to_json()
    return {"c": str(c)}, outputs, None


def cmd_zeuthen(args):
    u = parse_expr_any(args.u, ("t", "x"))
    v = parse_expr_any(args.v, ("t", "x"))
    u, v = _common_variable(u, v)
    res = zeuthen_check(Correspondence.of(u, v))
    if not res.equal:
        raise VerificationFailed("Zeuthen identity fails", res.to_json())
    return {"u": str(u), "v": str(v)}, res.to_json(), None


def _common_variable(u, v):
    """Re-read both maps over Q(x) so they share one parameter."""
    return (QQx(u.num.map_coeffs(QQ, QQ, "x")) / QQx(u.den.map_coeffs(QQ, QQ, "x")),
            QQx(v.num.map_coeffs(QQ, QQ, "x")) / QQx(v.den.map_coeffs(QQ, QQ, "x")))


def cmd_harness(args):
    report = theorem_harness(args.trials, args.n, seed=args.seed)
    return {"n": args.n, "trials": args.trials}, report.to_json(), args.seed


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="buchifield", description="Exact Büchi-problem computations over Q(x).",
                allow_abbrev=False)
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("-v", "--verbose", action="store_true", help="diagnostics on stderr")
    sub = p.add_subparsers(dest="subcommand", required=True)

    s = sub.add_parser("powerful", help="zero profile and k-powerfulness of f in Q(x)")
    s.add_argument("f")
    s.add_argument("--k", type=int, default=2)
    s.set_defaults(func=cmd_powerful)

    s = sub.add_parser("classify", help="ConstantCoefficients / PowerOfLinear / Other")
    s.add_argument("form", help="JSON file, inline JSON, or an expression in t")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("census", help="powerful values over a lambda range")
    s.add_argument("form")
    s.add_argument("--lambda-range", type=_int_range, default=_int_range("-50..49"))
    s.add_argument("--mu", type=int, required=True)
    s.add_argument("--g", type=int, default=0)
    s.add_argument("--include-infinity", action="store_true")
    s.set_defaults(func=cmd_census)

    s = sub.add_parser("locus", help="exact rational powerful locus")
    s.add_argument("form")
    s.add_argument("--n", type=int, default=None, help="powerfulness threshold (default deg F)")
    s.set_defaults(func=cmd_locus)

    s = sub.add_parser("sequence", help="check or interpolate a Büchi sequence file")
    s.add_argument("action", choices=["verify", "to-form"])
    s.add_argument("file")
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_sequence)

    s = sub.add_parser("search-int", help="integer square sequences with second differences 2")
    s.add_argument("--x1", type=_int_range, required=True)
    s.add_argument("--x2", type=_int_range, required=True)
    s.add_argument("--min-len", type=int, default=4)
    s.add_argument("--max-len", type=int, default=64)
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--list-trivial", action="store_true")
    s.set_defaults(func=cmd_search_int)

    s = sub.add_parser("bound", help="closed-form constants")
    s.add_argument("--n", type=_int_range, required=True)
    s.add_argument("--g", type=_int_range, default=_int_range("0"))
    s.add_argument("--replay", action="store_true", help="include the case-analysis replay")
    s.set_defaults(func=cmd_bound)

    s = sub.add_parser("charp-example", help="the characteristic-p square-valued form")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--e", type=int, default=1)
    s.add_argument("--samples", type=int, default=8)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_charp)

    s = sub.add_parser("lemma-linear", help="points where s + c t has only multiple zeros")
    s.add_argument("--c", required=True)
    s.set_defaults(func=cmd_lemma_linear)

    s = sub.add_parser("zeuthen", help="Zeuthen identity for a parametrized correspondence")
    s.add_argument("--u", required=True)
    s.add_argument("--v", required=True)
    s.set_defaults(func=cmd_zeuthen)

    s = sub.add_parser("harness", help="randomized theorem harness")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--trials", type=int, default=100)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_harness)
    return p


def _emit(report: dict, stream) -> None:
    stream.write(json.dumps(report, sort_keys=True) + "\n")


_RANGE_FLAGS = ("--lambda-range", "--x1", "--x2", "--n", "--g")


def _glue_negative_values(argv: list[str]) -> list[str]:
    """Turn ``--flag -5..5`` into ``--flag=-5..5`` so argparse does not read a flag."""
    out: list[str] = []
    i = 0
    while i < len(argv):
        a = argv[i]
        if a in _RANGE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-") and argv[i + 1][1:2].isdigit():
            out.append(f"{a}={argv[i + 1]}")
            i += 2
            continue
        out.append(a)
        i += 1
    return out


def run(argv: list[str] | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    argv = _glue_negative_values(list(sys.argv[1:] if argv is None else argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, stream=sys.stderr)
    start = time.perf_counter()
    base = {"schema_version": SCHEMA_VERSION, "subcommand": args.subcommand}
    try:
        inputs, outputs, seed = args.func(args)
    except VerificationFailed as exc:
        elapsed = (time.perf_counter() - start) * 1000
        report = dict(base, inputs=vars_echo(args), outputs={"error": type(exc).__name__,
                      "message": str(exc.args[0]) if exc.args else "", "witness": exc.witness},
                      timing_ms=round(elapsed, 3), seed=getattr(args, "seed", None))
        _emit(report, stdout)
        print(f"verification failed: {exc}", file=sys.stderr)
        return 2
    except ParseError as exc:
        print(f"{args.subcommand}: parse error: {exc}", file=sys.stderr)
        return 1
    except (BuchiError, UsageError, ValueError, OSError) as exc:
        print(f"{args.subcommand}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    elapsed = (time.perf_counter() - start) * 1000
    report = dict(base, inputs=inputs, outputs=outputs, timing_ms=round(elapsed, 3), seed=seed)
    _emit(report, stdout)
    log.debug("%s finished in %.1f ms", args.subcommand, elapsed)
    return 0


def vars_echo(args) -> dict:
    out = {}
    for k, v in vars(args).items():
        if k in ("func", "verbose", "subcommand"):
            continue
        out[k] = [v[0], v[-1]] if isinstance(v, range) else v
    return out


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
