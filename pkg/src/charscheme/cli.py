"""``charscheme`` command line.

Exit codes: 0 success, 1 a check failed, 2 usage or input error, 3 budget
exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .builder import character_ideal, partial_ideal_I1
from .groebner import Budget, BudgetExceeded
from .ideal import (Ideal, intersect, load_ideal, member, quotient, radical_member, reduce_mod,
                    vector_space_dimension)
from .oracle import fuzz_check_reduction
from .polyring import RingError, parse_order, trace_ring
from .presentation import PresentationError, load_presentation, parse_word
from .registry import CASES, list_cases, run_case

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--order", default="grevlex", help="lex, grevlex or blockK (default grevlex)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--max-degree", type=int, default=60)
    p.add_argument("--max-pairs", type=int, default=2_000_000)
    p.add_argument("--timeout", type=float, default=None,
                   help="seconds per Gröbner computation (also CHARSCHEME_TIMEOUT_SECS)")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    ap = argparse.ArgumentParser(prog="charscheme",
                                 description="SL(2) character scheme ideals in trace coordinates")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("reduce", parents=[common], help="trace of a word as a polynomial")
    s.add_argument("word")
    s.add_argument("--gens", required=True, help="comma-separated generator names")

    s = sub.add_parser("ideal", parents=[common], help="character ideal of a presentation file")
    s.add_argument("presentation")
    s.add_argument("--mode", choices=("relator", "pair"), default="relator")
    s.add_argument("--i1", action="store_true", help="only the e and single-generator prefixes")

    s = sub.add_parser("gb", parents=[common], help="reduced Gröbner basis of an ideal file")
    s.add_argument("ideal")

    for name in ("member", "radical-member"):
        s = sub.add_parser(name, parents=[common])
        s.add_argument("poly")
        s.add_argument("ideal")

    for name in ("intersect", "quotient"):
        s = sub.add_parser(name, parents=[common])
        s.add_argument("ideal1")
        s.add_argument("ideal2")

    s = sub.add_parser("dim", parents=[common], help="dimension of Q[x]/I")
    s.add_argument("ideal")

    s = sub.add_parser("oracle", parents=[common], help="fuzz trace reduction against matrices")
    s.add_argument("--count", type=int, default=1000)
    s.add_argument("--max-len", type=int, default=8)
    s.add_argument("--gens", type=int, default=3, help="number of generators")

    s = sub.add_parser("verify", parents=[common], help="run worked-example checks")
    s.add_argument("case", help="case name or 'all'")
    s.add_argument("--fast-only", action="store_true")
    return ap


def _flags(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k != "command"}


def _budget(args) -> Budget:
    return Budget.from_env(max_degree=args.max_degree, max_pairs=args.max_pairs, seconds=args.timeout)


def _load_ideal(path: str) -> Ideal:
    p = Path(path)
    if not p.is_file():
        raise UsageError(f"no such ideal file: {path}")
    try:
        return load_ideal(p)
    except (KeyError, json.JSONDecodeError) as exc:
        raise UsageError(f"bad ideal file {path}: {exc}") from exc


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        out = {"command": args.command, "flags": _flags(args)}
        out.update(payload)
        print(json.dumps(out, indent=2, sort_keys=False))
    else:
        print(text)


def _ideal_text(I: Ideal) -> str:
    return "\n".join(g.to_str() for g in I.generators) if I.generators else "0"


def cmd_reduce(args) -> int:
    from .traces import reduce_trace

    gens = [g.strip() for g in args.gens.split(",") if g.strip()]
    ring = trace_ring(gens)
    w = parse_word(args.word, gens)
    poly = reduce_trace(w, ring).to_str()
    _emit(args, {"ring": list(ring.variables), "result": poly}, poly)
    return EXIT_OK


def cmd_ideal(args) -> int:
    path = Path(args.presentation)
    if not path.is_file():
        raise UsageError(f"no such presentation file: {path}")
    p = load_presentation(path)
    I = (partial_ideal_I1 if args.i1 else character_ideal)(p, args.mode)
    payload = I.to_json()
    if I.meta.get("relative_to_free_ring"):
        payload["note"] = "rank > 3: ring relations of the free-group trace ring are not included"
    _emit(args, payload, _ideal_text(I))
    return EXIT_OK


def cmd_gb(args) -> int:
    I = _load_ideal(args.ideal)
    gb = I.gb(parse_order(args.order), _budget(args))
    data = gb.to_json()
    _emit(args, data, "\n".join(data["generators"]) or "0")
    return EXIT_OK


def cmd_member(args) -> int:
    I = _load_ideal(args.ideal)
    f = I.ring.parse(args.poly)
    budget = _budget(args)
    order = parse_order(args.order)
    if args.command == "member":
        verdict = member(f, I, order, budget)
        nf = reduce_mod(f, I, order, budget).to_str(order)
        _emit(args, {"member": verdict, "normal_form": nf}, f"{str(verdict).lower()}\nnormal form: {nf}")
    else:
        verdict = radical_member(f, I, budget)
        _emit(args, {"radical_member": verdict}, str(verdict).lower())
    return EXIT_OK


def cmd_binary(args) -> int:
    I, J = _load_ideal(args.ideal1), _load_ideal(args.ideal2)
    op = intersect if args.command == "intersect" else quotient
    K = op(I, J, _budget(args))
    _emit(args, K.to_json(), _ideal_text(K))
    return EXIT_OK


def cmd_dim(args) -> int:
    d = vector_space_dimension(_load_ideal(args.ideal), _budget(args))
    _emit(args, {"dimension": d}, str(d))
    return EXIT_OK


def cmd_oracle(args) -> int:
    if args.gens < 1:
        raise UsageError("--gens must be positive")
    failures = []
    total = 0
    for rep, w, ok in fuzz_check_reduction(args.seed, args.count, args.max_len, args.gens):
        total += 1
        if not ok:
            failures.append(str(w.letters))
    _emit(args, {"checked": total, "failures": failures},
          f"checked {total} pairs, {len(failures)} failures" + "".join("\n  " + f for f in failures))
    return EXIT_FAIL if failures else EXIT_OK


def cmd_verify(args) -> int:
    if args.case == "all":
        names = list_cases(args.fast_only)
    elif args.case in CASES:
        names = [args.case]
    else:
        raise UsageError(f"unknown case {args.case!r}; known: {', '.join(CASES)}")
    budget = _budget(args)
    records = []
    for name in names:
        records.extend(run_case(name, budget))
    lines = [f"{r['status']:>15}  {r['case']}: {r['assertion']} ({r['wall_ms']} ms)" for r in records]
    _emit(args, {"results": records}, "\n".join(lines))
    statuses = {r["status"] for r in records}
    if statuses & {"fail", "error"}:
        return EXIT_FAIL
    if "budget_exceeded" in statuses:
        return EXIT_BUDGET
    return EXIT_OK


COMMANDS = {
    "reduce": cmd_reduce, "ideal": cmd_ideal, "gb": cmd_gb,
    "member": cmd_member, "radical-member": cmd_member,
    "intersect": cmd_binary, "quotient": cmd_binary,
    "dim": cmd_dim, "oracle": cmd_oracle, "verify": cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on usage errors already
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, PresentationError, RingError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
