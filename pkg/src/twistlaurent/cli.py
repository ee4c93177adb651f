"""Command-line front end: session configuration, REPL, script runner,
and the named check batteries.

Configuration precedence: flags, then TWISTLAURENT_* environment
variables, then defaults.  Batch runs exit 0 only when everything passed;
kernel errors map to their class-specific exit codes.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import obstruction, parser, session as session_mod
from .errors import KernelError
from .exponents import RingSig
from .session import Session, eval_statement, format_value

_ENV = "TWISTLAURENT_"


def _env(name: str, default: str | None = None) -> str | None:
    return os.environ.get(_ENV + name, default)


def build_arg_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="twistlaurent",
        description="exact arithmetic in twisted iterated Laurent series rings",
    )
    ap.add_argument("--prime", type=int, help="prime p for lattices and towers (default 2)")
    ap.add_argument("--indices", help="comma-separated pair indices n1,n2,... (default 2,3)")
    ap.add_argument("--uniform", help="P^E: E variable pairs all twisted by w_P")
    ap.add_argument("--commutative", action="store_true", help="untwisted ring")
    ap.add_argument("--precision", type=int, help="truncation level N (weighted degree)")
    ap.add_argument("--window", type=int, help="per-coordinate support bound B")
    ap.add_argument("--denom-cap", type=int, help="exponent denominator cap M (commutative only)")
    ap.add_argument("--radix", type=int, help="weighted-degree radix override")
    ap.add_argument("--seed", type=int, help="seed for sampled batteries")
    ap.add_argument("--samples", type=int, help="sample count for batteries")
    ap.add_argument("--script", help="run statements from this file and exit")
    ap.add_argument("--check", choices=("obstruction", "kummer", "eq2"))
    ap.add_argument("--format", choices=("text",), default="text", dest="output_format")
    return ap


def _resolve_config(args):
    prime = args.prime if args.prime is not None else int(_env("PRIME", "2"))
    uniform = args.uniform if args.uniform is not None else _env("UNIFORM")
    uniform_exp = None
    if uniform:
        base, _, exp = uniform.partition("^")
        if not exp:
            raise ValueError("--uniform expects P^E")
        prime = int(base)
        uniform_exp = int(exp)
        indices = (prime,) * uniform_exp
    else:
        text = args.indices if args.indices is not None else _env("INDICES", "2,3")
        indices = tuple(int(s) for s in text.split(","))
    commutative = args.commutative or _env("COMMUTATIVE", "") not in ("", "0")
    denom_cap = args.denom_cap if args.denom_cap is not None else int(_env("DENOM_CAP", "0"))
    cfg = {
        "prime": prime,
        "indices": indices,
        "uniform_exp": uniform_exp,
        "twisted": not commutative,
        "M": denom_cap,
        "N": args.precision if args.precision is not None else int(_env("PRECISION", "24")),
        "B": args.window if args.window is not None else int(_env("WINDOW", "40")),
        "radix": args.radix if args.radix is not None else (
            int(_env("RADIX")) if _env("RADIX") else None
        ),
        "seed": args.seed if args.seed is not None else int(_env("SEED", "0")),
        "samples": args.samples if args.samples is not None else int(_env("SAMPLES", "25")),
    }
    return cfg


def _build_sig(cfg) -> RingSig:
    return RingSig(
        p=cfg["prime"],
        indices=cfg["indices"],
        twisted=cfg["twisted"],
        M=cfg["M"],
        N=cfg["N"],
        B=cfg["B"],
        radix=cfg["radix"],
    )


def _kummer_exponent(cfg) -> int:
    if cfg["uniform_exp"] is not None:
        return cfg["uniform_exp"]
    if len(cfg["indices"]) == 1:
        pn = cfg["indices"][0]
        n = 0
        while pn > 1 and pn % cfg["prime"] == 0:
            pn //= cfg["prime"]
            n += 1
        if pn == 1 and n >= 1:
            return n
    return 2


def _run_check(name: str, cfg, out) -> int:
    if name == "obstruction":
        report = obstruction.obstruction_report(
            cfg["prime"], len(cfg["indices"]), seed=cfg["seed"], samples=cfg["samples"]
        )
    elif name == "eq2":
        sig = _build_sig(cfg)
        report = obstruction.Report(
            (obstruction.commutator_battery(sig, cfg["samples"], cfg["seed"]),)
        )
    else:
        report = obstruction.Report(
            (
                obstruction.kummer_generator_battery(
                    cfg["prime"], _kummer_exponent(cfg), cfg["samples"], cfg["seed"]
                ),
            )
        )
    print(report.to_text(), file=out)
    return 0 if report.passed else 1


def _run_script(path: str, sess: Session, out) -> int:
    with open(path, encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    for lineno, line in enumerate(lines, start=1):
        try:
            node = parser.parse(line)
            if node is None:
                continue
            value = session_mod.eval_node(sess, node)
            if not isinstance(node, parser.Let):
                print(format_value(value), file=out)
        except KernelError as e:
            print(f"error at line {lineno}: {e}", file=sys.stderr)
            return e.exit_code
    return 0


def _run_repl(sess: Session, out) -> int:
    interactive = sys.stdin.isatty()
    prompt = "tl> " if interactive else ""
    while True:
        try:
            line = input(prompt)
        except EOFError:
            break
        if line.strip() in ("quit", "exit"):
            break
        try:
            node = parser.parse(line)
            if node is None:
                continue
            value = session_mod.eval_node(sess, node)
            if not isinstance(node, parser.Let):
                print(format_value(value), file=out)
        except KernelError as e:
            print(f"error: {e}", file=sys.stderr if not interactive else sys.stdout)
            if not interactive:
                return e.exit_code
    return 0


def main(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    args = build_arg_parser().parse_args(argv)
    try:
        cfg = _resolve_config(args)
    except ValueError as e:
        print(f"configuration error: {e}", file=sys.stderr)
        return 1
    if args.check:
        try:
            return _run_check(args.check, cfg, out)
        except KernelError as e:
            print(f"error: {e}", file=sys.stderr)
            return e.exit_code
    try:
        sess = Session(_build_sig(cfg), seed=cfg["seed"], output_format=args.output_format)
    except ValueError as e:
        print(f"configuration error: {e}", file=sys.stderr)
        return 1
    if args.script:
        return _run_script(args.script, sess, out)
    return _run_repl(sess, out)


if __name__ == "__main__":
    raise SystemExit(main())
