"""Command-line front end.

Exit codes: 0 ok, 1 usage, 2 parse error (expressions, machine files, input
words, provenance files), 3 run budget exhausted, 4 unsupported gross
operation or division by zero.
"""

from __future__ import annotations

import argparse
import itertools
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Sequence

from .grossnum import GrossError, GrossSyntaxError, format_gross, parse_gross
from .machinefile import MachineSyntaxError, load_machine, save_machine
from .mtcompile import (
    CompileError,
    MarkerError,
    check_equivalence,
    compile_machine,
    parse_provenance,
    paper_bound,
    simulate_and_account,
)
from .observe import count_positional, machine_observability_report, observable_simulation_steps
from .tmcore import (
    BoundaryViolation,
    InputSymbolOutOfAlphabet,
    MultiTapeMachine,
    Outcome,
    render,
    run,
    run_from,
    validate,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_BUDGET = 3
EXIT_UNSUPPORTED = 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on bad usage; we reserve 2 for parse errors."""

    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


class _ParseFailure(Exception):
    pass


def _load(path: str):
    try:
        m = load_machine(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except MachineSyntaxError as exc:
        raise _ParseFailure(f"{path}: {exc}") from None
    problems = validate(m)
    if problems:
        raise _ParseFailure(f"{path}: " + "; ".join(str(d) for d in problems))
    return m


def _sidecar(path: str) -> Path:
    return Path(path + ".prov")


def cmd_eval(args, out) -> int:
    value = parse_gross(args.expr)
    print(format_gross(value), file=out)
    return EXIT_OK


def cmd_run(args, out) -> int:
    m = _load(args.file)
    prov_path = Path(args.provenance) if args.provenance else _sidecar(args.file)
    prov = None
    if prov_path.exists():
        try:
            prov = parse_provenance(prov_path.read_text(encoding="utf-8"))
        except ValueError as exc:
            raise _ParseFailure(f"{prov_path}: {exc}") from None
    if prov is not None:
        result = run_from(m, prov.encode_input(args.input, m.start), args.max_steps, record=False)
    else:
        result = run(m, args.input, args.max_steps, record=False)
    print(f"outcome: {result.outcome}", file=out)
    print(f"steps: {result.steps}", file=out)
    print(f"configuration: {render(result.final)}", file=out)
    if prov is not None:
        try:
            print(f"decoded: {render(prov.decode(result.final))}", file=out)
        except MarkerError:
            print("decoded: (mid-sweep)", file=out)
    return EXIT_BUDGET if result.outcome is Outcome.BUDGET_EXHAUSTED else EXIT_OK


def _verify_chunk(path: str, words: list[tuple[str, ...]]) -> list[str]:
    m = load_machine(path)
    cm = compile_machine(m)
    return [" ".join(w) or "(empty)" for w in words if not check_equivalence(m, w, compiled=cm).agrees]


def _words(m: MultiTapeMachine, max_len: int):
    sigma = sorted(m.input_alphabet(0))
    for n in range(max_len + 1):
        yield from itertools.product(sigma, repeat=n)


def cmd_compile(args, out) -> int:
    m = _load(args.file)
    if not isinstance(m, MultiTapeMachine):
        raise UsageError(f"{args.file} describes a single-tape machine; nothing to compile")
    cm = compile_machine(m)
    single = cm.machine
    header = f"compiled from {m.name}: {m.k} tapes on {2 * m.k} tracks"
    save_machine(single, args.output, header)
    _sidecar(args.output).write_text(cm.provenance_text(), encoding="utf-8")
    print(f"wrote {args.output} ({len(single.states)} states, {len(single.alphabet)} symbols)", file=out)
    print(f"wrote {_sidecar(args.output)}", file=out)
    if args.verify is not None:
        words = list(_words(m, args.verify))
        if args.jobs > 1:
            chunks = [words[i :: args.jobs] for i in range(args.jobs)]
            with ProcessPoolExecutor(args.jobs) as pool:
                bad = [w for part in pool.map(_verify_chunk, [args.file] * len(chunks), chunks) for w in part]
        else:
            bad = _verify_chunk(args.file, words)
        print(f"verified: {len(words) - len(bad)}/{len(words)} inputs agree", file=out)
        for w in sorted(bad):
            print(f"disagrees: {w}", file=out)
    return EXIT_OK


def cmd_analyze(args, out) -> int:
    m = _load(args.file)
    if not isinstance(m, MultiTapeMachine):
        raise UsageError("analyze needs a machine with at least two tapes")
    if args.user_radix < 2:
        raise UsageError("--user-radix must be at least 2")
    print(machine_observability_report(m, args.user_radix), file=out)
    if args.steps is not None:
        t = parse_gross(args.steps)
        if t < 0:
            raise UsageError("--steps must be non-negative")
        if t.is_rational() and t.as_rational().denominator == 1:
            n = int(t.as_rational())
            acct = simulate_and_account(m, args.input, n)
            print(f"paper_bound: {paper_bound(n)}", file=out)
            print(f"simulated_steps: {acct.multi_steps}", file=out)
            print(f"compiled_steps: {acct.single_steps}", file=out)
            print(f"scaled_bound: {acct.scaled_bound} (C={acct.C}, C0={acct.C0})", file=out)
            print(f"scaled_bound_holds: {'yes' if acct.paper_bound_holds_scaled else 'no'}", file=out)
        else:
            print(f"paper_bound: {format_gross(t * t + t)}", file=out)
        print(f"observable: {'yes' if observable_simulation_steps(t) else 'no'}", file=out)
    return EXIT_OK


def cmd_count(args, out) -> int:
    if args.points < 2:
        raise UsageError("--points must be at least 2")
    print(format_gross(count_positional(args.points, args.interval)), file=out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="grossturing", description="Grossone arithmetic and Turing machine tools.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    e = sub.add_parser("eval", help="evaluate a gross-number expression")
    e.add_argument("expr")
    e.set_defaults(handler=cmd_eval)

    r = sub.add_parser("run", help="run a machine file on an input word")
    r.add_argument("file")
    r.add_argument("--input", default="", help="input word (default empty)")
    r.add_argument("--max-steps", type=int, default=1_000_000)
    r.add_argument("--provenance", help="sidecar to encode input and decode output (default FILE.prov if present)")
    r.set_defaults(handler=cmd_run)

    c = sub.add_parser("compile", help="compile a multi-tape machine to one tape")
    c.add_argument("file")
    c.add_argument("-o", "--output", required=True)
    c.add_argument("--verify", type=int, metavar="LEN", help="check all inputs up to LEN symbols")
    c.add_argument("--jobs", type=int, default=1, help=argparse.SUPPRESS)
    c.set_defaults(handler=cmd_compile)

    a = sub.add_parser("analyze", help="observability report for a machine")
    a.add_argument("file")
    a.add_argument("--user-radix", type=int, default=10)
    a.add_argument("--steps", help="simulated steps t (an integer or a gross expression)")
    a.add_argument("--input", default="", help="input word for the step measurement")
    a.set_defaults(handler=cmd_analyze)

    n = sub.add_parser("count", help="count positional numerals with G digits")
    n.add_argument("--points", type=int, required=True, metavar="B")
    n.add_argument("--interval", choices=("half-open", "open", "integers"), default="half-open")
    n.set_defaults(handler=cmd_count)
    return p


def main(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "max_steps", 0) < 0:
            raise UsageError("--max-steps must be non-negative")
        if getattr(args, "jobs", 1) < 1:
            raise UsageError("--jobs must be positive")
        return args.handler(args, out)
    except UsageError as exc:
        print(exc, file=err)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if not exc.code else EXIT_USAGE
    except (GrossSyntaxError, _ParseFailure, InputSymbolOutOfAlphabet, CompileError, BoundaryViolation) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_PARSE
    except GrossError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_UNSUPPORTED


if __name__ == "__main__":
    sys.exit(main())
