"""Command line front end and REPL.

Exit codes: 0 for final/truncated/suspended traces, 1 for syntax or type
errors, 2 for runtime-error traces, 64 for malformed command lines.
"""

from __future__ import annotations

import argparse
import sys

from . import core, parser, prelude, typecheck
from .errors import StepwiseError
from .machine import Machine, run
from .trace import render_trace_plain, render_trace_structured
from .types import render_type

EXIT_OK = 0
EXIT_BAD_PROGRAM = 1
EXIT_RUNTIME = 2
EXIT_USAGE = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_arg_parser() -> _Parser:
    p = _Parser(prog="stepwise",
                description="Step-by-step tracing interpreter for a lazy "
                            "functional language (tuples up to 4 components).")
    sub = p.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("eval", help="evaluate an expression against a "
                                     "program file")
    ev.add_argument("program", nargs="?", default=None,
                    help="program file (prelude only if absent)")
    ev.add_argument("-e", "--expr", default=None, help="goal expression")
    ev.add_argument("--max-steps", type=int, default=1000)
    ev.add_argument("--format", choices=["plain", "structured"],
                    default="plain")
    ev.add_argument("--wrap", type=int, default=60)
    ev.add_argument("--continue-budget", type=int, default=10)
    ev.add_argument("--mode",
                    choices=["trace", "value-only", "typecheck-only",
                             "dump-prelude"],
                    default="trace")

    sub.add_parser("repl", help="interactive session")
    return p


class Session:
    """A loaded program: prelude plus user definitions."""

    def __init__(self):
        self.env, self.bindings = prelude.load_prelude()
        self.inferencer = None

    def load(self, source: str) -> None:
        program = parser.parse_program(source)
        base_env, _ = prelude.load_prelude()
        env, inf = typecheck.infer_program(program, base_env)
        user = core.desugar_program(program, inf.constructors)
        _, pre = prelude.load_prelude()
        self.env = env
        self.bindings = core.merge_bindings(user, pre)
        self.inferencer = inf

    def goal(self, text: str) -> core.CoreExpr:
        expr = parser.parse_expr(text)
        constructors = self.bindings.constructors
        typecheck.infer_expr(expr, self.env, constructors)
        return core.desugar_expr(expr, constructors)

    def goal_type(self, text: str) -> str:
        expr = parser.parse_expr(text)
        scheme = typecheck.infer_expr(expr, self.env,
                                      self.bindings.constructors)
        return render_type(scheme)


def cmd_eval(args) -> int:
    if args.mode == "dump-prelude":
        print(prelude.prelude_source(), end="")
        return EXIT_OK
    if args.max_steps < 0:
        print("stepwise: error: --max-steps must be >= 0", file=sys.stderr)
        return EXIT_USAGE
    if args.wrap < 20:
        print("stepwise: error: --wrap must be >= 20", file=sys.stderr)
        return EXIT_USAGE

    session = Session()
    if args.program is not None:
        try:
            with open(args.program, encoding="utf-8") as f:
                source = f.read()
        except OSError as e:
            print(f"stepwise: cannot read {args.program}: {e.strerror}",
                  file=sys.stderr)
            return EXIT_BAD_PROGRAM
        try:
            session.load(source)
        except StepwiseError as e:
            print(str(e), file=sys.stderr)
            return EXIT_BAD_PROGRAM

    if args.mode == "typecheck-only":
        if args.expr is not None:
            try:
                print(session.goal_type(args.expr))
            except StepwiseError as e:
                print(str(e), file=sys.stderr)
                return EXIT_BAD_PROGRAM
        return EXIT_OK

    if args.expr is None:
        print("stepwise: error: an expression is required (-e EXPR)",
              file=sys.stderr)
        return EXIT_USAGE
    try:
        goal = session.goal(args.expr)
    except StepwiseError as e:
        print(str(e), file=sys.stderr)
        return EXIT_BAD_PROGRAM

    trace = run(session.bindings, goal, max_steps=args.max_steps,
                continue_budget=args.continue_budget)

    if args.mode == "value-only":
        if trace.status == "final":
            print(trace.final_display)
            return EXIT_OK
        if trace.status == "error":
            print(f"runtime error: {trace.error}", file=sys.stderr)
            return EXIT_RUNTIME
        print(trace.status, file=sys.stderr)
        return EXIT_OK

    if args.format == "structured":
        print(render_trace_structured(trace))
    else:
        print(render_trace_plain(trace, width=args.wrap))
    return EXIT_RUNTIME if trace.status == "error" else EXIT_OK


def repl_loop(stdin=None, stdout=None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout

    def say(text: str) -> None:
        print(text, file=stdout)

    session = Session()
    say("stepwise repl. Commands: :load FILE, :type EXPR, :step EXPR, "
        ":quit; a bare expression evaluates to its final value.")
    for line in stdin:
        line = line.strip()
        if not line:
            continue
        if line in (":quit", ":q"):
            break
        try:
            if line.startswith(":load "):
                path = line[len(":load "):].strip()
                try:
                    with open(path, encoding="utf-8") as f:
                        session.load(f.read())
                    say(f"loaded {path}")
                except OSError as e:
                    say(f"cannot read {path}: {e.strerror}")
            elif line.startswith(":type "):
                say(session.goal_type(line[len(":type "):]))
            elif line.startswith(":step "):
                _repl_step(session, line[len(":step "):], stdin, say)
            else:
                trace = run(session.bindings, session.goal(line))
                if trace.status == "final":
                    say(trace.final_display)
                elif trace.status == "error":
                    say(f"runtime error: {trace.error}")
                else:
                    say(f"-- {trace.status}")
        except StepwiseError as e:
            say(str(e))
    return EXIT_OK


def _repl_step(session: Session, text: str, stdin, say) -> None:
    machine = Machine(session.bindings, session.goal(text))

    def show() -> None:
        s = machine.current
        if s.kind is None:
            say(f"  {s.display}")
        else:
            say(f"  {{ {s.label} }}")
            dots = "." * (4 * s.depth)
            sep = " " if dots else ""
            say(f"= {dots}{sep}{s.display}")

    show()
    say("step (n/p/q)?")
    for line in stdin:
        cmd = line.strip()
        if cmd == "q":
            return
        if cmd == "n":
            if machine.step() is None:
                say(f"-- {machine.status}"
                    + (f": {machine.error}" if machine.error else ""))
            else:
                show()
        elif cmd == "p":
            machine.step_back()
            show()
        say("step (n/p/q)?")


def main(argv=None) -> int:
    args = build_arg_parser().parse_args(argv)
    if args.command == "repl":
        code = repl_loop()
    else:
        code = cmd_eval(args)
    if argv is None:
        raise SystemExit(code)
    return code


if __name__ == "__main__":
    main()
