"""Command line entry point.

    veredit [FILE] [-p PROMPT] [--backend NAME] [--script PATH]
    veredit verify [--seed N] [--cases N] [--backend NAME ...] [--trace-file PATH]
    veredit replay TRACE [--backend NAME ...]

A file literally named ``verify`` or ``replay`` must be given as ``./verify``.
"""
from __future__ import annotations

import argparse
import sys
import time

from veredit import fileio, harness
from veredit.backends import BACKENDS, get_backend
from veredit.dsl import TraceFormatError, loads_trace
from veredit.repl import Session, run_session


def warn(msg: str) -> None:
    print(f"veredit: {msg}", file=sys.stderr)


def _edit_parser():
    p = argparse.ArgumentParser(prog="veredit", description="ed-style line editor")
    p.add_argument("file", nargs="?", help="file to edit")
    p.add_argument("-p", "--prompt", default="", help="prompt string (default: none)")
    p.add_argument("--backend", default="gap", choices=sorted(BACKENDS))
    p.add_argument("--script", help="read commands from this file instead of stdin")
    return p


def _verify_parser():
    p = argparse.ArgumentParser(prog="veredit verify",
                                description="run the property suite and differential tests")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cases", type=int, default=1000, help="cases per property")
    p.add_argument("--traces", type=int, default=500, help="differential traces")
    p.add_argument("--commands", type=int, default=200, help="commands per trace")
    p.add_argument("--backend", action="extend", nargs="+", choices=sorted(BACKENDS),
                   help="backends to check against the reference (default: gap)")
    p.add_argument("--trace-file", help="write the shrunk failing trace here")
    return p


def _replay_parser():
    p = argparse.ArgumentParser(prog="veredit replay",
                                description="replay a recorded trace against backends")
    p.add_argument("trace")
    p.add_argument("--backend", action="extend", nargs="+", choices=sorted(BACKENDS))
    return p


def edit_main(argv) -> int:
    args = _edit_parser().parse_args(argv)
    lines = ()
    if args.file:
        try:
            lines = fileio.read_file(args.file)
        except FileNotFoundError:
            warn(f"{args.file}: no such file")
        except (OSError, fileio.LoadError) as e:
            warn(f"{args.file}: {e}")
            return 1
    session = Session(get_backend(args.backend).from_lines(lines),
                      filename=args.file, prompt=args.prompt)
    if args.script:
        try:
            with open(args.script, encoding="utf-8", newline="") as f:
                return run_session(session, f, sys.stdout)
        except OSError as e:
            warn(f"{args.script}: {e}")
            return 1
    stdin = open(sys.stdin.fileno(), encoding="utf-8", newline="", closefd=False)
    return run_session(session, stdin, sys.stdout)


def verify_main(argv) -> int:
    args = _verify_parser().parse_args(argv)
    backends = [get_backend(n) for n in (args.backend or ["gap"])]
    start = time.perf_counter()
    spec = harness.TraceSpec(seed=args.seed, cases=args.cases)
    reports = harness.run_property_suite(spec)
    diff_spec = harness.TraceSpec(seed=args.seed, cases=args.traces,
                                  num_commands=args.commands)
    reports.append(harness.run_differential(diff_spec, backends))
    for r in reports:
        print(r.summary())
        for f in r.failures[:3]:
            print(f"    seed {f.seed}: {f.description}")
    ok = all(r.passed for r in reports)
    print(f"{'OK' if ok else 'FAILED'} ({time.perf_counter() - start:.2f}s)")
    trace = harness.first_failing_trace(reports)
    if trace is not None and args.trace_file:
        with open(args.trace_file, "w", encoding="utf-8", newline="") as f:
            f.write(trace)
        print(f"failing trace written to {args.trace_file}")
    return 0 if ok else 1


def replay_main(argv) -> int:
    args = _replay_parser().parse_args(argv)
    try:
        with open(args.trace, encoding="utf-8", newline="") as f:
            trace = loads_trace(f.read())
    except (OSError, TraceFormatError, UnicodeDecodeError) as e:
        warn(f"{args.trace}: {e}")
        return 1
    backends = [get_backend(n) for n in (args.backend or ["gap"])]
    div = harness.first_divergence(trace, backends)
    if div is None:
        print(f"OK {len(trace)} commands, no divergence")
        return 0
    step, desc = div
    print(f"DIVERGED at command {step + 1}: {desc}")
    return 1


def main(argv=None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    if argv and argv[0] == "verify":
        return verify_main(argv[1:])
    if argv and argv[0] == "replay":
        return replay_main(argv[1:])
    return edit_main(argv)


if __name__ == "__main__":
    sys.exit(main())
