"""Executable theorem checks, random generators and a differential tester.

Each ``check_*`` function returns True for every input satisfying its
hypothesis; inputs that violate the hypothesis are vacuously true. The
property suite samples those inputs with hypothesis-respecting generators.
One false return anywhere is a defect, not noise.

Every generated case gets its own seed derived from the run seed, the
property name and the case index, so a failure can be replayed alone and
reports do not depend on evaluation order.
"""
from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, field
from typing import Callable, Dict, List, NamedTuple, Optional, Sequence, Tuple

from veredit import buffer as bm
from veredit import fileio
from veredit.backends import BufferBackend
from veredit.buffer import Buffer, Line
from veredit.dsl import (
    Command, DeleteLine, InsertLine, ReadLine, dumps_trace, editor_eval, eval_trace,
)

# empty, whitespace-only, multi-byte and "\r" content all belong in the mix
ALPHABET = ["a", "b", "z", "0", " ", "\t", "\r", "é", "ß", "日", "本", "\u200b", "🙂"]


@dataclass(frozen=True)
class TraceSpec:
    seed: int = 0
    num_commands: int = 200
    max_line_len: int = 8
    max_pos_slack: int = 16
    cases: int = 1000
    max_buffer_len: int = 12


class Failure(NamedTuple):
    seed: int
    description: str
    trace: Optional[Tuple[Command, ...]] = None


@dataclass
class PropertyReport:
    property_name: str
    cases_run: int = 0
    failures: List[Failure] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        line = f"{status} {self.property_name}: {self.cases_run} cases"
        if self.failures:
            line += f", {len(self.failures)} failing (first seed {self.failures[0].seed})"
        return line


def case_seed(seed: int, name: str, index: int) -> int:
    digest = hashlib.blake2b(f"{seed}:{name}:{index}".encode(), digest_size=8).digest()
    return int.from_bytes(digest, "little")


# -- generators --------------------------------------------------------------

def gen_line(rng: random.Random, max_len: int) -> Line:
    r = rng.random()
    if r < 0.1:
        return ""
    if r < 0.15:
        return " " * rng.randint(1, max(1, max_len))
    return "".join(rng.choice(ALPHABET) for _ in range(rng.randint(0, max_len)))


def gen_buffer(rng: random.Random, spec: TraceSpec) -> Buffer:
    n = rng.randint(0, spec.max_buffer_len)
    b = [gen_line(rng, spec.max_line_len) for _ in range(n)]
    if b and rng.random() < 0.2:
        # duplicates are legal and worth stressing
        b[rng.randrange(len(b))] = rng.choice(b)
    return tuple(b)


def gen_pos_within(rng: random.Random, b: Sequence) -> int:
    return rng.randint(0, len(b))


def gen_pos_beyond(rng: random.Random, b: Sequence, spec: TraceSpec) -> int:
    return rng.randint(len(b), len(b) + spec.max_pos_slack)


def gen_pos_any(rng: random.Random, b: Sequence, spec: TraceSpec) -> int:
    return rng.randint(0, len(b) + spec.max_pos_slack)


def gen_command(rng: random.Random, length: int, spec: TraceSpec) -> Command:
    pos = rng.randint(0, length + spec.max_pos_slack)
    r = rng.random()
    if r < 0.5:
        return InsertLine(pos, gen_line(rng, spec.max_line_len))
    if r < 0.8:
        return DeleteLine(pos)
    default = gen_line(rng, spec.max_line_len) if rng.random() < 0.2 else ""
    return ReadLine(pos, default)


def gen_trace(rng: random.Random, spec: TraceSpec, num_commands: Optional[int] = None
              ) -> List[Command]:
    if num_commands is None:
        num_commands = spec.num_commands
    cmds = []
    length = 0
    for _ in range(num_commands):
        cmd = gen_command(rng, length, spec)
        if isinstance(cmd, InsertLine):
            length += 1
        elif isinstance(cmd, DeleteLine) and cmd.pos < length:
            length -= 1
        cmds.append(cmd)
    return cmds


def gen_image(rng: random.Random, spec: TraceSpec) -> bytes:
    """A UTF-8 image that is empty or ends in a newline."""
    lines = [gen_line(rng, spec.max_line_len) for _ in range(rng.randint(0, spec.max_buffer_len))]
    return "".join(s + "\n" for s in lines).encode("utf-8")


# -- theorem checks ----------------------------------------------------------

def check_lemma_1(l: Buffer, n: int) -> bool:
    if n > len(l):
        return True
    return len(bm.first_n(l, n)) == n


def check_thm_1(n: int, l1: Buffer, l2: Buffer, s: Line, d: Line) -> bool:
    if n > len(l1):
        return True
    return bm.read_line(bm.first_n(l1, n) + (s,) + tuple(l2), n, d) == s


def check_can_insert(s: Line, n: int) -> bool:
    # the witness buffer is the empty one
    return editor_eval(InsertLine(n, s), ()).buffer == (s,)


def check_can_read(s: Line, n: int, b: Buffer) -> bool:
    if n > len(b):
        return True
    inserted = editor_eval(InsertLine(n, s), b).buffer
    return editor_eval(ReadLine(n, ""), inserted).output == s


def check_can_change(s2: Line, n: int, b: Buffer) -> bool:
    if n > len(b):
        return True
    deleted = editor_eval(DeleteLine(n), b).buffer
    changed = editor_eval(InsertLine(n, s2), deleted).buffer
    return editor_eval(ReadLine(n, ""), changed).output == s2


# -- out-of-range behaviour --------------------------------------------------

def check_insert_appends(b: Buffer, n: int, s: Line) -> bool:
    if n < len(b):
        return True
    return bm.insert_line(b, n, s) == tuple(b) + (s,)


def check_delete_noop(b: Buffer, n: int) -> bool:
    if n < len(b):
        return True
    return bm.delete_line(b, n) == tuple(b)


def check_read_default(b: Buffer, n: int, d: Line) -> bool:
    if n < len(b):
        return True
    return bm.read_line(b, n, d) == d


# -- structural invariants ---------------------------------------------------

def check_partition(b: Buffer, n: int) -> bool:
    return bm.first_n(b, n) + bm.skip_n(b, n) == tuple(b)


def check_insert_length(b: Buffer, n: int, s: Line) -> bool:
    return len(bm.insert_line(b, n, s)) == len(b) + 1


def check_delete_length(b: Buffer, n: int) -> bool:
    expected = len(b) - 1 if n < len(b) else len(b)
    return len(bm.delete_line(b, n)) == expected


def check_insert_delete_inverse(b: Buffer, n: int, s: Line) -> bool:
    if n > len(b):
        return True
    return bm.delete_line(bm.insert_line(b, n, s), n) == tuple(b)


def check_frame(b: Buffer, n: int, s: Line) -> bool:
    if n > len(b):
        return True
    after = bm.insert_line(b, n, s)
    if len(after) != len(b) + 1:
        return False
    for j in range(len(after)):
        if j == n:
            continue
        src = j if j < n else j - 1
        if bm.read_line(after, j, None) != bm.read_line(b, src, None):
            return False
    return True


# -- evaluator properties ----------------------------------------------------

def check_read_preserves(b: Buffer, n: int, d: Line) -> bool:
    return editor_eval(ReadLine(n, d), b).buffer == tuple(b)


def check_eval_projection(cmd: Command, b: Buffer) -> bool:
    res = editor_eval(cmd, b)
    if isinstance(cmd, InsertLine):
        return res == (bm.insert_line(b, cmd.pos, cmd.text), "")
    if isinstance(cmd, ReadLine):
        return res == (tuple(b), bm.read_line(b, cmd.pos, cmd.default))
    return res == (bm.delete_line(b, cmd.pos), "")


def check_trace_split(c1: Sequence[Command], c2: Sequence[Command], b: Buffer) -> bool:
    whole_b, whole_out = eval_trace(list(c1) + list(c2), b)
    mid_b, out1 = eval_trace(c1, b)
    end_b, out2 = eval_trace(c2, mid_b)
    return whole_b == end_b and whole_out == out1 + out2


# -- file round trips --------------------------------------------------------

def check_load_save(b: Buffer) -> bool:
    return fileio.load(fileio.save(b)) == tuple(b)


def check_save_load(image: bytes) -> bool:
    if image and not image.endswith(b"\n"):
        return True
    return fileio.save(fileio.load(image)) == image


# -- property registry -------------------------------------------------------

Generator = Callable[[random.Random, TraceSpec], tuple]


def _line(rng, spec):
    return gen_line(rng, spec.max_line_len)


def _args_lemma_1(rng, spec):
    l = gen_buffer(rng, spec)
    return l, gen_pos_within(rng, l)


def _args_thm_1(rng, spec):
    l1 = gen_buffer(rng, spec)
    return gen_pos_within(rng, l1), l1, gen_buffer(rng, spec), _line(rng, spec), _line(rng, spec)


def _args_can_insert(rng, spec):
    # any position at all, including far past the end
    return _line(rng, spec), rng.randint(0, 2 ** rng.randint(0, 62))


def _args_s_n_b(rng, spec):
    b = gen_buffer(rng, spec)
    return _line(rng, spec), gen_pos_within(rng, b), b


def _args_b_beyond_line(rng, spec):
    b = gen_buffer(rng, spec)
    return b, gen_pos_beyond(rng, b, spec), _line(rng, spec)


def _args_b_beyond(rng, spec):
    b = gen_buffer(rng, spec)
    return b, gen_pos_beyond(rng, b, spec)


def _args_b_any(rng, spec):
    b = gen_buffer(rng, spec)
    return b, gen_pos_any(rng, b, spec)


def _args_b_any_line(rng, spec):
    b = gen_buffer(rng, spec)
    return b, gen_pos_any(rng, b, spec), _line(rng, spec)


def _args_b_within_line(rng, spec):
    b = gen_buffer(rng, spec)
    return b, gen_pos_within(rng, b), _line(rng, spec)


def _args_eval_projection(rng, spec):
    b = gen_buffer(rng, spec)
    return gen_command(rng, len(b), spec), b


def _args_trace_split(rng, spec):
    b = gen_buffer(rng, spec)
    c1 = gen_trace(rng, spec, rng.randint(0, 10))
    c2 = gen_trace(rng, spec, rng.randint(0, 10))
    return c1, c2, b


@dataclass(frozen=True)
class Property:
    name: str
    group: str
    check: Callable[..., bool]
    generate: Generator


PROPERTIES: Dict[str, Property] = {p.name: p for p in [
    Property("lemma_1", "theorem", check_lemma_1, _args_lemma_1),
    Property("thm_1", "theorem", check_thm_1, _args_thm_1),
    Property("can_insert", "theorem", check_can_insert, _args_can_insert),
    Property("can_read", "theorem", check_can_read, _args_s_n_b),
    Property("can_change", "theorem", check_can_change, _args_s_n_b),
    Property("insert_appends", "clamping", check_insert_appends, _args_b_beyond_line),
    Property("delete_noop", "clamping", check_delete_noop, _args_b_beyond),
    Property("read_default", "clamping", check_read_default, _args_b_beyond_line),
    Property("partition", "structural", check_partition, _args_b_any),
    Property("insert_length", "structural", check_insert_length, _args_b_any_line),
    Property("delete_length", "structural", check_delete_length, _args_b_any),
    Property("insert_delete_inverse", "structural", check_insert_delete_inverse,
             _args_b_within_line),
    Property("frame", "structural", check_frame, _args_b_within_line),
    Property("read_preserves", "dsl", check_read_preserves, _args_b_any_line),
    Property("eval_projection", "dsl", check_eval_projection, _args_eval_projection),
    Property("trace_split", "dsl", check_trace_split, _args_trace_split),
    Property("load_save", "fileio", check_load_save,
             lambda rng, spec: (gen_buffer(rng, spec),)),
    Property("save_load", "fileio", check_save_load,
             lambda rng, spec: (gen_image(rng, spec),)),
]}

GROUPS = tuple(dict.fromkeys(p.group for p in PROPERTIES.values()))

MAX_RECORDED_FAILURES = 20


def run_property(prop: Property, spec: TraceSpec) -> PropertyReport:
    report = PropertyReport(prop.name)
    for i in range(spec.cases):
        cs = case_seed(spec.seed, prop.name, i)
        args = prop.generate(random.Random(cs), spec)
        try:
            ok = prop.check(*args)
        except Exception as e:  # a crash is a counterexample too
            ok = False
            args = args + (f"raised {type(e).__name__}: {e}",)
        report.cases_run += 1
        if not ok and len(report.failures) < MAX_RECORDED_FAILURES:
            report.failures.append(Failure(cs, f"{prop.name}{args!r}"))
    return report


def replay_case(name: str, seed: int, spec: TraceSpec = TraceSpec()) -> tuple:
    """Regenerate the arguments of the case that produced ``seed``."""
    return PROPERTIES[name].generate(random.Random(seed), spec)


def run_property_suite(spec: TraceSpec, groups: Optional[Sequence[str]] = None
                       ) -> List[PropertyReport]:
    return [run_property(p, spec) for p in PROPERTIES.values()
            if groups is None or p.group in groups]


# -- differential testing ----------------------------------------------------

BackendFactory = Callable[[Sequence[str]], BufferBackend]


def _factory(backend) -> BackendFactory:
    return getattr(backend, "from_lines", backend)


def _name(backend) -> str:
    return getattr(backend, "name", None) or getattr(backend, "__name__", repr(backend))


def first_divergence(trace: Sequence[Command], backends: Sequence
                     ) -> Optional[Tuple[int, str]]:
    """Run ``trace`` on the reference and on each backend in lock step.

    Returns ``(step, description)`` for the earliest step at which any
    backend's output or lines differ from the reference, or None.
    """
    instances = [(_name(b), _factory(b)([])) for b in backends]
    ref: Buffer = ()
    for step, cmd in enumerate(trace):
        ref, expected = editor_eval(cmd, ref)
        for name, inst in instances:
            try:
                got = inst.apply(cmd)
                lines = inst.to_lines()
            except Exception as e:
                return step, f"{name}: {cmd!r} raised {type(e).__name__}: {e}"
            if got != expected:
                return step, f"{name}: {cmd!r} output {got!r}, reference {expected!r}"
            if tuple(lines) != ref:
                return step, f"{name}: after {cmd!r} lines {lines!r}, reference {list(ref)!r}"
    return None


def _simpler_commands(cmd: Command):
    if cmd.pos:
        for pos in dict.fromkeys((0, cmd.pos // 2, cmd.pos - 1)):
            yield type(cmd)(pos, *_payload(cmd))
    if isinstance(cmd, InsertLine) and cmd.text:
        yield InsertLine(cmd.pos, "")
        if len(cmd.text) > 1:
            yield InsertLine(cmd.pos, cmd.text[0])
    if isinstance(cmd, ReadLine) and cmd.default:
        yield ReadLine(cmd.pos, "")


def _payload(cmd: Command) -> tuple:
    if isinstance(cmd, InsertLine):
        return (cmd.text,)
    if isinstance(cmd, ReadLine):
        return (cmd.default,)
    return ()


def shrink_trace(trace: Sequence[Command], fails: Callable[[List[Command]], bool],
                 max_rounds: int = 50) -> List[Command]:
    """Shrink a failing trace to a locally minimal one that still fails.

    Removes chunks of commands (halving the chunk size down to single
    commands), then simplifies the remaining commands one at a time.
    """
    cur = list(trace)
    if not fails(cur):
        raise ValueError("trace does not fail")
    for _ in range(max_rounds):
        changed = False
        chunk = max(len(cur) // 2, 1)
        while chunk >= 1:
            i = 0
            while i < len(cur):
                cand = cur[:i] + cur[i + chunk:]
                if cand != cur and fails(cand):
                    cur, changed = cand, True
                else:
                    i += chunk
            chunk //= 2
        for i in range(len(cur)):
            for simpler in _simpler_commands(cur[i]):
                cand = cur[:i] + [simpler] + cur[i + 1:]
                if fails(cand):
                    cur[i], changed = simpler, True
                    break
        if not changed:
            break
    return cur


def run_differential(spec: TraceSpec, backends: Sequence, max_failures: int = 1,
                     shrink: bool = True) -> PropertyReport:
    """Compare ``backends`` against the reference on ``spec.cases`` traces.

    Stops after ``max_failures`` failing traces; each one is shrunk and kept
    on the failure record for replay.
    """
    if not backends:
        raise ValueError("at least one backend is required")
    names = ",".join(_name(b) for b in backends)
    report = PropertyReport(f"differential[{names}]")

    def fails(t):
        return first_divergence(t, backends) is not None

    for i in range(spec.cases):
        cs = case_seed(spec.seed, "differential", i)
        trace = gen_trace(random.Random(cs), spec)
        report.cases_run += 1
        div = first_divergence(trace, backends)
        if div is None:
            continue
        step, _ = div
        trace = trace[:step + 1]
        if shrink:
            trace = shrink_trace(trace, fails)
        _, desc = first_divergence(trace, backends)
        report.failures.append(Failure(cs, f"{len(trace)} commands; {desc}", tuple(trace)))
        if len(report.failures) >= max_failures:
            break
    return report


def first_failing_trace(reports: Sequence[PropertyReport]) -> Optional[str]:
    """The first recorded failing trace in trace file format, if any."""
    for r in reports:
        for f in r.failures:
            if f.trace is not None:
                return dumps_trace(f.trace)
    return None
