"""The editing command algebra and its evaluator.

``editor_eval`` dispatches one command against a buffer and returns the new
buffer together with an output line. Only reads produce output; inserts and
deletes return the empty line.

Commands also have a one-per-line text form used for recorded traces::

    I <pos> <text>      insert <text> (verbatim to end of line)
    R <pos>             read with the empty default
    R <pos> <default>   read with a non-empty default
    D <pos>             delete
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, List, NamedTuple, Sequence, Tuple, Union

from veredit import buffer as bm
from veredit.buffer import Buffer, Line


@dataclass(frozen=True)
class InsertLine:
    pos: int
    text: Line

    def __post_init__(self):
        bm.check_pos(self.pos)
        bm.check_line(self.text)


@dataclass(frozen=True)
class ReadLine:
    pos: int
    default: Line = ""

    def __post_init__(self):
        bm.check_pos(self.pos)
        bm.check_line(self.default)


@dataclass(frozen=True)
class DeleteLine:
    pos: int

    def __post_init__(self):
        bm.check_pos(self.pos)


Command = Union[InsertLine, ReadLine, DeleteLine]


class EvalResult(NamedTuple):
    buffer: Buffer
    output: Line


def editor_eval(cmd: Command, b: Buffer) -> EvalResult:
    if isinstance(cmd, InsertLine):
        return EvalResult(bm.insert_line(b, cmd.pos, cmd.text), "")
    if isinstance(cmd, ReadLine):
        return EvalResult(b, bm.read_line(b, cmd.pos, cmd.default))
    if isinstance(cmd, DeleteLine):
        return EvalResult(bm.delete_line(b, cmd.pos), "")
    raise TypeError(f"not a command: {cmd!r}")


def eval_trace(cmds: Iterable[Command], b0: Buffer = ()) -> Tuple[Buffer, List[Line]]:
    """Fold ``editor_eval`` over ``cmds``, collecting every step's output."""
    b = tuple(b0)
    outputs = []
    for cmd in cmds:
        b, out = editor_eval(cmd, b)
        outputs.append(out)
    return b, outputs


# -- trace text format -------------------------------------------------------

class TraceFormatError(ValueError):
    def __init__(self, lineno, text, reason):
        super().__init__(f"line {lineno}: {reason}: {text!r}")
        self.lineno = lineno
        self.text = text


_CMD_RE = re.compile(r"([IRD]) ([0-9]+)(?: (.*))?\Z", re.DOTALL)


def format_command(cmd: Command) -> str:
    if isinstance(cmd, InsertLine):
        return f"I {cmd.pos} {cmd.text}"
    if isinstance(cmd, ReadLine):
        return f"R {cmd.pos} {cmd.default}" if cmd.default else f"R {cmd.pos}"
    if isinstance(cmd, DeleteLine):
        return f"D {cmd.pos}"
    raise TypeError(f"not a command: {cmd!r}")


def parse_command(text: str, lineno: int = 1) -> Command:
    m = _CMD_RE.match(text)
    if m is None or "\n" in text:
        raise TraceFormatError(lineno, text, "malformed command")
    op, pos, rest = m.group(1), int(m.group(2)), m.group(3)
    if op == "I":
        return InsertLine(pos, rest or "")
    if op == "R":
        return ReadLine(pos, rest or "")
    if rest is not None:
        raise TraceFormatError(lineno, text, "delete takes no argument")
    return DeleteLine(pos)


def dumps_trace(cmds: Sequence[Command]) -> str:
    return "".join(format_command(c) + "\n" for c in cmds)


def loads_trace(text: str) -> List[Command]:
    # split on "\n" only; "\r" is line content, as in buffers
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    return [parse_command(line, i) for i, line in enumerate(lines, 1)]
