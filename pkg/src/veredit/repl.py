"""Interactive line-editor session.

The session keeps a 1-based current-line pointer (0 when the buffer is
empty) and translates user addresses to 0-based positions. Every read and
every change to the buffer is issued as a command value through the
backend, so the verified semantics covers all UI actions.

Errors print a single ``?``, as ed does.
"""
from __future__ import annotations

import sys
from dataclasses import dataclass, field
from typing import IO, Iterable, List, Optional

from veredit import fileio
from veredit.backends import BufferBackend, GapBuffer
from veredit.dsl import DeleteLine, InsertLine, ReadLine
from veredit.parser import ParseError, ParserMode, Quit, ReplCommand, parse_line

ERROR = "?"


@dataclass
class StepOutput:
    text_out: List[str] = field(default_factory=list)
    error: bool = False
    terminate: bool = False


def _error() -> StepOutput:
    return StepOutput([ERROR], error=True)


class Session:
    def __init__(self, backend: Optional[BufferBackend] = None,
                 filename: Optional[str] = None, prompt: str = ""):
        self.backend = backend if backend is not None else GapBuffer()
        self.current = len(self.backend)
        self.filename = filename
        self.dirty = False
        self.mode = ParserMode.COMMAND
        self.prompt = prompt
        self._insert_at = 0
        self._quit_warned = False

    def __len__(self):
        return len(self.backend)

    def lines(self) -> List[str]:
        return self.backend.to_lines()

    def feed(self, text: str) -> StepOutput:
        """Parse one input line in the current mode and execute it."""
        try:
            cmd = parse_line(text, self.mode)
        except ParseError:
            self._quit_warned = False
            return _error()
        return self.execute(cmd)

    def execute(self, cmd: ReplCommand) -> StepOutput:
        if not isinstance(cmd, Quit):
            self._quit_warned = False
        handler = getattr(self, "_do_" + type(cmd).__name__, None)
        if handler is None:
            raise TypeError(f"not a REPL command: {cmd!r}")
        return handler(cmd)

    def _do_SetAddress(self, cmd):
        if not 1 <= cmd.addr <= len(self):
            return _error()
        self.current = cmd.addr
        return StepOutput()

    def _do_EnterInsert(self, cmd):
        self._insert_at = max(self.current - 1, 0)
        self.mode = ParserMode.INSERT
        return StepOutput()

    def _do_EnterAppend(self, cmd):
        self._insert_at = self.current
        self.mode = ParserMode.INSERT
        return StepOutput()

    def _do_InsertText(self, cmd):
        self.backend.apply(InsertLine(self._insert_at, cmd.line))
        self._insert_at += 1
        self.current = self._insert_at
        self.dirty = True
        return StepOutput()

    def _do_EndInsert(self, cmd):
        self.mode = ParserMode.COMMAND
        return StepOutput()

    def _do_Delete(self, cmd):
        if self.current == 0:
            return _error()
        self.backend.apply(DeleteLine(self.current - 1))
        self.current = min(self.current, len(self))
        self.dirty = True
        return StepOutput()

    def _read_current(self):
        return self.backend.apply(ReadLine(self.current - 1, ""))

    def _do_PrintNumbered(self, cmd):
        if self.current == 0:
            return _error()
        return StepOutput([f"{self.current}\t{self._read_current()}"])

    def _do_Print(self, cmd):
        if self.current == 0:
            return _error()
        return StepOutput([self._read_current()])

    def _do_Write(self, cmd):
        path = cmd.path if cmd.path is not None else self.filename
        if path is None:
            return _error()
        try:
            fileio.write_file(path, tuple(self.lines()))
        except OSError as e:
            print(f"veredit: {path}: {e.strerror or e}", file=sys.stderr)
            return _error()
        self.filename = path
        self.dirty = False
        return StepOutput()

    def _do_Quit(self, cmd):
        if self.dirty and not self._quit_warned:
            self._quit_warned = True
            return _error()
        return StepOutput(terminate=True)

    def _do_Empty(self, cmd):
        return StepOutput()


def run_session(session: Session, source: Iterable[str], sink: IO[str]) -> int:
    """Drive ``session`` from ``source`` until quit or end of input.

    Lines read from ``source`` may carry their trailing newline.
    Returns the process exit code.
    """
    try:
        it = iter(source)
        while True:
            if session.prompt:
                sink.write(session.prompt)
                sink.flush()
            try:
                raw = next(it)
            except StopIteration:
                return 0
            text = raw[:-1] if raw.endswith("\n") else raw
            result = session.feed(text)
            for line in result.text_out:
                sink.write(line + "\n")
            if result.terminate:
                return 0
    except (OSError, UnicodeDecodeError) as e:
        print(f"veredit: {e}", file=sys.stderr)
        return 1
