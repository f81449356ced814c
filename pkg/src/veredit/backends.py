"""Buffer backends.

Every backend must be observationally equivalent to the reference model: the
same commands from the same starting lines give the same outputs and the
same lines. ``veredit verify`` checks this by differential testing.

Backends mutate in place. ``apply_command`` returns the backend with the
output so callers can treat it value-to-value.
"""
from __future__ import annotations

import abc
from typing import Dict, Iterable, List, Tuple, Type

from veredit import buffer as bm
from veredit.dsl import Command, DeleteLine, InsertLine, ReadLine, editor_eval


class BufferBackend(abc.ABC):
    name: str = "abstract"

    @classmethod
    @abc.abstractmethod
    def from_lines(cls, lines: Iterable[str]) -> "BufferBackend":
        ...

    @abc.abstractmethod
    def to_lines(self) -> List[str]:
        ...

    @abc.abstractmethod
    def apply(self, cmd: Command) -> str:
        """Execute ``cmd`` in place and return its output line."""

    def __len__(self):
        return len(self.to_lines())

    def __repr__(self):
        return f"{type(self).__name__}({self.to_lines()!r})"


def apply_command(backend: BufferBackend, cmd: Command) -> Tuple[BufferBackend, str]:
    out = backend.apply(cmd)
    return backend, out


class ReferenceBackend(BufferBackend):
    """The reference model wrapped as a backend."""

    name = "reference"

    def __init__(self, lines: bm.Buffer = ()):
        self._buffer = bm.make_buffer(lines)

    @classmethod
    def from_lines(cls, lines):
        return cls(lines)

    def to_lines(self):
        return list(self._buffer)

    def apply(self, cmd):
        self._buffer, out = editor_eval(cmd, self._buffer)
        return out

    def __len__(self):
        return len(self._buffer)


class GapBuffer(BufferBackend):
    """A gap buffer over lines.

    Lines before the gap live in ``_before`` in order; lines after the gap live
    in ``_after`` in reverse, so moving the gap by one line is a single
    pop/append. Mutations first move the gap to the command position.
    """

    name = "gap"

    def __init__(self, lines: Iterable[str] = ()):
        self._before: List[str] = list(bm.make_buffer(lines))
        self._after: List[str] = []

    @classmethod
    def from_lines(cls, lines):
        return cls(lines)

    @property
    def gap_position(self) -> int:
        return len(self._before)

    def __len__(self):
        return len(self._before) + len(self._after)

    def to_lines(self):
        return self._before + self._after[::-1]

    def move_gap(self, pos: int) -> None:
        pos = min(pos, len(self))
        before, after = self._before, self._after
        while len(before) > pos:
            after.append(before.pop())
        while len(before) < pos:
            before.append(after.pop())

    def _get(self, pos: int) -> str:
        nb = len(self._before)
        if pos < nb:
            return self._before[pos]
        return self._after[len(self._after) - 1 - (pos - nb)]

    def apply(self, cmd):
        if isinstance(cmd, InsertLine):
            self.move_gap(cmd.pos)
            self._before.append(cmd.text)
            return ""
        if isinstance(cmd, ReadLine):
            if cmd.pos < len(self):
                return self._get(cmd.pos)
            return cmd.default
        if isinstance(cmd, DeleteLine):
            if cmd.pos < len(self):
                self.move_gap(cmd.pos)
                self._after.pop()
            return ""
        raise TypeError(f"not a command: {cmd!r}")


BACKENDS: Dict[str, Type[BufferBackend]] = {
    ReferenceBackend.name: ReferenceBackend,
    GapBuffer.name: GapBuffer,
}


def get_backend(name: str) -> Type[BufferBackend]:
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(
            f"unknown backend {name!r} (choose from {', '.join(sorted(BACKENDS))})"
        ) from None
