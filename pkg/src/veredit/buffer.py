"""Reference buffer model.

A buffer is an immutable tuple of lines. The three editing operations are
total functions built from ``first_n``/``skip_n``/``read_line`` and keep the
clamping behaviour of the list functions they are defined with:

* inserting past the end appends,
* deleting past the end changes nothing,
* reading past the end yields the caller's default.

Positions are 0-based here. 1-based user addressing belongs to the REPL.
"""
from __future__ import annotations

from typing import Iterable, Tuple

Line = str
Buffer = Tuple[str, ...]


def check_line(s: str) -> Line:
    """Validate a single line and return it unchanged."""
    if not isinstance(s, str):
        raise TypeError(f"line must be str, not {type(s).__name__}")
    if "\n" in s:
        raise ValueError(f"line contains a newline: {s!r}")
    return s


def make_buffer(lines: Iterable[str] = ()) -> Buffer:
    """Build a buffer from any iterable of lines, validating each one."""
    return tuple(check_line(s) for s in lines)


def check_pos(pos: int) -> int:
    if isinstance(pos, bool) or not isinstance(pos, int):
        raise TypeError(f"position must be int, not {type(pos).__name__}")
    if pos < 0:
        raise ValueError(f"position must be non-negative, got {pos}")
    return pos


def first_n(b: Buffer, n: int) -> Buffer:
    """The first ``min(n, len(b))`` lines of ``b``."""
    return tuple(b[:check_pos(n)])


def skip_n(b: Buffer, n: int) -> Buffer:
    """``b`` without its first ``min(n, len(b))`` lines."""
    return tuple(b[check_pos(n):])


def read_line(b: Buffer, pos: int, d: Line) -> Line:
    """Line ``pos`` of ``b``, or ``d`` when ``pos`` is out of range."""
    if check_pos(pos) < len(b):
        return b[pos]
    return d


def insert_line(b: Buffer, pos: int, s: Line) -> Buffer:
    check_line(s)
    return first_n(b, pos) + (s,) + skip_n(b, pos)


def delete_line(b: Buffer, pos: int) -> Buffer:
    return first_n(b, pos) + skip_n(b, pos + 1)
