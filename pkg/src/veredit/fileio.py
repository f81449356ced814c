"""Loading and saving buffers as UTF-8 text with LF terminators.

``"\\r"`` is ordinary line content and is never normalised. A final line
without a terminator is kept on load and gains one on save; that is the only
lossy case.
"""
from __future__ import annotations

import os
from typing import Union

from veredit.buffer import Buffer


class LoadError(ValueError):
    def __init__(self, offset: int, reason: str):
        super().__init__(f"invalid UTF-8 at byte offset {offset}: {reason}")
        self.offset = offset


def load(image: bytes) -> Buffer:
    try:
        text = bytes(image).decode("utf-8")
    except UnicodeDecodeError as e:
        raise LoadError(e.start, e.reason) from None
    if not text:
        return ()
    lines = text.split("\n")
    if lines[-1] == "":
        lines.pop()
    return tuple(lines)


def save(b: Buffer) -> bytes:
    return "".join(line + "\n" for line in b).encode("utf-8")


def read_file(path: Union[str, os.PathLike]) -> Buffer:
    with open(path, "rb") as f:
        return load(f.read())


def write_file(path: Union[str, os.PathLike], b: Buffer) -> int:
    """Write ``b`` to ``path`` and return the number of bytes written."""
    data = save(b)
    with open(path, "wb") as f:
        f.write(data)
    return len(data)
