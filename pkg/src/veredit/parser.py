"""Mode-aware parser for the ed-style command language.

In command mode each input line is one command::

    i  a  d  n  p  q  w  w PATH  <decimal address>  <empty line>

In insert mode every line is text, except a lone ``.`` which ends insertion.
"""
from __future__ import annotations

import enum
import re
import sys
from dataclasses import dataclass
from typing import Optional, Union


class ParserMode(enum.Enum):
    COMMAND = "command"
    INSERT = "insert"


class ParseError(ValueError):
    def __init__(self, text: str, reason: str = "unknown command"):
        super().__init__(f"{reason}: {text!r}")
        self.text = text


@dataclass(frozen=True)
class SetAddress:
    addr: int

    def __post_init__(self):
        if self.addr < 1:
            raise ValueError(f"address must be >= 1, got {self.addr}")


@dataclass(frozen=True)
class EnterInsert:
    pass


@dataclass(frozen=True)
class EnterAppend:
    pass


@dataclass(frozen=True)
class Delete:
    pass


@dataclass(frozen=True)
class PrintNumbered:
    pass


@dataclass(frozen=True)
class Print:
    pass


@dataclass(frozen=True)
class Write:
    path: Optional[str] = None


@dataclass(frozen=True)
class Quit:
    pass


@dataclass(frozen=True)
class Empty:
    pass


@dataclass(frozen=True)
class InsertText:
    line: str


@dataclass(frozen=True)
class EndInsert:
    pass


ReplCommand = Union[
    SetAddress, EnterInsert, EnterAppend, Delete, PrintNumbered, Print,
    Write, Quit, Empty, InsertText, EndInsert,
]

_SIMPLE = {
    "i": EnterInsert(),
    "a": EnterAppend(),
    "d": Delete(),
    "n": PrintNumbered(),
    "p": Print(),
    "q": Quit(),
    "w": Write(),
    "": Empty(),
}

_DIGITS = re.compile(r"[0-9]+\Z")

MAX_ADDRESS = sys.maxsize


def parse_line(text: str, mode: ParserMode) -> ReplCommand:
    if "\n" in text:
        raise ValueError(f"input must be a single line: {text!r}")
    if mode is ParserMode.INSERT:
        return EndInsert() if text == "." else InsertText(text)

    cmd = _SIMPLE.get(text)
    if cmd is not None:
        return cmd
    if text.startswith("w ") and len(text) > 2:
        return Write(text[2:])
    if _DIGITS.match(text):
        # length check first: int() rejects very long digit strings
        if len(text.lstrip("0")) > len(str(MAX_ADDRESS)):
            raise ParseError(text, "address out of range")
        addr = int(text)
        if addr == 0:
            raise ParseError(text, "address 0 has no line")
        if addr > MAX_ADDRESS:
            raise ParseError(text, "address out of range")
        return SetAddress(addr)
    raise ParseError(text)
