"""Text format for multi-segments and Arthur-type parameters.

A multi-segment is written as label blocks joined by ``;``::

    rho:[2,2]+[0,1]+[-2,0]; sigma:[-1/2,1/2]

Each block is ``label:`` followed by segments joined by ``+``, or the
literal ``{}`` for an empty block.  Endpoints are integers or
half-integers with an odd numerator over 2 (``-3/2``).  A single block
may omit its label, in which case the label defaults to ``rho``.
Blocks repeating a label merge their segments.

A parameter uses the same block structure with ``(d,a)`` summands::

    rho:(2,0)+(0,1); sigma:(1,1)

``parse_multisegment`` and ``parse_parameter`` raise ``ParseError``
carrying the 1-based line and column of the offending character.
"""
from __future__ import annotations

import re

from .arthur import ArthurParameter
from .core import HalfInt, MsegError, MultiSegment, Segment

DEFAULT_LABEL = "rho"

_NUMBER = re.compile(r"[+-]?\d+(?:/2)?")
_LABEL = re.compile(r"[^\s:;+\[\],(){}]+")
_WS = re.compile(r"\s+")


class ParseError(MsegError, ValueError):
    """Syntax error in the text format, located by line and column."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{message} (line {line}, column {col})")
        self.line = line
        self.col = col


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def fail(self, message: str, pos: int | None = None):
        p = self.pos if pos is None else pos
        line = self.text.count("\n", 0, p) + 1
        last = self.text.rfind("\n", 0, p)
        raise ParseError(message, line, p - last)

    def skip_ws(self) -> None:
        m = _WS.match(self.text, self.pos)
        if m:
            self.pos = m.end()

    def at_end(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text)

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch: str) -> bool:
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def expect(self, ch: str, what: str) -> None:
        if not self.take(ch):
            got = self.peek() or "end of input"
            self.fail(f"expected {what!r}, found {got!r}")

    def number(self, what: str) -> HalfInt:
        self.skip_ws()
        m = _NUMBER.match(self.text, self.pos)
        if m is None:
            got = self.peek() or "end of input"
            self.fail(f"expected {what}, found {got!r}")
        start = self.pos
        self.pos = m.end()
        try:
            return HalfInt.coerce(m.group(0))
        except MsegError as exc:
            self.pos = start
            self.fail(str(exc))

    def integer(self, what: str) -> int:
        h = self.number(what)
        if not h.is_integer:
            self.fail(f"{what} must be an integer")
        return h.as_int()

    def label(self) -> str | None:
        """A label followed by ':', or None when the block is unlabeled."""
        self.skip_ws()
        m = _LABEL.match(self.text, self.pos)
        if m is None:
            return None
        after = _WS.match(self.text, m.end())
        nxt = after.end() if after else m.end()
        if nxt < len(self.text) and self.text[nxt] == ":":
            self.pos = nxt + 1
            return m.group(0)
        return None


def _parse_blocks(text: str, parse_item) -> list[tuple[str, list]]:
    """Shared ``label:item+item; ...`` structure.

    ``parse_item(sc, label)`` reads one item of the active block.  A
    ``{}`` block contributes no items.
    """
    sc = _Scanner(text)
    if sc.at_end():
        sc.fail("empty input")
    blocks: list[tuple[str, list]] = []
    saw_unlabeled = False
    while True:
        label = sc.label()
        if label is None:
            saw_unlabeled = True
            label = DEFAULT_LABEL
        items = []
        if sc.peek() == "{":
            start = sc.pos
            sc.take("{")
            if not sc.take("}"):
                sc.fail("expected '}'", start + 1)
        else:
            items.append(parse_item(sc, label))
            while sc.take("+"):
                items.append(parse_item(sc, label))
        blocks.append((label, items))
        if sc.at_end():
            break
        sc.expect(";", ";")
        if sc.at_end():
            break
    if saw_unlabeled and len(blocks) > 1:
        sc.fail("an unlabeled block is only allowed alone", 0)
    return blocks


def _segment_item(sc: _Scanner, label: str) -> Segment:
    start = sc.pos
    sc.expect("[", "[")
    b = sc.number("base endpoint")
    sc.expect(",", ",")
    e = sc.number("end endpoint")
    sc.expect("]", "]")
    try:
        return Segment(label, b, e)
    except MsegError as exc:
        sc.pos = start
        sc.fail(str(exc))


def _summand_item(sc: _Scanner, label: str) -> tuple[str, int, int]:
    sc.expect("(", "(")
    start = sc.pos
    d = sc.integer("first summand entry")
    sc.expect(",", ",")
    a = sc.integer("second summand entry")
    sc.expect(")", ")")
    if d < 0 or a < 0:
        sc.fail("summand entries must be non-negative", start)
    return (label, d, a)


def parse_multisegment(text: str) -> MultiSegment:
    """Read a multi-segment from its text form."""
    blocks = _parse_blocks(text, _segment_item)
    return MultiSegment(s for _label, items in blocks for s in items)


def parse_parameter(text: str) -> ArthurParameter:
    """Read an Arthur-type parameter from its ``label:(d,a)+...`` form."""
    blocks = _parse_blocks(text, _summand_item)
    return ArthurParameter(s for _label, items in blocks for s in items)


def format_multisegment(ms: MultiSegment) -> str:
    """Canonical text form; inverse of ``parse_multisegment``."""
    return str(ms)


def format_parameter(psi: ArthurParameter) -> str:
    """Canonical text form; inverse of ``parse_parameter``."""
    return str(psi)
