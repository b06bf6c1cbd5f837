"""Single-qubit ZX line diagrams.

A diagram is a tuple of :class:`Node` values. Index 0 is the bottom of the
picture, i.e. the node applied first; the text form lists nodes in the same
order, separated by ``;``.
"""

from __future__ import annotations

import re
from typing import NamedTuple

GREEN = 0
RED = 1

GEN_R = "R"  # red pi/2 node
GEN_T = "T"  # green pi/4 node


class Node(NamedTuple):
    kind: str  # "Z" (green), "X" (red) or "H"
    phase: int = 0  # units of pi/4, always reduced mod 8

    def __str__(self) -> str:
        if self.kind == "H":
            return "H"
        return f"{self.kind}({self.phase})"

    @property
    def colour(self) -> int | None:
        if self.kind == "Z":
            return GREEN
        if self.kind == "X":
            return RED
        return None


Diagram = tuple[Node, ...]
GenWord = str

H = Node("H", 0)


def Z(k: int) -> Node:
    return Node("Z", k % 8)


def X(k: int) -> Node:
    return Node("X", k % 8)


def spider(colour: int, k: int) -> Node:
    """Phase node of the given colour (0 = green, 1 = red)."""
    return Node("Z" if colour == GREEN else "X", k % 8)


class ParseError(ValueError):
    """Raised for malformed diagram text; ``offset`` is a byte offset."""

    def __init__(self, message: str, offset: int) -> None:
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class UnknownToken(ParseError):
    pass


class PhaseNotInteger(ParseError):
    pass


class UnbalancedParenthesis(ParseError):
    pass


_TOKEN = re.compile(r"\s*(?:(?P<sep>;)|(?P<kind>[ZXH])|(?P<lp>\()|(?P<rp>\))|(?P<word>[^\s;()]+))")
_INT = re.compile(r"[+-]?\d+\Z")


def _tokens(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # only trailing whitespace left
            break
        kind = m.lastgroup
        out.append((kind, m.group(kind), len(text[: m.start(kind)].encode())))
        pos = m.end()
    return out


def parse(text: str) -> Diagram:
    """Parse ``Z(k)``/``X(k)``/``H`` nodes separated by ``;``.

    >>> parse("Z(4); X(4)")
    (Node(kind='Z', phase=4), Node(kind='X', phase=4))
    """
    toks = _tokens(text)
    nodes: list[Node] = []
    i = 0
    while i < len(toks):
        kind, val, off = toks[i]
        if kind != "kind":
            raise UnknownToken(f"unexpected {val!r}", off)
        if val == "H":
            nodes.append(H)
            i += 1
        else:
            if i + 1 >= len(toks) or toks[i + 1][0] != "lp":
                where = toks[i + 1][2] if i + 1 < len(toks) else len(text.encode())
                raise UnknownToken(f"expected '(' after {val}", where)
            j = i + 2
            if j >= len(toks) or toks[j][0] == "sep":
                raise UnbalancedParenthesis("unclosed '('", toks[i + 1][2])
            if toks[j][0] != "word" or not _INT.match(toks[j][1]):
                raise PhaseNotInteger(f"phase {toks[j][1]!r} is not an integer", toks[j][2])
            if j + 1 >= len(toks) or toks[j + 1][0] != "rp":
                if j + 1 < len(toks) and toks[j + 1][0] not in ("sep", "kind"):
                    raise PhaseNotInteger("phase is not an integer", toks[j + 1][2])
                raise UnbalancedParenthesis("unclosed '('", toks[i + 1][2])
            nodes.append(Node(val, int(toks[j][1]) % 8))
            i = j + 2
        if i < len(toks):
            kind, val, off = toks[i]
            if kind == "rp":
                raise UnbalancedParenthesis("unmatched ')'", off)
            if kind != "sep":
                raise UnknownToken(f"expected ';' before {val!r}", off)
            if i + 1 == len(toks):
                raise UnknownToken("trailing ';'", off)
            i += 1
    return tuple(nodes)


def to_text(d: Diagram) -> str:
    return "; ".join(str(n) for n in d)


def dagger(d: Diagram) -> Diagram:
    """Adjoint: reverse the order and negate every phase."""
    return tuple(n if n.kind == "H" else Node(n.kind, -n.phase % 8) for n in reversed(d))


# H = T^2 R T^2 up to a global phase (Euler decomposition).
_H_WORD = GEN_T * 2 + GEN_R + GEN_T * 2


def compile_to_generators(d: Diagram) -> GenWord:
    """Rewrite ``d`` over the two-letter alphabet ``R`` (red pi/2), ``T`` (green pi/4)."""
    parts = []
    for n in d:
        if n.kind == "Z":
            parts.append(GEN_T * n.phase)
        elif n.kind == "H":
            parts.append(_H_WORD)
        elif n.phase % 2 == 0:
            parts.append(GEN_R * (n.phase // 2))
        else:
            parts.append(_H_WORD + GEN_T * n.phase + _H_WORD)
    return "".join(parts)


def word_to_diagram(word: GenWord) -> Diagram:
    lookup = {GEN_R: X(2), GEN_T: Z(1)}
    return tuple(lookup[c] for c in word)


def t_count(d: Diagram) -> int:
    """Number of nodes with an odd phase."""
    return sum(1 for n in d if n.kind != "H" and n.phase % 2)
