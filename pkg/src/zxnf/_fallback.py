"""Pure-Python versions of the hot kernels in ``_kernels.pyx``.

Both modules expose the same functions with identical results; ``_backend``
picks one at import time.
"""

from __future__ import annotations

from collections.abc import Sequence

from .ring import Mat2, diagram_matrix_py

# Offsets into the packed normalizer table (see manf.Tables.packed).
MUL = 0
RW = 576
CTW = 579
CTC = 603
CVW = 627
CVV = 675
CVP = 723
PVV = 771
PVP = 779
TV = 787
TWV = 789
TWC = 792
PCLS = 795
RCLS = 799
SCLS = 800
ICLS = 801
TABLE_SIZE = 802

_CODES = [("Z", k) for k in range(8)] + [("X", k) for k in range(8)] + [("H", 0)]


def product_key(codes: Sequence[int], start: Sequence[int] | None = None) -> tuple[int, ...]:
    """Exact matrix of the node sequence ``codes`` applied after ``start``.

    Node codes: green ``k`` -> ``k``, red ``k`` -> ``8 + k``, Hadamard -> 16.
    Returns the 20-integer key of :class:`~zxnf.ring.Mat2`.
    """
    from .diagram import Node

    d = tuple(Node(*_CODES[c]) for c in codes)
    m = diagram_matrix_py(d)
    if start is not None:
        m = m @ Mat2.from_key(tuple(start))
    return m.key()


def _clifford_times(tab: Sequence[int], c: int, syl: list[int], u: int) -> tuple[int, int]:
    """Rewrite ``C . V_n ... V_1 . T . u`` in place; returns (w, u')."""
    if not syl:
        return tab[CTW + c], tab[MUL + tab[CTC + c] * 24 + u]
    i = len(syl) - 1
    e = c * 2 + syl[i]
    w = tab[CVW + e]
    syl[i] = tab[CVV + e]
    p = tab[CVP + e]
    for i in range(len(syl) - 2, -1, -1):
        e = p * 2 + syl[i]
        syl[i] = tab[PVV + e]
        p = tab[PVP + e]
    pc = tab[PCLS + p]
    return w, tab[MUL + tab[CTC + pc] * 24 + u]


def fold(word: bytes, tab: Sequence[int]) -> tuple[bool, int, list[int], int]:
    """Left-fold of R/T letters onto the identity; returns (is_ma, w, syllables, u).

    For a Clifford result ``is_ma`` is False and ``u`` holds the class.
    """
    ma = False
    w = 0
    syl: list[int] = []
    u = tab[ICLS]
    for ch in word:
        if ch == 82:  # "R"
            if not ma:
                u = tab[MUL + tab[RCLS] * 24 + u]
            else:
                w, u = _clifford_times(tab, tab[RW + w], syl, u)
        else:
            if not ma:
                ma = True
                w = 0
            elif w != 0:
                v = tab[TWV + w]
                _, u = _clifford_times(tab, tab[TWC + w], syl, u)
                syl.append(v)
                w = 0
            elif not syl:
                ma = False
                u = tab[MUL + tab[SCLS] * 24 + u]
            else:
                top = syl.pop()
                w, u = _clifford_times(tab, tab[TV + top], syl, u)
    return ma, w, syl, u
