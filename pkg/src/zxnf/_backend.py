"""Selects the compiled kernels when available, the Python ones otherwise.

Set ``ZXNF_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os
from collections.abc import Sequence

from . import _fallback
from .ring import Mat2, node_matrix
from .diagram import Diagram, Node

_impl = _fallback
BACKEND = "python"
if not os.environ.get("ZXNF_PURE_PYTHON"):
    try:
        from . import _kernels
    except ImportError:
        pass
    else:
        _kernels.init_nodes([node_matrix(Node(*c)).key() for c in _fallback._CODES])
        _impl = _kernels
        BACKEND = "cython"


def node_code(n: Node) -> int:
    if n.kind == "Z":
        return n.phase
    if n.kind == "X":
        return 8 + n.phase
    return 16


def product_key(codes: Sequence[int], start: Sequence[int] | None = None) -> tuple[int, ...]:
    try:
        return _impl.product_key(codes, start)
    except OverflowError:
        return _fallback.product_key(codes, start)


def diagram_matrix(d: Diagram) -> Mat2:
    return Mat2.from_key(product_key([node_code(n) for n in d]))


def fold(word: bytes, packed) -> tuple[bool, int, list[int], int]:
    return _impl.fold(word, packed)
