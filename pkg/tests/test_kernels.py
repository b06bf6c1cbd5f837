import os
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zxnf import _backend, _fallback
from zxnf.diagram import Node
from zxnf.manf import tables
from zxnf.ring import node_matrix

kernels = pytest.importorskip("zxnf._kernels")
# loaded directly, so make sure the node table is filled even under ZXNF_PURE_PYTHON
kernels.init_nodes([node_matrix(Node(*c)).key() for c in _fallback._CODES])

codes = st.lists(st.integers(0, 16), max_size=80)
words = st.text(alphabet="RT", max_size=120)


@given(codes)
@settings(max_examples=300)
def test_product_key_matches_fallback(cs):
    assert kernels.product_key(cs) == _fallback.product_key(cs)


@given(codes, codes)
def test_product_key_with_start(a, b):
    start = _fallback.product_key(a)
    assert kernels.product_key(b, start) == _fallback.product_key(b, start)


@given(words)
@settings(max_examples=300)
def test_fold_matches_fallback(w):
    packed = tables().packed
    assert kernels.fold(w.encode(), packed) == _fallback.fold(w.encode(), packed)


def test_bad_code_rejected():
    with pytest.raises(ValueError):
        kernels.product_key([17])


def test_overflow_falls_back_to_python_ints():
    # a long H-free product keeps growing sqrt2 powers only; force big entries via repeated X(1)
    cs = [9] * 4000
    assert _backend.product_key(cs) == _fallback.product_key(cs)


def test_backend_selection():
    assert _backend.BACKEND == "cython"
    env = dict(os.environ, ZXNF_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "from zxnf._backend import BACKEND; print(BACKEND)"],
        env=env,
        capture_output=True,
        text=True,
        check=True,
    )
    assert out.stdout.strip() == "python"
