import os
import random

import pytest

from zxnf.diagram import H, Node, X, Z

ALL_NODES = [Z(k) for k in range(8)] + [X(k) for k in range(8)] + [H]


def pytest_configure(config):
    # keep table caches out of the user's home during test runs
    if "ZXNF_CACHE_DIR" not in os.environ:
        import tempfile

        os.environ["ZXNF_CACHE_DIR"] = tempfile.mkdtemp(prefix="zxnf-test-cache-")


def random_diagram(rng: random.Random, max_len: int = 20) -> tuple[Node, ...]:
    return tuple(rng.choice(ALL_NODES) for _ in range(rng.randint(0, max_len)))


@pytest.fixture
def rng():
    return random.Random(12345)


ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[n])
