"""Compare the compiled kernels with the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat N]

Times the two hot loops on identical inputs and checks that both return
identical results: the exact matrix product of a node sequence and the
table-driven normal-form fold of an R/T word.
"""

from __future__ import annotations

import argparse
import random
import timeit

from zxnf import _fallback
from zxnf.manf import tables

try:
    from zxnf import _kernels
except ImportError:  # built without the extension
    _kernels = None


def make_inputs(seed: int = 0) -> dict[str, list]:
    rng = random.Random(seed)
    return {
        "product_key/20": [[rng.randrange(17) for _ in range(20)] for _ in range(200)],
        "product_key/60": [[rng.randrange(17) for _ in range(60)] for _ in range(200)],
        "fold/60": ["".join(rng.choice("RT") for _ in range(60)).encode() for _ in range(200)],
        "fold/1000": ["".join(rng.choice("RT") for _ in range(1000)).encode() for _ in range(50)],
    }


def run(repeat: int) -> list[tuple[str, float, float | None]]:
    packed = tables().packed
    rows = []
    for name, batch in make_inputs().items():
        if name.startswith("product_key"):
            py = lambda: [_fallback.product_key(c) for c in batch]  # noqa: E731
            cy = _kernels and (lambda: [_kernels.product_key(c) for c in batch])
        else:
            py = lambda: [_fallback.fold(w, packed) for w in batch]  # noqa: E731
            cy = _kernels and (lambda: [_kernels.fold(w, packed) for w in batch])
        if cy is not None and py() != cy():
            raise SystemExit(f"{name}: kernel and fallback disagree")
        t_py = min(timeit.repeat(py, number=1, repeat=repeat)) / len(batch)
        t_cy = min(timeit.repeat(cy, number=1, repeat=repeat)) / len(batch) if cy else None
        rows.append((name, t_py, t_cy))
    return rows


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    print(f"{'kernel':<16}{'python':>14}{'cython':>14}{'speedup':>10}")
    for name, t_py, t_cy in run(args.repeat):
        cy = f"{t_cy * 1e6:11.1f} us" if t_cy else "        n/a"
        speed = f"{t_py / t_cy:9.1f}x" if t_cy else "      n/a"
        print(f"{name:<16}{t_py * 1e6:11.1f} us{cy}{speed}")


if __name__ == "__main__":
    main()
