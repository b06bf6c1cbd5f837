import importlib.util
from pathlib import Path

import pytest

pytest.importorskip("zxnf._kernels")


def test_benchmark_runs_and_agrees():
    path = Path(__file__).parent.parent / "benchmarks" / "bench_kernels.py"
    mod_spec = importlib.util.spec_from_file_location("bench_kernels", path)
    bench = importlib.util.module_from_spec(mod_spec)
    mod_spec.loader.exec_module(bench)
    rows = bench.run(repeat=1)
    assert [r[0] for r in rows] == ["product_key/20", "product_key/60", "fold/60", "fold/1000"]
    # the compiled kernels should beat the fallback on every workload
    assert all(t_cy is not None and t_cy < t_py for _, t_py, t_cy in rows)
