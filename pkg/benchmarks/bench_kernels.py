"""Timing comparison of the compiled and pure-Python sum kernels.

Run as a script::

    python benchmarks/bench_kernels.py

Each case is the full escalation loop (not a single fixed-precision
pass), so the numbers reflect what scans actually pay.  The compiled
backend must have been built for the comparison to appear.
"""

from __future__ import annotations

import time

from contangle import kernels
from contangle.kernels import pure

try:
    from contangle.kernels import _sumcore
except ImportError:
    _sumcore = None

RESIDUAL_CASES = [
    (10, 0, 0.8),
    (50, 0, 0.8),
    (100, 0, 0.3),
    (100, 20, 0.05),
    (500, 0, 0.5),
    (1000, 0, 1.15),
]

COMPARISON_CASES = [
    (30, 1.0, 0.5, 2.0),
    (100, 1.0, 1.0, 1.0),
]


def _time(fn, *args, repeats: int = 3) -> tuple[float, object]:
    best = float("inf")
    value = None
    for _ in range(repeats):
        start = time.perf_counter()
        value = fn(*args)
        best = min(best, time.perf_counter() - start)
    return best, value


def _with_backend(module):
    """Temporarily pin the kernel dispatch to one backend module."""
    original = kernels._BACKEND

    class _Pin:
        def __enter__(self):
            kernels._BACKEND = module

        def __exit__(self, *exc):
            kernels._BACKEND = original

    return _Pin()


def run() -> None:
    backends = [("python", pure)]
    if _sumcore is not None:
        backends.insert(0, ("native", _sumcore))
    else:
        print("compiled kernel not built; timing the pure backend only\n")

    print(f"{'case':<28s}" + "".join(f"{name:>12s}" for name, _ in backends) + f"{'speedup':>10s}")
    for case in RESIDUAL_CASES:
        n, m, r = case
        times = []
        results = []
        for _, module in backends:
            with _with_backend(module):
                best, value = _time(kernels.residual_sum, n, m, r)
            times.append(best)
            results.append(value)
        assert all(v == results[0] for v in results[1:]), f"backends disagree at {case}"
        label = f"residual({n}, {m}, {r})"
        row = "".join(f"{t * 1e3:>10.2f}ms" for t in times)
        speedup = f"{times[-1] / times[0]:>9.1f}x" if len(times) > 1 else ""
        print(f"{label:<28s}{row}{speedup}")
    for case in COMPARISON_CASES:
        n, a, b, c = case
        times = []
        results = []
        for _, module in backends:
            with _with_backend(module):
                best, value = _time(kernels.comparison_sum, n, a, b, c)
            times.append(best)
            results.append(value)
        assert all(v == results[0] for v in results[1:]), f"backends disagree at {case}"
        label = f"comparison({n}, {a}, {b}, {c})"
        row = "".join(f"{t * 1e3:>10.2f}ms" for t in times)
        speedup = f"{times[-1] / times[0]:>9.1f}x" if len(times) > 1 else ""
        print(f"{label:<28s}{row}{speedup}")


if __name__ == "__main__":
    run()
