"""Time the compiled kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import itertools
import time

from quatcusps import _pykernels
from quatcusps.numtheory import oracle_depth, squarefree_part

try:
    from quatcusps import _ckernels
except ImportError:
    _ckernels = None


def best_of(fn, repeat):
    times, result = [], None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - t0)
    return min(times), result


def hilbert_sweep(impl):
    values = [n for n in range(-20, 21) if n and squarefree_part(n) == n]
    found = 0
    for p in (2, 3, 5, 7, 11, 13):
        depth = oracle_depth(p)
        for a, b in itertools.product(values, repeat=2):
            found += impl.primitive_conic_solvable(a, b, p, depth)
    return found


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    backends = [("numpy", _pykernels)]
    if _ckernels is not None:
        backends.insert(0, ("cython", _ckernels))
    cases = [
        ("sl4 q=2", lambda impl: impl.sl4_det_one_count(2, 0, -1)),
        ("sl4 q=3", lambda impl: impl.sl4_det_one_count(3, 0, -1)),
        ("hilbert sweep", hilbert_sweep),
    ]
    print(f"{'case':<16}" + "".join(f"{name:>14}" for name, _ in backends) + "   result")
    for label, fn in cases:
        cells, results = [], set()
        for _, impl in backends:
            t, r = best_of(lambda: fn(impl), args.repeat)
            cells.append(f"{t * 1e3:>11.1f} ms")
            results.add(r)
        agree = "agree" if len(results) == 1 else f"MISMATCH {sorted(results)}"
        print(f"{label:<16}" + "".join(cells) + f"   {results.pop() if len(results) == 1 else ''} {agree}")


if __name__ == "__main__":
    main()
