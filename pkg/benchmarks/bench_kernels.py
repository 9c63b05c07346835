"""Compare the compiled kernels against the numpy fallback.

Run:  python3 benchmarks/bench_kernels.py [--n N] [--repeats K]

Both backends implement identical semantics (enforced in tests); this
script only reports wall-clock ratios for the hot paths.
"""

import argparse
import time

import numpy as np

from quenchlab import kernels
from quenchlab.kernels import fallback


def _timeit(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=10, help="qubit count")
    ap.add_argument("--repeats", type=int, default=3)
    args = ap.parse_args()

    if kernels.IMPL != "cython":
        print("warning: compiled backend unavailable; comparing numpy to itself")

    n = args.n
    dim = 1 << n
    rng = np.random.default_rng(0)
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    v /= np.linalg.norm(v)

    n_terms = 3 * n
    xs = rng.integers(0, dim, size=n_terms).astype(np.uint64)
    zs = rng.integers(0, dim, size=n_terms).astype(np.uint64)
    coeffs = rng.normal(size=n_terms)
    phases = np.array([kernels.pauli_phase(int(a), int(b))
                       for a, b in zip(xs, zs)], dtype=np.complex128)
    out = np.zeros(dim, dtype=np.complex128)

    def apply_many(mod):
        def run():
            for _ in range(200):
                out[:] = 0
                mod.apply_pauli_sum(coeffs, xs, zs, phases, v, out)
        return run

    cases = [
        (f"pauli_moment_sum (alpha=2, n={n})",
         lambda m: (lambda: m.pauli_moment_sum(v, 2))),
        (f"pauli_xlogx_sum (n={n})",
         lambda m: (lambda: m.pauli_xlogx_sum(v))),
        (f"apply_pauli_sum x200 ({n_terms} terms, n={n})", apply_many),
    ]

    print(f"{'kernel':<42} {'compiled':>10} {'numpy':>10} {'speedup':>8}")
    for name, make in cases:
        t_fast = _timeit(make(kernels), args.repeats)
        t_ref = _timeit(make(fallback), args.repeats)
        print(f"{name:<42} {t_fast * 1e3:>8.2f}ms {t_ref * 1e3:>8.2f}ms "
              f"{t_ref / t_fast:>7.2f}x")


if __name__ == "__main__":
    main()
