"""Compare the numba and numpy backends of the orbit-statistics kernel.

Both backends scan every endofunction of ``[n]`` and must agree exactly;
the script checks that before reporting timings.

    python3 benchmarks/bench_kernels.py --n 5 6 7
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from treerec.oracle import kernels


def scan(fn, n: int) -> tuple[float, np.ndarray]:
    """Girth histogram of connected endofunctions, and the wall time."""
    hist = np.zeros(n + 1, dtype=np.int64)
    start = time.perf_counter()
    for block in kernels.endofunction_blocks(n):
        st = fn(block)
        connected = st.components == 1
        hist += np.bincount(st.cyclic[connected], minlength=n + 1)
    return time.perf_counter() - start, hist


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, nargs="+", default=[5, 6, 7])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    if not kernels.HAVE_NUMBA:
        print("numba is not installed; only the numpy backend is available")
        return

    # compile once outside the timed region
    kernels.orbit_stats_numba(kernels.endofunction_block(2, 0, 4))

    print(f"{'n':>3} {'maps':>10} {'numpy s':>10} {'numba s':>10} {'speedup':>8}")
    for n in args.n:
        t_np = min(scan(kernels.orbit_stats_numpy, n)[0] for _ in range(args.repeat))
        t_nb = min(scan(kernels.orbit_stats_numba, n)[0] for _ in range(args.repeat))
        _, h_np = scan(kernels.orbit_stats_numpy, n)
        _, h_nb = scan(kernels.orbit_stats_numba, n)
        if not np.array_equal(h_np, h_nb):
            raise SystemExit(f"backends disagree at n={n}: {h_np} vs {h_nb}")
        print(f"{n:>3} {n**n:>10} {t_np:>10.3f} {t_nb:>10.3f} {t_np / t_nb:>7.1f}x")


if __name__ == "__main__":
    main()
