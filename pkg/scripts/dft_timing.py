"""Wall time of the O(n^2) DFT norm and the power-iteration oracle.

    python scripts/dft_timing.py --sizes 64 256 1024 4096
"""

import argparse
import time

import numpy as np

from circnorm.circulant import spectral_norm_dft
from circnorm.oracle import max_singular_value


def main():
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--sizes", type=int, nargs="+", default=[64, 256, 512, 1024, 2048, 4096])
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    print(f"{'n':>6} {'dft [s]':>9} {'oracle [s]':>11} {'rel diff':>10}")
    for n in args.sizes:
        row = rng.integers(-1000, 1001, size=n).tolist()
        t0 = time.perf_counter()
        dft = spectral_norm_dft(row).max_singular
        t1 = time.perf_counter()
        if n <= 512:
            orc = max_singular_value(row).max_singular
            t2 = time.perf_counter()
            print(f"{n:>6} {t1 - t0:>9.3f} {t2 - t1:>11.3f} {abs(dft - orc) / dft:>10.1e}")
        else:
            print(f"{n:>6} {t1 - t0:>9.3f} {'-':>11} {'-':>10}")


if __name__ == "__main__":
    main()
