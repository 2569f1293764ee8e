#!/usr/bin/env python3
"""Agreement of the three design routes and of the two spectrum routes versus order n.

Usage: python3 scripts/random_sweep.py [--cases 100] [--seed 0]
"""

import argparse
import time

import numpy as np

from hobserve.hmatrix import right_spectrum
from hobserve.observer import METHODS, place
from hobserve.realization import spectrum_via_companion, to_observable_companion
from hobserve.verify import random_observable_system, random_stable_real_target


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--cases", type=int, default=100)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--max-n", type=int, default=6)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)

    print(f"{'n':>2} {'gain diff':>10} {'rel diff':>10} {'placement':>10} {'cross':>10} {'cond T':>10} {'s':>6}")
    for n in range(1, args.max_n + 1):
        t0 = time.perf_counter()
        gd = rd = pd = xd = 0.0
        conds = []
        for _ in range(args.cases):
            s = random_observable_system(rng, n)
            target = random_stable_real_target(rng, n)
            designs = [place(s, target, m) for m in METHODS]
            L0 = designs[0].L
            gd = max(gd, *(L0.max_abs_diff(d.L) for d in designs[1:]))
            rd = max(rd, *(L0.max_abs_diff(d.L) / L0.scale() for d in designs[1:]))
            expected = designs[0].achieved
            pd = max(pd, max(right_spectrum(d.A_obs).max_deviation(expected) for d in designs))
            xd = max(xd, spectrum_via_companion(s).max_deviation(right_spectrum(s.A)))
            conds.append(to_observable_companion(s).condition)
        dt = time.perf_counter() - t0
        print(f"{n:>2} {gd:10.2e} {rd:10.2e} {pd:10.2e} {xd:10.2e} {np.median(conds):10.2e} {dt:6.2f}")


if __name__ == "__main__":
    main()
