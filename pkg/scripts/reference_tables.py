#!/usr/bin/env python3
"""Print the benchmark companion form and the gains for the three target families."""

import warnings

from hobserve.cases import (
    COMPLEX_TARGET_POLES, QUATERNION_TARGET_POLES, REAL_TARGET_POLES, benchmark_system,
)
from hobserve.observer import place, target_from_poles, verify_design
from hobserve.realization import to_observable_companion
from hobserve.verify import reference_suite


def show(title, m, precision=4):
    print(f"{title} =")
    print(m.format(precision))


def main():
    sys_ = benchmark_system()
    cr = to_observable_companion(sys_)
    print("=== companion realization")
    show("O^-1", cr.O_inv)
    show("T", cr.T)
    show("A_o", cr.A_o)
    show("C_o", cr.C_o)
    print("a (ascending):", ", ".join(c.format(4) for c in cr.a.coeffs))

    targets = [("real", REAL_TARGET_POLES), ("complex pair", COMPLEX_TARGET_POLES),
               ("quaternionic", QUATERNION_TARGET_POLES)]
    for name, poles in targets:
        target = target_from_poles(poles, sys_.n)
        d = place(sys_, target, "companion")
        rep = verify_design(sys_, d)
        print(f"\n=== {name} target: poles {', '.join(p.format(2) for p in poles)}")
        print("target coefficients:", ", ".join(c.format(4) for c in target.coeffs))
        show("L_o", d.L_o)
        show("L", d.L)
        show("A - L C", d.A_obs)
        print(f"achieved {d.achieved}   matched {rep.matched}   stable {rep.stable}")

    forced = place(sys_, target_from_poles(QUATERNION_TARGET_POLES, sys_.n), "ackermann", force=True)
    print("\n=== Ackermann forced onto the quaternionic target")
    print(f"achieved {forced.achieved}")

    print("\n=== reference checks")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        for c in reference_suite():
            print(c.line())


if __name__ == "__main__":
    main()
