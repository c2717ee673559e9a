#!/usr/bin/env python3
"""Print the integral cohomology of the reduced presentation over a
window: free rank and torsion exponents at every nonzero (s, t).

Usage: integral_window.py [--smax S] [--tmax T]
"""

import argparse

from hopfext.algebroid import AlgebroidSpec
from hopfext.transfer import integral_structure


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--smax", type=int, default=4)
    ap.add_argument("--tmax", type=int, default=240)
    args = ap.parse_args()

    spec = AlgebroidSpec("reduced")
    hi = args.smax + 1
    for s in range(0, args.smax + 1):
        for t in range(0, args.tmax + 1, 8):
            free, torsion = integral_structure(spec, s, t, hi=hi, k_power=4)
            if free or torsion:
                tors = " + ".join(f"Z/5^{e}" for e in torsion)
                desc = " + ".join(x for x in
                                  ([f"Z^{free}"] if free else []) +
                                  ([tors] if tors else []))
                print(f"({s:>2},{t:>4})  {desc}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
