#!/usr/bin/env python3
"""Gap-probability rates for a disk hole in the planar plasma: the balayage
energy route against the closed-form -beta N^2 r^4 / 8 law of the
unit-variance planar ensemble."""

import argparse
import math

from coulomblab.balayage import HoleSpec, gap_and_tail
from coulomblab.domains import Ball


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=float, default=36.0)
    ap.add_argument("--beta", type=float, default=2.0)
    args = ap.parse_args()

    rho_b = 1.0 / math.pi
    print(f"# N = {args.n}, beta = {args.beta}, rho_b = 1/pi")
    print("# r (hole radius / sqrt(N)), log P via balayage, closed form")
    for r in (0.2, 0.4, 0.6, 0.8, 1.0):
        spec = HoleSpec(Ball(2, r * math.sqrt(args.n)), rho_b=rho_b,
                        beta=args.beta)
        log_p = rho_b ** 2 * gap_and_tail(spec, "gap")
        closed = -args.beta * args.n ** 2 * r ** 4 / 8.0
        print(f"{r:5.2f} {log_p:16.8f} {closed:16.8f}")


if __name__ == "__main__":
    main()
