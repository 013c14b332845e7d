#!/usr/bin/env python3
"""Scan the free-energy remainders r(N) = [log((1/N!)Z_N) - prediction]/N^2
for the exactly solvable beta = 2 ensembles: the electrostatic predictions
should leave only O(log N / N)."""

import argparse

from coulomblab.gas import GasModel, free_energy_prediction, free_energy_remainder


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", default="25,50,100,200,400")
    args = ap.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    ensembles = [
        ("ginibre", {}),
        ("elliptic", {"tau": 0.5}),
        ("induced", {"alpha": 1.0}),
    ]
    header = "N".rjust(6) + "".join(e.rjust(14) for e, _ in ensembles)
    print(header)
    for n in sizes:
        row = f"{n:6d}"
        for ens, kw in ensembles:
            r = free_energy_remainder(GasModel(2.0, 8, ens, **kw), n)
            row += f"{r:14.6f}"
        print(row)
    print()
    for ens, kw in ensembles:
        pred = free_energy_prediction(GasModel(2.0, 64, ens, **kw))
        terms = ", ".join(f"{k}: {v:.6f}" for k, v in pred.coefficients.items())
        print(f"{ens}: {terms}")


if __name__ == "__main__":
    main()
