#!/usr/bin/env python3
"""Sweep a grid of (seed, multiplicity) pairs through the tube formulas.

For every pair the forward propagation either validates (and then the
inverse problem must recover the multiplicities exactly) or is rejected
with a concrete negative value at a concrete (index, quasi-length).
Prints summary counts and the first few rejections.

Run:  python3 scripts/tube_sweep.py [--p 5] [--seed-max 3] [--mult-max 2]
"""

import argparse
import itertools

from jordanquiver.components import (
    NegativeMultiplicityError,
    solve_multiplicities,
    tube_profile_from_seed,
)
from jordanquiver.jtypes import JordanType


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--p", type=int, default=5)
    parser.add_argument("--seed-max", type=int, default=3)
    parser.add_argument("--mult-max", type=int, default=2)
    parser.add_argument("--show", type=int, default=5, help="rejections to print")
    args = parser.parse_args()
    p = args.p

    ok = bad = mismatches = 0
    shown = 0
    for seed_mult in itertools.product(range(args.seed_max + 1), repeat=p):
        seed = JordanType(p, seed_mult)
        for n in itertools.product(range(args.mult_max + 1), repeat=p - 1):
            if not any(n):
                continue
            try:
                profile = tube_profile_from_seed(seed, list(n), include_p=True)
            except NegativeMultiplicityError as err:
                bad += 1
                if shown < args.show:
                    print(f"reject seed={str(seed) or '0'} n={n}: {err}")
                    shown += 1
                continue
            ok += 1
            if solve_multiplicities(profile).multiplicities != n:
                mismatches += 1
                print(f"ROUND-TRIP MISMATCH at seed={seed} n={n}")
    total = ok + bad
    print()
    print(f"grid size {total}: {ok} valid tubes, {bad} rejected, {mismatches} round-trip mismatches")


if __name__ == "__main__":
    main()
