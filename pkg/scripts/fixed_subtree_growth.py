#!/usr/bin/env python3
"""Growth of the fixed vertex sets of the unbounded-fixed-family witnesses:
for each parameter case the fixed set keeps touching the exploration
boundary, so no radius can certify boundedness."""

import argparse

from hnnkit import (
    base_vertex,
    distance,
    fixed_subtree,
    label_str,
    make_bs,
    unbounded_fixed_witness_bs,
)
from hnnkit.calculus import format_word


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-radius", type=int, default=6)
    args = parser.parse_args()

    for m, n in [(4, 2), (2, 4), (2, 3), (3, 2)]:
        oracle = make_bs(m, n)
        gamma, family = unbounded_fixed_witness_bs(m, n)
        print(f"BS({m},{n}): gamma = {format_word(gamma)}")
        for radius in range(1, args.max_radius + 1):
            fixed, touches = fixed_subtree(gamma, radius)
            flag = "touches boundary" if touches else "bounded at this radius"
            print(f"  radius {radius}: |fixed| = {len(fixed):>4}  ({flag})")
        sample = ", ".join(label_str(family(l)) for l in range(4))
        far = distance(base_vertex(oracle), family(8))
        print(f"  family: {sample}, ...  (distance of index 8: {far})")
        print()


if __name__ == "__main__":
    main()
