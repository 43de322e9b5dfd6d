#!/usr/bin/env python3
"""Conjugation symmetric-difference ratios of the Folner-type windows in
BS(2, 3): the ratio vanishes on the base group, equals 2/(k-1) per stable
letter, and decays to zero as the window grows."""

from fractions import Fraction

from hnnkit import folner_chain_bs, length, make_bs, parse_word, symdiff_ratio

TEST_WORDS = ["b", "b^-4", "a", "a^-1", "a^2", "a b", "b a^-1 b^2", "a^3 b^-1"]


def main():
    oracle = make_bs(2, 3)
    print("symdiff ratio |g F g^-1 (+) F| / |F|, F the interior chain window")
    print(f"{'g':<12}" + "".join(f"k={k:<10}" for k in (5, 10, 20, 40)) + "bound 2*len/(k-1)")
    chains = {k: folner_chain_bs(2, 3, k) for k in (5, 10, 20, 40)}
    for text in TEST_WORDS:
        g = parse_word(oracle, text)
        row = f"{text:<12}"
        for k, chain in chains.items():
            r = symdiff_ratio(chain, g)
            row += f"{str(r):<12}"
        bounds = ", ".join(str(Fraction(2 * length(g), k - 1)) for k in chains)
        print(row + bounds)


if __name__ == "__main__":
    main()
