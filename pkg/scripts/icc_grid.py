#!/usr/bin/env python3
"""Print the ICC verdict grid for BS(m, n) over 1 <= |m|, |n| <= 6, with the
finite-class witnesses in the negative cases, and a small gallery of
integer-matrix ascending extensions."""

from hnnkit import NOT_ICC, icc_decide_bs, icc_decide_zd

MATRICES = {
    "[[0,-1],[1,1]]": [[0, -1], [1, 1]],
    "[[2,1],[1,1]]": [[2, 1], [1, 1]],
    "[[1]]": [[1]],
    "[[0,1],[-1,0]]": [[0, 1], [-1, 0]],
    "[[2,0],[0,3]]": [[2, 0], [0, 3]],
}


def main():
    values = [x for x in range(-6, 7) if x != 0]
    print("BS(m, n) grid (x = ICC, o = finite class):")
    header = "      " + " ".join(f"{n:>3}" for n in values)
    print(header)
    for m in values:
        cells = []
        for n in values:
            cells.append("  x" if icc_decide_bs(m, n).status != NOT_ICC else "  o")
        print(f"m={m:>3} " + " ".join(c.strip().rjust(3) for c in cells))
    print()
    print("witnesses on the diagonal:")
    for m in range(1, 7):
        for n in (m, -m):
            verdict = icc_decide_bs(m, n)
            witness = ", ".join(verdict.witness_strings())
            print(f"  BS({m},{n}): {verdict.status} witness {{{witness}}}")
    print()
    print("ascending Z^d extensions:")
    for name, M in MATRICES.items():
        verdict = icc_decide_zd(M)
        if verdict.status == NOT_ICC:
            witness = ", ".join(verdict.witness_strings())
            print(f"  {name}: {verdict.status} witness {{{witness}}}")
        else:
            print(f"  {name}: {verdict.status}")


if __name__ == "__main__":
    main()
