#!/usr/bin/env python3
"""K-groups, Toeplitz K-groups and the unitality certificate for every graph in graphs/."""

from pathlib import Path

from topograph import graphio
from topograph.ktheory import k_groups, toeplitz_k_groups
from topograph.unital import is_unital

GRAPHS = Path(__file__).resolve().parent.parent / "graphs"


def main():
    for path in sorted(GRAPHS.glob("*.graph")):
        g = graphio.load(path)
        k0, k1 = k_groups(g)
        t0, t1 = toeplitz_k_groups(g)
        _, report = is_unital(g)
        print(f"{path.name}")
        print(f"  O(E):  K0 = {k0}, K1 = {k1}")
        print(f"  T(E):  K0 = {t0}, K1 = {t1}")
        print(f"  {report}")
        print(f"  undefined={report.undefined_edges} escaping={report.escaping} never-received={report.never_received}")


if __name__ == "__main__":
    main()
