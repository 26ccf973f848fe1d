#!/usr/bin/env python3
"""Sweep distributive lattices and tabulate their ultrafilter spaces.

For every isomorphism class up to --max-size, report how often the canonical
map into the closed-set lattice of the ultrafilter space is injective, how
the separation property transfers, and how connectedness transfers.
"""

import argparse
from collections import Counter
from dataclasses import dataclass

from wallman_lab.lattice import conn, enumerate_distributive, is_disjunctive
from wallman_lab.wallman import (
    canonical_hom_report,
    hausdorff_normal_report,
    wallman_connected,
    wallman_space,
)


@dataclass(frozen=True)
class SweepConfig:
    max_size: int = 6


def sweep(config):
    tally = Counter()
    for L in enumerate_distributive(config.max_size):
        tally["lattices"] += 1
        tally["points", len(wallman_space(L).points)] += 1
        hom = canonical_hom_report(L)
        assert hom["agree"]
        if hom["is_injective"]:
            tally["injective"] += 1
        hn = hausdorff_normal_report(L)
        if hn["L_normal"]:
            tally["normal"] += 1
        assert not (hn["L_normal"] and not hn["wL_hausdorff"])
        if is_disjunctive(L)[0]:
            tally["disjunctive"] += 1
            assert conn(L, L.top)[0] == wallman_connected(L)
            if wallman_connected(L):
                tally["connected"] += 1
    return tally


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-size", type=int, default=6)
    args = parser.parse_args()
    tally = sweep(SweepConfig(max_size=args.max_size))
    print(f"distributive lattices up to size {args.max_size}: {tally['lattices']}")
    print(f"  canonical map injective (= disjunctive): {tally['injective']}")
    print(f"  normal: {tally['normal']}")
    print(f"  disjunctive and connected: {tally['connected']}")
    hist = {k[1]: v for k, v in tally.items() if isinstance(k, tuple)}
    for points in sorted(hist):
        print(f"  ultrafilter spaces with {points} points: {hist[points]}")


if __name__ == "__main__":
    main()
