#!/usr/bin/env python3
"""Run the staged preimage pipeline for a finite space.

Given a space (JSON file with {"points": n, "closed": [[indices], ...]} or a
discrete space via --discrete N), assemble the theory combining the standard
first-order lattice properties with the diagram of the closed-set lattice,
search for a finite model, take its ultrafilter space, and try to map that
space back onto the input.  Each stage prints its outcome; later stages are
skipped when an earlier one fails, which for most spaces it provably must at
finite sizes.
"""

import argparse
import json

from wallman_lab.cli import load_space
from wallman_lab.modelfinder import Model, SearchBudget, build_preimage
from wallman_lab.spaces import discrete_space


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("space", nargs="?", help="space JSON file")
    parser.add_argument("--discrete", type=int, metavar="N")
    parser.add_argument("--max-size", type=int, default=6)
    args = parser.parse_args()
    if args.discrete is not None:
        X = discrete_space(args.discrete)
    elif args.space:
        X = load_space(args.space)
    else:
        parser.error("give a space file or --discrete N")

    report = build_preimage(X, SearchBudget(max_size=args.max_size))
    summary = report["theory"]
    print(f"theory: {summary['sentences']} sentences, {summary['constants']} constants")
    model = report["model"]
    if not isinstance(model, Model):
        print(f"model search: {type(model).__name__} — no lattice within the budget")
        return
    print(f"model search: lattice of size {model.lattice.n}")
    print(f"ultrafilter space: {json.dumps(report['wallman'])}")
    if "surjection" in report:
        print(f"surjection check: {report['surjection']}")


if __name__ == "__main__":
    main()
