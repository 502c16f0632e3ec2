#!/usr/bin/env python3
"""Tabulate finite-stage algebra entropies against the shift entropy.

For each parameter the table lists the entropy of the trace on C*S_n, the
entropy of its restriction to the center, and total/n next to the shift
entropy the per-level values are expected to approach for gamma = 0.

Usage: python scripts/entropy_growth.py [--n-max N] ["a=...;b=...;g=..." ...]
"""
import argparse

from thoma_lab import entropy
from thoma_lab.cli import format_parameter, parse_parameter

DEFAULT_PARAMETERS = [
    "a=1/2,1/2;b=;g=0",
    "a=2/3,1/3;b=;g=0",
    "a=1/2;b=1/2;g=0",
    "a=1/2,1/3,1/6;b=;g=0",
    "g=1",
]


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("parameters", nargs="*", default=DEFAULT_PARAMETERS)
    parser.add_argument("--n-max", type=int, default=7)
    args = parser.parse_args()

    for text in args.parameters:
        kappa = parse_parameter(text)
        shift = entropy.shift_entropy(kappa)
        print(f"\n{format_parameter(kappa)}   shift entropy = {shift:.6f}")
        print(f"{'n':>3} {'total':>10} {'center':>10} {'total/n':>10}")
        for row in entropy.entropy_growth_experiment(kappa, args.n_max):
            print(
                f"{row.degree:>3} {row.total:>10.6f} {row.center:>10.6f}"
                f" {row.total_over_n:>10.6f}"
            )


if __name__ == "__main__":
    main()
