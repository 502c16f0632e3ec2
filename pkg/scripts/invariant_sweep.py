#!/usr/bin/env python3
"""Sweep the standard parameter battery through the classification invariants.

Prints, for every battery member: the irreducibility kind, whether the cubic
moment identity holds, faithfulness, the index verdict, the quick
commuting-square pair, and the index bound when finite.
"""
import argparse

from thoma_lab import groupalg, tensorrep, thoma
from thoma_lab.cli import format_parameter


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--only-irreducible", action="store_true")
    args = parser.parse_args()

    battery = thoma.standard_battery()
    print(f"battery size: {len(battery)}")
    header = f"{'parameter':<42} {'kind':<16} {'moment':<7} {'faithful':<9} {'square':<7} bound"
    print(header)
    print("-" * len(header))
    for kappa in battery:
        cls = thoma.classify_irreducible(kappa)
        if args.only_irreducible and not cls.irreducible:
            continue
        lhs, rhs = groupalg.quick_commuting_pair(kappa)
        bound = tensorrep.pimsner_popa_bound(kappa)
        bound_text = str(bound.index_bound) if bound.finite else "infinite"
        print(
            f"{format_parameter(kappa):<42} {cls.kind:<16} "
            f"{str(cls.moment_identity_holds):<7} {str(thoma.is_faithful(kappa)):<9} "
            f"{str(lhs == rhs):<7} {bound_text}"
        )


if __name__ == "__main__":
    main()
