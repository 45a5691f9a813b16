#!/usr/bin/env python3
"""Tabulate strong and weak characteristic sets of the finite catalog partial fields."""
from __future__ import annotations

import argparse

from pfkit.homs import strong_char_set, weak_char_set
from pfkit.partial_field import catalog, enumerate_elements

DEFAULT_NAMES = ("regular", "dyadic", "near_regular", "sixth_root", "golden_ratio", "f2xf3", "gf(2)", "gf(3)", "gf(2,2)", "gf(5)")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("names", nargs="*", default=list(DEFAULT_NAMES))
    ap.add_argument("--prime-bound", type=int, default=7)
    args = ap.parse_args()
    print(f"{'partial field':<16} {'strong':<24} weak")
    for name in args.names:
        P = catalog(name)
        strong = strong_char_set(P, prime_bound=args.prime_bound)
        weak = str(weak_char_set(P, prime_bound=args.prime_bound)) if enumerate_elements(P).complete else "(infinite; not searched)"
        print(f"{name:<16} {str(strong):<24} {weak}")


if __name__ == "__main__":
    main()
