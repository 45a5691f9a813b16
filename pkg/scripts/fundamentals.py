#!/usr/bin/env python3
"""Print the fundamental elements of catalog partial fields and check closure under p -> 1-p, 1/p."""
from __future__ import annotations

import argparse
import time

from pfkit.partial_field import CATALOG_NAMES, catalog, fundamental_elements
from pfkit.rings.base import sort_key


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("names", nargs="*", default=list(CATALOG_NAMES))
    ap.add_argument("--bound", type=int, default=None, help="exponent window for infinite groups")
    args = ap.parse_args()
    for name in args.names:
        P = catalog(name)
        t = time.perf_counter()
        F = fundamental_elements(P) if args.bound is None else fundamental_elements(P, args.bound)
        dt = time.perf_counter() - t
        elems = sorted(F, key=sort_key)
        one = P.ring.one()
        members = set(elems)
        bad = [p for p in elems if one - p not in members or (not p.is_zero() and P.ring.inverse(p) not in members)]
        tag = "complete" if F.complete else "window"
        shown = ", ".join(map(str, elems[:12])) + (", ..." if len(elems) > 12 else "")
        print(f"{name:<14} {len(elems):>4} ({tag}, {dt:.2f}s) closure {'ok' if not bad else 'VIOLATED'}: {{{shown}}}")


if __name__ == "__main__":
    main()
