#!/usr/bin/env python3
"""Scan a one-parameter nilpotent family for monodromy jumps.

Example:
    python scripts/semicontinuity_scan.py "[[0,x,0],[0,0,(x-1)],[0,0,0]]"

Prints the generic Jordan type and every sampled rational point where the
type drops, illustrating that the drop locus is finite and the special
types sit below the generic one in the dominance order.
"""

import pathlib
import sys
from fractions import Fraction

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from llct.dsl import parse_matrix  # noqa: E402
from llct.partitions import dominance_leq  # noqa: E402
from llct.wd import WDFamily, family_jordan_at, family_jordan_generic  # noqa: E402


def main():
    matrix_text = sys.argv[1] if len(sys.argv) > 1 else "[[0,x,0],[0,0,(-1+x)],[0,0,0]]"
    rows = parse_matrix(matrix_text)
    fam = WDFamily(matrix_n=tuple(tuple(r) for r in rows))
    generic = family_jordan_generic(fam).as_dict()["1"]
    print(f"family N(x) = {matrix_text}")
    print(f"generic Jordan type: {generic.render()}")
    samples = [Fraction(n, d) for n in range(-12, 13) for d in (1, 2, 3)]
    drops = {}
    for a in sorted(set(samples)):
        special = family_jordan_at(fam, a).as_dict()["1"]
        assert dominance_leq(special, generic)
        if special != generic:
            drops[a] = special
    if not drops:
        print("no drops among the sampled points")
    for a, t in drops.items():
        print(f"  drop at x = {a}: {t.render()}")


if __name__ == "__main__":
    main()
