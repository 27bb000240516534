"""Fold each Dynkin diagram automorphism and print the fixed-point root datum.

Usage: python3 demos/folding_table.py
"""

from parascope.gamma_action import (diagram_automorphism, factor_permutation, fixed_root_datum,
                                    make_action, root_orbits)
from parascope.parascopy import weyl_group
from parascope.root_datum import build, classify

CASES = [
    ("A2 sc", "flip"), ("A3 sc", "flip"), ("A4 sc", "flip"), ("A5 sc", "flip"),
    ("D4 sc", "triality"), ("D4 sc", "flip"), ("D5 sc", "flip"), ("E6 sc", "flip"),
    ("A1 sc x A1 sc x A1 sc", [1, 2, 0]),
]


def action(spec, kind):
    rd = build(spec)
    if isinstance(kind, list):
        return make_action(rd, [factor_permutation(rd, kind)])
    return make_action(rd, [diagram_automorphism(rd, kind)])


def main():
    print(f"{'G~':24s} {'Gamma':10s} {'G':4s} {'|W(G)|':>7s}  root orbits")
    for spec, kind in CASES:
        a = action(spec, kind)
        g = fixed_root_datum(a).datum
        cases = sorted(o.case for o in root_orbits(a))
        n2 = cases.count(2)
        label = kind if isinstance(kind, str) else "cyclic"
        print(f"{spec:24s} {label:10s} {str(classify(g)):4s} {len(weyl_group(g)):7d}  "
              f"{len(cases) - n2} of orthogonal roots, {n2} not")


if __name__ == "__main__":
    main()
