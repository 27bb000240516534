"""Base change for SL2: lift the semisimple classes of PGL2(F_q) to PGL2(F_q^2).

G~ = Res SL2 is SL2 x SL2 with Frobenius swapping the factors, Gamma swaps them
too, and G = SL2 sits inside diagonally.  On the dual side the lift goes from
PGL2(F_q) to PGL2(F_q^2).  For q = 3 each image is compared with the class of
the same matrix under the inclusion PGL2(F_3) -> PGL2(F_9), found by brute force.

Usage: python3 demos/base_change_sl2.py [--q 3]
"""

import argparse

from parascope.conorm_lift import Lifter
from parascope.gamma_action import factor_permutation, make_action
from parascope.oracle import compare_form, embedding_map, field
from parascope.parascopy import canonical_datum
from parascope.root_datum import build


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--q", type=int, default=3)
    args = ap.parse_args()

    rd = build("A1 sc x A1 sc")
    sw = factor_permutation(rd, [1, 0])
    d = canonical_datum(make_action(rd, [sw], sw))
    lf = Lifter(d, args.q)
    target = lf.ctx_tilde.rational_classes()
    where = {c.key: i for i, c in enumerate(target)}
    print(f"PGL2(F_{args.q}): {len(lf.classes())} classes -> "
          f"PGL2(F_{args.q ** 2}): {len(target)} classes")

    check = None
    if args.q == 3:
        K = field(3, 4)
        c1 = compare_form(lf.dual_form, K)
        c2 = compare_form(lf.dual_form_tilde, K)
        emb = embedding_map(c1.spec, c2.spec, K)
        check = (c1, c2, emb)

    for i, c in enumerate(lf.classes()):
        l = lf.lift(c)
        j = where[l.key]
        line = f"  class {i}  s = {[str(x) for x in c.geometric]}  ->  class {j}  " \
               f"s~ = {[str(x) for x in l.geometric]}"
        if check:
            c1, c2, emb = check
            ok = c2.bijection[j] == emb[c1.bijection[i]]
            line += "  (matches brute force)" if ok else "  (MISMATCH)"
        print(line)


if __name__ == "__main__":
    main()
