"""Lift semisimple classes through the folding of A2 by its diagram flip.

G~ = SL3 with Gamma generated by the flip and G of type A1.  Classes of the
dual group G* over F_q are lifted to the dual of G~.  The route check confirms
that each lifted label does not depend on the torus used to reach it.

Usage: python3 demos/unitary_lift.py [--q 5]
"""

import argparse

from parascope.conorm_lift import Lifter, warnings_for
from parascope.gamma_action import diagram_automorphism, make_action
from parascope.oracle import matrix_model
from parascope.parascopy import canonical_datum
from parascope.root_datum import build, classify


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--q", type=int, default=5)
    args = ap.parse_args()

    rd = build("A2 sc")
    d = canonical_datum(make_action(rd, [diagram_automorphism(rd, "flip")]))
    for w in warnings_for(d, args.q):
        print("warning:", w)
    lf = Lifter(d, args.q)
    for name, form in (("G*", lf.dual_form), ("G~*", lf.dual_form_tilde)):
        m = matrix_model(form)
        print(f"{name}: {m.spec.name if m else classify(form.datum)}")
    print("conorm matrix:", lf.conorm.matrix)
    target = lf.ctx_tilde.rational_classes()
    where = {c.key: i for i, c in enumerate(target)}
    for i, c in enumerate(lf.classes()):
        l = lf.lift(c)
        print(f"  {i:2d}  {[str(x) for x in c.geometric]}  ->  {where[l.key]:2d}  "
              f"{[str(x) for x in l.geometric]}")
    rep = lf.check()
    for name, ok, detail in rep.checks:
        print(f"  [{'ok' if ok else 'FAIL'}] {name}" + (f": {detail}" if detail else ""))


if __name__ == "__main__":
    main()
