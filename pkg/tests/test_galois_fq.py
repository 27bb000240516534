from fractions import Fraction

import pytest

from parascope import exact_linalg as la
from parascope.galois_fq import (FormError, FqForm, component_group, context, geometric_classes,
                                 label_point, prime_power, rational_classes, torus_classes,
                                 torus_points)
from parascope.gamma_action import diagram_automorphism
from parascope.root_datum import build


def form(spec, q, twist=None):
    rd = build(spec)
    return FqForm(rd, q, diagram_automorphism(rd, twist) if twist else None)


def test_prime_power():
    assert prime_power(9) == (3, 2)
    assert prime_power(2) == (2, 1)
    with pytest.raises(FormError):
        prime_power(6)
    with pytest.raises(FormError):
        FqForm(build("A1"), 12)


def test_twist_must_preserve_base():
    rd = build("A2")
    w = rd.reflection_matrix(rd.simple[0])
    with pytest.raises(FormError):
        FqForm(rd, 3, w)


@pytest.mark.parametrize("spec,twist,count", [("A1", None, 2), ("A2", None, 3),
                                              ("A2", "flip", 3), ("B2", None, 5)])
def test_torus_class_counts(spec, twist, count):
    assert len(torus_classes(form(spec, 3, twist))) == count


def test_a1_torus_points_q3():
    F = form("SL2", 3)
    ctx = context(F)
    split = ctx.torus_class_of(la.identity(1))
    nonsplit = [t for t in torus_classes(F) if t != split][0]
    pts = [p.s for p in torus_points(split, F)]
    assert len(pts) == 2
    assert len(torus_points(nonsplit, F)) == 4
    # (q-1) s = 0 on the split torus of SL2 in X_* coordinates
    assert all(((2 * x) % 1) == 0 for (x,) in pts)


def test_a2_coxeter_torus_q2():
    F = form("A2", 2)
    sizes = {t.size: len(torus_points(t, F)) for t in torus_classes(F)}
    assert sizes[2] == 7


@pytest.mark.parametrize("spec,twist", [("A2", None), ("A2", "flip"), ("B2", None),
                                        ("G2", None), ("A3 ad", "flip")])
@pytest.mark.parametrize("q", [2, 3, 5])
def test_point_counts_are_determinants(spec, twist, q):
    F = form(spec, q, twist)
    ctx = context(F)
    for t in torus_classes(F):
        d = la.det(la.matsub(ctx.frobenius_matrix(t.rep), la.identity(ctx.n)))
        pts = torus_points(t, F)
        assert len(pts) == abs(d)
        assert d % q != 0
        for p in pts:
            assert all(x.denominator % F.p != 0 for x in p.s)


@pytest.mark.parametrize("spec,q,geo,rat", [("PGL2", 3, 3, 4), ("SL2", 3, 3, 3),
                                            ("PGL2", 5, 5, 6), ("SL2", 5, 5, 5),
                                            ("SL3", 3, 9, 9)])
def test_class_counts(spec, q, geo, rat):
    F = form(spec, q)
    assert len(geometric_classes(F)) == geo
    assert len(rational_classes(F)) == rat


def test_identity_class_present():
    for spec in ("A2", "B2 ad", "G2"):
        F = form(spec, 3)
        assert tuple(Fraction(0) for _ in range(F.datum.rank)) in geometric_classes(F)


def test_component_group_pgl2():
    F = form("PGL2", 3)
    assert component_group(F, (Fraction(0),)).order == 1
    cg = component_group(F, (Fraction(1, 2),))
    assert cg.order == 2
    assert len(cg.stabilizer) == 2 and len(cg.identity_component) == 1
    assert component_group(F, (Fraction(1, 4),)).order == 1


@pytest.mark.parametrize("spec", ["A2 ad", "B2 sc", "G2"])
def test_identity_component_normal(spec):
    F = form(spec, 5)
    for s in geometric_classes(F):
        cg = component_group(F, s)
        W0 = set(cg.identity_component)
        for w in cg.stabilizer:
            wi = la.int_inverse(w)
            assert all(la.matmul(la.matmul(w, u), wi) in W0 for u in W0)


def test_labels_constant_on_rational_classes():
    F = form("PGL2", 3)
    ctx = context(F)
    classes = rational_classes(F)
    keys = {c.key for c in classes}
    for c in classes:
        for s, w in ctx.class_routes(c):
            assert label_point(F, s, w).key == c.key
    # every rational point on every torus gets one of the listed labels
    for t in torus_classes(F):
        for p in torus_points(t, F):
            assert label_point(F, p.s, p.torus).key in keys


def test_ratio_minus_one_splits_in_two():
    F = form("PGL2", 3)
    half = [c for c in rational_classes(F) if c.geometric == (Fraction(1, 2),)]
    assert len(half) == 2
    tori = {context(F).torus_class_of(c.torus).index for c in half}
    assert len(tori) == 2


def test_label_rejects_nonrational_point():
    F = form("PGL2", 3)
    with pytest.raises(FormError):
        label_point(F, (Fraction(1, 3),), la.identity(1))


@pytest.mark.parametrize("spec", ["A2 ad", "B2 ad", "A3 ad"])
def test_coset_representatives(spec):
    F = form(spec, 5)
    for s in geometric_classes(F):
        cg = component_group(F, s)
        W0 = cg.identity_component
        assert len(cg.stabilizer) == cg.order * len(W0)
        seen = set()
        for r in cg.coset_reps:
            coset = {la.matmul(r, u) for u in W0}
            assert {cg.coset_of(x) for x in coset} == {r}
            assert not coset & seen
            seen |= coset
        assert seen == set(cg.stabilizer)
