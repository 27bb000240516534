import pytest

from parascope import exact_linalg as la
from parascope.root_datum import (BasedRootDatum, RootDatum, RootDatumError, build,
                                  cartan_matrix, classify, classical_weyl_order, dual)
from parascope.weyl import enumerate_weyl

TYPES = ["A1", "A2", "A3", "B2", "B3", "C3", "D4", "G2", "F4"]


@pytest.mark.parametrize("t", TYPES)
@pytest.mark.parametrize("flavor", ["sc", "ad"])
def test_built_data_are_valid(t, flavor):
    rd = build(f"{t} {flavor}")
    assert rd.problems() == []
    pos = set(rd.positive)
    assert len(pos) * 2 == len(rd.roots)
    for a in rd.roots:
        assert la.dot(a, rd.coroot_of[a]) == 2


@pytest.mark.parametrize("t,count", [("A2", 6), ("B3", 18), ("D4", 24), ("G2", 12),
                                     ("F4", 48), ("E6", 72)])
def test_root_counts(t, count):
    assert len(build(t).roots) == count


def test_cartan_convention():
    # C[i][j] = <alpha_i, alpha_j^vee>; B2: alpha_1 long, alpha_2 short
    assert cartan_matrix("B", 2) == ((2, -2), (-1, 2))
    rd = build("B2 ad")
    assert rd.cartan_matrix() == cartan_matrix("B", 2)


@pytest.mark.parametrize("spec,label", [
    ("A2 sc", "A2"), ("A3 ad", "A3"), ("B3", "B3"), ("C3 ad", "C3"), ("G2", "G2"),
    ("F4", "F4"), ("D4", "D4"), ("GL2", "A1+T1"), ("T1", "T1"),
    ("A1 sc x A1 sc", "A1+A1"), ("C2 sc", "C2"), ("B2 ad", "B2"),
])
def test_classify(spec, label):
    assert str(classify(build(spec))) == label


def test_dual_swaps_roots_and_coroots():
    rd = build("B3 sc")
    d = dual(rd)
    assert set(d.roots) == set(rd.coroot_of.values())
    assert str(classify(d)) == "C3"
    assert dual(d).roots == rd.roots


def test_sl2_pgl2_duality():
    sl2, pgl2 = build("SL2"), build("PGL2")
    assert set(dual(sl2).roots) == set(pgl2.roots)


@pytest.mark.parametrize("t,n", [("A", 1), ("A", 3), ("B", 2), ("C", 3), ("D", 4), ("G", 2)])
def test_weyl_orders_match_formula(t, n):
    rd = build(f"{t}{n}")
    assert len(enumerate_weyl(rd)) == classical_weyl_order(t, n)


def test_invalid_datum_rejected():
    with pytest.raises(RootDatumError):
        RootDatum(1, ((1,), (-1,)), ((1,), (-1,))).validate()


def test_unknown_spec():
    with pytest.raises(RootDatumError):
        build("Q7")


def test_reflection_permutes_roots():
    rd = build("G2")
    for a in rd.roots:
        s = rd.reflection_matrix(a)
        assert sorted(la.matvec(s, b) for b in rd.roots) == sorted(rd.roots)
        assert la.matvec(s, a) == la.vscale(-1, a)


def test_based_datum_has_simple_roots():
    rd = build("A3")
    assert isinstance(rd, BasedRootDatum)
    assert len(rd.simple) == 3
