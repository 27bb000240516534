import pytest

from parascope import exact_linalg as la
from parascope.gamma_action import make_action
from parascope.parascopy import (WeylEmbedding, canonical_datum, datum_from_j, equivalent,
                                 fixed_weyl_subgroup, transport, validate_datum, weyl_group)
from parascope.root_datum import build

from cases import FOLDINGS, base_change_action, folding_action


def failing(rep):
    return [c[0].split(":")[0] for c in rep.failures]


@pytest.mark.parametrize("name", [f[0] for f in FOLDINGS if f[0] != "E6 flip"])
def test_canonical_data_valid(name):
    d = canonical_datum(folding_action(name))
    assert validate_datum(d).ok


def test_scaled_j_fails_p1():
    a = folding_action("A2 flip")
    d = datum_from_j(a, [[2], [2]])
    assert failing(validate_datum(d)) == ["P1"]


def test_p2_failure():
    a = base_change_action()
    d = datum_from_j(a, [[1], [1]], roots=[(6,), (-6,)], coroots=[(1,), (-1,)])
    assert "P2" in failing(validate_datum(d))


def test_non_fixed_j_rejected():
    a = folding_action("A2 flip")
    d = datum_from_j(a, [[1], [0]])
    assert not validate_datum(d).ok


@pytest.mark.parametrize("name", ["A2 flip", "A3 flip", "A4 flip", "D4 triality",
                                  "D4 flip", "A1^3 cyclic"])
def test_weyl_embedding_checks(name):
    d = canonical_datum(folding_action(name))
    emb = WeylEmbedding(d)
    assert emb.check().ok
    assert len(emb.image) == len(weyl_group(d.group))


def test_a3_flip_image_is_all_fixed_elements():
    d = canonical_datum(folding_action("A3 flip"))
    emb = WeylEmbedding(d)
    fixed = fixed_weyl_subgroup(d)
    assert len(fixed) == 8
    assert set(emb.image.values()) == set(fixed)


def test_reflection_image_is_psi_product_case2():
    d = canonical_datum(folding_action("A2 flip"))
    emb = WeylEmbedding(d)
    (alpha, s, t), = emb.table()
    # the only simple reflection of G maps to the longest element of S3
    assert la.matmul(t, t) == la.identity(2)
    assert t != la.identity(2)
    assert all(la.matvec(t, b) in d.ambient.roots for b in d.ambient.simple)
    assert sorted(la.matvec(t, b) for b in d.ambient.simple) == \
        sorted(la.vscale(-1, b) for b in d.ambient.simple)


def test_equivalence_identity_witness():
    d = canonical_datum(folding_action("A2 flip"))
    ok, (w, wt) = equivalent(d, d)
    assert ok
    assert w == la.identity(1) and wt == la.identity(2)


def test_equivalence_after_transport():
    d = canonical_datum(folding_action("A3 flip"))
    W = weyl_group(d.ambient).elements
    wt = W[5]
    w = weyl_group(d.group).elements[1]
    d2 = transport(d, w, wt)
    ok, wit = equivalent(d, d2)
    assert ok
    w1, wt1 = wit
    j2 = la.matmul(la.matmul(la.contragredient(wt1), d.j_star),
                   la.contragredient(la.int_inverse(w1)))
    assert j2 == d2.j_star


def test_inequivalent_actions():
    rd = build("A1 sc x A1 sc")
    d1 = canonical_datum(make_action(rd, []))
    d2 = canonical_datum(base_change_action())
    assert equivalent(d1, d2) == (False, None)
