from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from parascope import exact_linalg as la


def small_matrices(rows=st.integers(1, 4), cols=None, lo=-6, hi=6):
    return rows.flatmap(lambda m: (st.integers(1, 4) if cols is None else cols).flatmap(
        lambda n: st.lists(st.lists(st.integers(lo, hi), min_size=n, max_size=n),
                           min_size=m, max_size=m)))


def square(n_max=4, lo=-5, hi=5):
    return st.integers(1, n_max).flatmap(
        lambda n: st.lists(st.lists(st.integers(lo, hi), min_size=n, max_size=n),
                           min_size=n, max_size=n))


def test_snf_examples():
    assert la.smith_diagonal([[2, 0], [0, 3]]) == (1, 6)
    assert la.smith_diagonal([[1, 0], [0, 0]]) == (1, 0)
    # gcd of the entries is 2 and |det| = 8
    assert la.smith_diagonal([[2, 4], [6, 8]]) == (2, 4)


@settings(max_examples=150, deadline=None)
@given(small_matrices())
def test_snf_properties(M):
    U, D, V = la.smith_normal_form(M)
    assert la.matmul(la.matmul(U, M), V) == la.as_matrix(D)
    assert abs(la.det(U)) == 1 and abs(la.det(V)) == 1
    diag = [D[i][i] for i in range(min(len(M), len(M[0])))]
    assert all(D[i][j] == 0 for i in range(len(D)) for j in range(len(D[0])) if i != j)
    assert all(d >= 0 for d in diag)
    for a, b in zip(diag, diag[1:]):
        assert (b == 0) if a == 0 else b % a == 0


def test_kernel_mod_lattice_examples():
    sols = la.kernel_mod_lattice([[2, 0], [0, 3]])
    assert len(sols) == 6
    assert set(sols) == {(Fraction(a, 2), Fraction(b, 3)) for a in range(2) for b in range(3)}
    assert la.kernel_mod_lattice([[2]]) == [(Fraction(0),), (Fraction(1, 2),)]
    four = la.kernel_mod_lattice([[-4]])
    assert four == [(Fraction(k, 4),) for k in range(4)]


@settings(max_examples=100, deadline=None)
@given(square(3, -4, 4))
def test_kernel_mod_lattice_count(M):
    d = la.det(M)
    if d == 0:
        with pytest.raises(la.SingularMatrixError):
            la.kernel_mod_lattice(M)
        return
    sols = la.kernel_mod_lattice(M)
    assert len(sols) == abs(d)
    assert len(set(sols)) == len(sols)
    for s in sols:
        assert all(0 <= x < 1 for x in s)
        assert all(x.denominator == 1 for x in la.matvec(M, s))


def test_saturate_examples():
    assert la.saturate([(2, 0)], 2) == ((1, 0),)
    assert la.saturate([(1, 1), (1, -1)], 2) == ((1, 0), (0, 1))
    assert la.saturate([], 3) == ()


@settings(max_examples=100, deadline=None)
@given(small_matrices(cols=st.just(3)))
def test_saturate_idempotent_and_torsion_free(rows):
    B = la.saturate(rows, 3)
    assert la.saturate(B, 3) == B
    if B:
        assert la.rank(B) == la.rank(rows)
        # Z^n / span(B) torsion free: all invariant factors equal 1
        assert all(d == 1 for d in la.smith_diagonal(B)[:len(B)])


@settings(max_examples=100, deadline=None)
@given(square(3))
def test_inverse_roundtrip(M):
    if la.det(M) == 0:
        with pytest.raises(la.SingularMatrixError):
            la.inverse(M)
        return
    Mi = la.inverse(M)
    assert la.matmul(M, Mi) == la.identity(len(M))


def test_integer_kernel():
    K = la.integer_kernel([[1, 1, 0], [0, 0, 0]], 3)
    assert len(K) == 2
    for v in K:
        assert v[0] + v[1] == 0


def test_solve_and_lattice_membership():
    assert la.solve([[2, 0], [0, 1]], (1, 1)) == (Fraction(1, 2), Fraction(1))
    assert la.solve([[1], [1]], (1, 2)) is None
    assert la.in_lattice((2, 2), [(1, 1)])
    assert not la.in_lattice((1, 0), [(2, 0), (0, 1)])


def test_contragredient_pairing():
    A = ((0, 1), (-1, -1))
    C = la.contragredient(A)
    for u in ((1, 0), (0, 1), (2, -3)):
        for v in ((1, 0), (0, 1), (5, 7)):
            assert la.dot(la.matvec(A, u), la.matvec(C, v)) == la.dot(u, v)
