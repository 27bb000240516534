"""Exact integer and rational linear algebra.

Matrices are tuples of row tuples holding Python ints (or Fractions for the
rational helpers).  Vectors are plain tuples.  Nothing here ever touches
floating point.
"""

from fractions import Fraction
from itertools import product
from math import gcd


class SingularMatrixError(ValueError):
    pass


def as_matrix(rows):
    return tuple(tuple(r) for r in rows)


def identity(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def zeros(m, n):
    return tuple((0,) * n for _ in range(m))


def transpose(A):
    if not A:
        return ()
    return tuple(zip(*A))


def matmul(A, B):
    Bt = transpose(B)
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in Bt) for row in A)


def matvec(A, v):
    return tuple(sum(a * x for a, x in zip(row, v)) for row in A)


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def scale(c, A):
    return tuple(tuple(c * x for x in row) for row in A)


def matadd(A, B):
    return tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(A, B))


def matsub(A, B):
    return tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(A, B))


def vadd(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vsub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vscale(c, v):
    return tuple(c * a for a in v)


def block_diag(*blocks):
    n = sum(len(b) for b in blocks)
    rows = []
    off = 0
    for b in blocks:
        k = len(b)
        for r in b:
            rows.append((0,) * off + tuple(r) + (0,) * (n - off - k))
        off += k
    return tuple(rows)


def det(A):
    """Determinant by fraction-free Bareiss elimination."""
    n = len(A)
    if n == 0:
        return 1
    M = [list(r) for r in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def rref(A):
    """Reduced row echelon form over Q.  Returns (rows, pivot columns)."""
    M = [[Fraction(x) for x in r] for r in A]
    rows = len(M)
    cols = len(M[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        piv = M[r][c]
        M[r] = [x / piv for x in M[r]]
        for i in range(rows):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return [tuple(row) for row in M], pivots


def rank(A):
    if not A:
        return 0
    return len(rref(A)[1])


def inverse(A):
    """Exact inverse over Q; entries returned as Fractions."""
    n = len(A)
    aug = [tuple(A[i]) + identity(n)[i] for i in range(n)]
    R, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise SingularMatrixError("matrix is singular")
    return tuple(tuple(R[i][n:]) for i in range(n))


def int_inverse(A):
    """Inverse of a unimodular integer matrix, as ints."""
    inv = inverse(A)
    if any(x.denominator != 1 for r in inv for x in r):
        raise ValueError("matrix is not unimodular")
    return tuple(tuple(int(x) for x in r) for r in inv)


def contragredient(A):
    """Inverse transpose: the action on the dual lattice preserving the pairing."""
    inv = inverse(A)
    if all(x.denominator == 1 for r in inv for x in r):
        inv = tuple(tuple(int(x) for x in r) for r in inv)
    return transpose(inv)


def solve(A, b):
    """Solve A x = b over Q; A may be non-square but must have a solution.

    Returns one solution (free variables set to 0) or None.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    aug = [tuple(A[i]) + (b[i],) for i in range(m)]
    R, piv = rref(aug)
    if n in piv:
        return None
    x = [Fraction(0)] * n
    for row, c in zip(R, piv):
        x[c] = row[n]
    return tuple(x)


def as_int_vector(v):
    if any(Fraction(x).denominator != 1 for x in v):
        return None
    return tuple(int(x) for x in v)


def as_int_matrix(A):
    if any(Fraction(x).denominator != 1 for r in A for x in r):
        return None
    return tuple(tuple(int(x) for x in r) for r in A)


# Smith normal form


def smith_normal_form(M):
    """Return (U, D, V) with U, V unimodular and D = U*M*V in Smith form.

    The diagonal of D satisfies d1 | d2 | ... and every entry is >= 0.
    """
    M = as_matrix(M)
    m = len(M)
    n = len(M[0]) if m else 0
    D = [list(r) for r in M]
    U = [list(r) for r in identity(m)]
    V = [list(r) for r in identity(n)]

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in D:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def add_row(src, dst, c):
        # row dst += c * row src
        D[dst] = [a + c * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + c * b for a, b in zip(U[dst], U[src])]

    def add_col(src, dst, c):
        for r in D:
            r[dst] += c * r[src]
        for r in V:
            r[dst] += c * r[src]

    t = 0
    while t < min(m, n):
        # pivot: smallest nonzero |entry| in the trailing block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if D[i][j] != 0 and (best is None or abs(D[i][j]) < abs(D[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            done = True
            for i in range(t + 1, m):
                if D[i][t] != 0:
                    add_row(t, i, -(D[i][t] // D[t][t]))
                    if D[i][t] != 0:
                        done = False
            for j in range(t + 1, n):
                if D[t][j] != 0:
                    add_col(t, j, -(D[t][j] // D[t][t]))
                    if D[t][j] != 0:
                        done = False
            if done:
                # divisibility of the trailing block
                bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                            if D[i][j] % D[t][t] != 0), None)
                if bad is None:
                    break
                add_row(bad[0], t, 1)
                continue
            # move the smallest entry of row/column t into the pivot
            best = (t, t)
            for i in range(t, m):
                if D[i][t] != 0 and abs(D[i][t]) < abs(D[best[0]][best[1]]):
                    best = (i, t)
            for j in range(t, n):
                if D[t][j] != 0 and abs(D[t][j]) < abs(D[best[0]][best[1]]):
                    best = (t, j)
            swap_rows(t, best[0])
            swap_cols(t, best[1])
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return as_matrix(U), as_matrix(D), as_matrix(V)


def smith_diagonal(M):
    _, D, _ = smith_normal_form(M)
    return tuple(D[i][i] for i in range(min(len(D), len(D[0]) if D else 0)))


def mod1(x):
    x = Fraction(x)
    return x - (x.numerator // x.denominator)


def reduce_mod1(v):
    return tuple(mod1(x) for x in v)


def kernel_mod_lattice(M):
    """All s in (Q/Z)^n with M s = 0 mod Z^n, as canonical representatives.

    M must be square and nonsingular; there are exactly |det M| solutions.
    """
    M = as_matrix(M)
    n = len(M)
    if det(M) == 0:
        raise SingularMatrixError("kernel_mod_lattice needs a nonsingular matrix")
    U, D, V = smith_normal_form(M)
    # M s in Z^n  <=>  D (V^-1 s) in Z^n; with t = V^-1 s, t_i in (1/d_i) Z
    d = [abs(D[i][i]) for i in range(n)]
    # work in (1/N) Z with N = lcm(d_i) = d_n, so everything stays integral
    N = 1
    for di in d:
        N = N * di // gcd(N, di)
    cols = [tuple(V[i][j] * (N // d[j]) for i in range(n)) for j in range(n)]
    sols = set()
    for ks in product(*(range(di) for di in d)):
        sols.add(tuple(sum(k * c[i] for k, c in zip(ks, cols)) % N for i in range(n)))
    return [tuple(Fraction(x, N) for x in v) for v in sorted(sols)]


def integer_kernel(A, ncols=None):
    """Basis (as rows) of the saturated lattice {x in Z^n : A x = 0}."""
    A = as_matrix(A)
    n = ncols if ncols is not None else len(A[0])
    if not A:
        return identity(n)
    U, D, V = smith_normal_form(A)
    r = sum(1 for i in range(min(len(D), n)) if D[i][i] != 0)
    return tuple(tuple(V[i][j] for i in range(n)) for j in range(r, n))


def saturate(vectors, n=None):
    """Basis (rows) of (Q-span of vectors) intersected with Z^n.

    The quotient of Z^n by the result is torsion-free.
    """
    vecs = [tuple(Fraction(x) for x in v) for v in vectors]
    if n is None:
        if not vecs:
            return ()
        n = len(vecs[0])
    if not vecs or rank(vecs) == 0:
        return ()
    # clear denominators, then saturation = kernel of the annihilator
    ints = []
    for v in vecs:
        den = 1
        for x in v:
            den = den * x.denominator // gcd(den, x.denominator)
        ints.append(tuple(int(x * den) for x in v))
    ann = integer_kernel(ints, n)
    if not ann:
        return hnf_rows(identity(n))
    return hnf_rows(integer_kernel(ann, n))


def hnf_rows(B):
    """Row-style Hermite normal form of a lattice basis (canonical per lattice)."""
    M = [list(r) for r in B if any(r)]
    if not M:
        return ()
    n = len(M[0])
    r = 0
    for c in range(n):
        rows = [i for i in range(r, len(M)) if M[i][c] != 0]
        if not rows:
            continue
        while len(rows) > 1:
            rows.sort(key=lambda i: abs(M[i][c]))
            p = rows[0]
            for i in rows[1:]:
                q = M[i][c] // M[p][c]
                M[i] = [a - q * b for a, b in zip(M[i], M[p])]
            rows = [i for i in rows if M[i][c] != 0]
        p = rows[0]
        M[r], M[p] = M[p], M[r]
        if M[r][c] < 0:
            M[r] = [-x for x in M[r]]
        for i in range(r):
            q = M[i][c] // M[r][c]
            M[i] = [a - q * b for a, b in zip(M[i], M[r])]
        r += 1
        if r == len(M):
            break
    return tuple(tuple(row) for row in M[:r])


def in_lattice(v, basis):
    """True if v is an integer combination of the rows of basis."""
    v = tuple(Fraction(x) for x in v)
    if not basis:
        return all(x == 0 for x in v)
    # integer basis rows may be dependent; reduce first so the solution is unique
    B = hnf_rows(basis)
    x = solve(transpose(B), v)
    return x is not None and all(c.denominator == 1 for c in x)
