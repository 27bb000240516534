"""Brute-force semisimple classes of small matrix groups over finite fields.

Enumeration never touches root data.  Groups are enumerated as explicit
matrices with entries in one finite field K large enough to hold every
eigenvalue, so that class invariants (eigenvalue ratios) can be read off
directly.  The last section matches these classes against the classes of a
form computed from root data.

Roots of unity are identified with Q/Z by zeta_N = g^((Q-1)/N) for the
primitive element g of K; the same identification is used on both sides.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import gcd

ORACLE_CAP = 10 ** 7
FIELD_CAP = 4096  # fields are tabulated in full, Q^2 additions


class OracleCapExceeded(RuntimeError):
    pass


def _factor_prime_power(q):
    p = next(d for d in range(2, q + 1) if q % d == 0)
    e, m = 0, q
    while m % p == 0:
        m //= p
        e += 1
    if m != 1:
        raise ValueError(f"q = {q} is not a prime power")
    return p, e


class GF:
    """The field with p**e elements.  Elements are ints 0..Q-1 whose base-p
    digits are the coefficients of a polynomial in a primitive root g."""

    def __init__(self, p, e):
        self.p, self.e = p, e
        self.Q = Q = p ** e
        if Q > FIELD_CAP:
            raise OracleCapExceeded(f"field of order {Q} exceeds the table cap {FIELD_CAP}")
        self.modulus = _primitive_poly(p, e)
        # exp/log tables from repeated multiplication by x
        self.exp = [0] * (2 * (Q - 1))
        self.log = [None] * Q
        cur = [1] + [0] * (e - 1)
        for k in range(Q - 1):
            v = _to_int(cur, p)
            self.exp[k] = self.exp[k + Q - 1] = v
            self.log[v] = k
            cur = _times_x(cur, self.modulus, p)
        digits = [_digits(v, p, e) for v in range(Q)]
        self._add = [[_to_int([(a + b) % p for a, b in zip(digits[u], digits[v])], p)
                      for v in range(Q)] for u in range(Q)]
        self._neg = [_to_int([(-a) % p for a in digits[u]], p) for u in range(Q)]

    def add(self, a, b):
        return self._add[a][b]

    def neg(self, a):
        return self._neg[a]

    def sub(self, a, b):
        return self._add[a][self._neg[b]]

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self.exp[self.log[a] + self.log[b]]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return self.exp[(self.Q - 1 - self.log[a]) % (self.Q - 1)]

    def pow(self, a, k):
        if a == 0:
            return 0 if k else 1
        return self.exp[(self.log[a] * k) % (self.Q - 1)]

    def gen_power(self, k):
        return self.exp[k % (self.Q - 1)]

    def subfield(self, d):
        """The elements of the subfield with p**d elements (d | e), sorted."""
        if self.e % d:
            raise ValueError(f"F_{self.p}^{d} is not a subfield of F_{self.Q}")
        step = (self.Q - 1) // (self.p ** d - 1)
        return sorted([0] + [self.exp[k] for k in range(0, self.Q - 1, step)])

    def root_of_unity_exponent(self, a):
        """a = zeta^x with the identification zeta_N = g^((Q-1)/N); returns x in Q/Z."""
        return Fraction(self.log[a], self.Q - 1)


def _digits(v, p, e):
    out = []
    for _ in range(e):
        out.append(v % p)
        v //= p
    return out


def _to_int(digits, p):
    v = 0
    for d in reversed(digits):
        v = v * p + d
    return v


def _times_x(cur, modulus, p):
    # modulus: monic coefficients c_0..c_{e-1} of x^e + ... (low to high)
    top = cur[-1]
    nxt = [0] + cur[:-1]
    return [(a - top * c) % p for a, c in zip(nxt, modulus)]


@lru_cache(maxsize=None)
def _primitive_poly(p, e):
    """Lexicographically first monic polynomial of degree e for which x has
    multiplicative order p**e - 1."""
    Q = p ** e
    if e == 1:
        # x - g for the least primitive root g
        for g in range(1, p):
            if p == 2 or all(pow(g, (p - 1) // r, p) != 1 for r in _prime_factors(p - 1)):
                return ((-g) % p,)
    for coeffs in product(range(p), repeat=e):
        if coeffs[0] == 0:
            continue
        one = [1] + [0] * (e - 1)
        cur = _times_x(one, coeffs, p)
        k = 1
        while cur != one and k < Q:
            cur = _times_x(cur, coeffs, p)
            k += 1
        if k == Q - 1:
            return coeffs
    raise ValueError(f"no primitive polynomial of degree {e} over F_{p}")


def _prime_factors(n):
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


@lru_cache(maxsize=None)
def field(p, e):
    return GF(p, e)


# matrices as flat row-major tuples of field elements


def mat_mul(K, A, B, n):
    out = []
    for i in range(n):
        row = A[i * n:(i + 1) * n]
        for j in range(n):
            acc = 0
            for k in range(n):
                a = row[k]
                if a:
                    b = B[k * n + j]
                    if b:
                        acc = K._add[acc][K.exp[K.log[a] + K.log[b]]]
            out.append(acc)
    return tuple(out)


def mat_det(K, A, n):
    if n == 1:
        return A[0]
    if n == 2:
        return K.sub(K.mul(A[0], A[3]), K.mul(A[1], A[2]))
    total = 0
    for j in range(n):
        minor = tuple(A[r * n + c] for r in range(1, n) for c in range(n) if c != j)
        term = K.mul(A[j], mat_det(K, minor, n - 1))
        total = K.add(total, term) if j % 2 == 0 else K.sub(total, term)
    return total


def identity(n):
    return tuple(1 if i == j else 0 for i in range(n) for j in range(n))


def char_poly(K, A, n):
    """Coefficients (c_0, ..., c_{n-1}, 1) of det(x - A), low degree first."""
    if n == 2:
        tr = K.add(A[0], A[3])
        return (mat_det(K, A, 2), K.neg(tr), 1)
    if n == 3:
        tr = K.add(K.add(A[0], A[4]), A[8])
        m2 = 0
        for i, j in ((0, 1), (0, 2), (1, 2)):
            m2 = K.add(m2, K.sub(K.mul(A[i * 3 + i], A[j * 3 + j]), K.mul(A[i * 3 + j], A[j * 3 + i])))
        return (K.neg(mat_det(K, A, 3)), m2, K.neg(tr), 1)
    if n == 1:
        return (K.neg(A[0]), 1)
    raise ValueError("characteristic polynomials only for n <= 3")


def poly_eval(K, c, x):
    acc = 0
    for a in reversed(c):
        acc = K.add(K.mul(acc, x), a)
    return acc


def poly_div_linear(K, c, r):
    """Quotient of c by (x - r), assuming r is a root."""
    n = len(c) - 1
    out = [0] * n
    acc = 0
    for k in range(n, 0, -1):
        acc = K.add(K.mul(acc, r), c[k])
        out[k - 1] = acc
    return tuple(out)


def eigenvalues(K, A, n):
    """Roots of the characteristic polynomial in K with multiplicity, sorted."""
    c = char_poly(K, A, n)
    roots = []
    for x in range(1, K.Q):
        while len(c) > 1 and poly_eval(K, c, x) == 0:
            roots.append(x)
            c = poly_div_linear(K, c, x)
    if len(roots) != n:
        raise ValueError("characteristic polynomial does not split in the working field")
    return tuple(sorted(roots))


# groups


@dataclass(frozen=True)
class MatrixGroupSpec:
    family: str  # "SL", "GL" or "PGL"
    n: int
    q: int
    unitary: bool = False  # SU / U / PU built from the hermitian antidiagonal form

    @property
    def name(self):
        if self.unitary:
            return {"SL": "SU", "GL": "U", "PGL": "PU"}[self.family] + f"{self.n}({self.q})"
        return f"{self.family}{self.n}({self.q})"

    def order_formula(self):
        q, n = self.q, self.n
        if self.unitary:
            o = q ** (n * (n - 1) // 2)
            for i in range(1, n + 1):
                o *= q ** i - (-1) ** i
            return o if self.family == "GL" else o // (q + 1)
        o = 1
        for i in range(n):
            o *= q ** n - q ** i
        return o if self.family == "GL" else o // (q - 1)


def working_field(spec, extra=1):
    """A field holding the entries and all eigenvalues of elements of spec."""
    p, e = _factor_prime_power(spec.q)
    deg = 1
    for k in range(1, spec.n + 1):
        deg = deg * k // gcd(deg, k)
    if spec.unitary:
        deg = deg * 2 // gcd(deg, 2)
    return field(p, e * deg * extra)


class MatrixGroup:
    """An explicitly enumerated matrix group with its semisimple classes."""

    def __init__(self, spec, K=None, cap=ORACLE_CAP):
        self.spec = spec
        if spec.order_formula() > cap:
            raise OracleCapExceeded(f"{spec.name} has {spec.order_formula()} elements, cap is {cap}")
        self.K = K = K or working_field(spec)
        p, e = _factor_prime_power(spec.q)
        if K.p != p or K.e % (e * (2 if spec.unitary else 1)):
            raise ValueError("working field does not contain the field of definition")
        self.p = p
        self.n = spec.n
        self.entries = K.subfield(e * (2 if spec.unitary else 1))
        if spec.unitary:
            self.center = [c for c in self.entries if c and K.pow(c, spec.q + 1) == 1]
        else:
            self.center = [c for c in self.entries if c]
        self.elements = self._enumerate(cap)
        self.index = {g: i for i, g in enumerate(self.elements)}

    # enumeration

    def normalize(self, A):
        """Canonical representative of A modulo the center (projective families)."""
        if self.spec.family != "PGL":
            return A
        K = self.K
        if not self.spec.unitary:
            lead = next(a for a in A if a)
            c = K.inv(lead)
            return tuple(K.mul(c, a) for a in A)
        return min(tuple(K.mul(c, a) for a in A) for c in self.center)

    def _candidates(self):
        n, K = self.n, self.K
        if not self.spec.unitary:
            for A in product(self.entries, repeat=n * n):
                if mat_det(K, A, n):
                    yield A
            return
        # unitary: columns v_j with h(v_i, v_k) = J_ik for h(u, v) = sum u_i^q v_{n-1-i}
        conj = {a: K.pow(a, self.spec.q) for a in self.entries}

        def h(u, v):
            acc = 0
            for i in range(n):
                acc = K.add(acc, K.mul(conj[u[i]], v[n - 1 - i]))
            return acc

        by_norm = {0: [], 1: []}
        for v in product(self.entries, repeat=n):
            if any(v):
                by_norm.setdefault(h(v, v), []).append(v)
        J = [[1 if i + k == n - 1 else 0 for k in range(n)] for i in range(n)]
        cols = []

        def rec(j):
            if j == n:
                yield tuple(cols[c][r] for r in range(n) for c in range(n))
                return
            for v in by_norm[J[j][j]]:
                if any(h(cols[i], v) != J[i][j] for i in range(j)):
                    continue
                cols.append(v)
                yield from rec(j + 1)
                cols.pop()

        yield from rec(0)

    def _enumerate(self, cap):
        expected = self.spec.order_formula()
        if expected > cap:
            raise OracleCapExceeded(f"{self.spec.name} has {expected} elements, cap is {cap}")
        fam = self.spec.family
        seen = set()
        for A in self._candidates():
            if fam == "SL" and mat_det(self.K, A, self.n) != 1:
                continue
            seen.add(self.normalize(A))
        els = sorted(seen)
        if len(els) != expected:
            raise AssertionError(f"{self.spec.name}: enumerated {len(els)}, expected {expected}")
        return els

    # group operations

    def mul(self, A, B):
        return self.normalize(mat_mul(self.K, A, B, self.n))

    @property
    def one(self):
        return identity(self.n)

    def order_of(self, A):
        x, k = A, 1
        one = self.one
        while x != one:
            x = self.mul(x, A)
            k += 1
        return k

    def inverse(self, A):
        return self.power(A, self.order_of(A) - 1)

    def power(self, A, k):
        out = self.one
        for _ in range(k):
            out = self.mul(out, A)
        return out

    def generators(self):
        """A small generating set: greedily add the first element outside the
        subgroup generated so far."""
        gens = []
        sub = {self.one}
        for g in self.elements:
            if g in sub:
                continue
            gens.append(g)
            sub = self._closure(gens)
            if len(sub) == len(self.elements):
                break
        return gens

    def _closure(self, gens):
        seen = {self.one}
        frontier = [self.one]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.mul(x, g)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return seen

    def conjugacy_classes(self):
        gens = self.generators()
        pairs = [(g, self.inverse(g)) for g in gens]
        parent = list(range(len(self.elements)))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for i, x in enumerate(self.elements):
            for g, gi in pairs:
                j = self.index[self.mul(self.mul(g, x), gi)]
                a, b = find(i), find(j)
                if a != b:
                    parent[max(a, b)] = min(a, b)
        groups = {}
        for i in range(len(self.elements)):
            groups.setdefault(find(i), []).append(self.elements[i])
        return sorted(groups.values(), key=lambda c: c[0])


@dataclass(frozen=True)
class OracleClass:
    rep: tuple
    size: int
    order: int
    char_poly: tuple  # of the stored representative (a lift for PGL)
    eigenvalues: tuple
    eigen_orbit: tuple  # Galois orbit invariant of the eigenvalues
    ratio_orbit: tuple  # Galois orbit invariant of the eigenvalue ratios
    shift_orbit: tuple  # Galois orbit invariant of the eigenvalues up to scalars
    split: bool  # every eigenvalue of the representative lies in F_q


def ratio_orbit(values, q):
    """Canonical form of a multiset of elements of Q/Z up to multiplication by
    powers of q (the Frobenius)."""
    vals = [Fraction(v) % 1 for v in values]
    best = None
    cur = vals
    seen = set()
    while True:
        key = tuple(sorted(cur))
        if key in seen:
            break
        seen.add(key)
        if best is None or key < best:
            best = key
        cur = [(q * v) % 1 for v in cur]
    return best


def shift_orbit(values, q):
    """Canonical form of a multiset of elements of Q/Z up to a common
    translation and multiplication by powers of q."""
    vals = [Fraction(v) % 1 for v in values]
    return min(ratio_orbit([v - c for v in vals], q) for c in vals)


def element_ratios(K, eig):
    return [K.root_of_unity_exponent(K.mul(a, K.inv(b)))
            for i, a in enumerate(eig) for j, b in enumerate(eig) if i != j]


class _Classes:
    def __init__(self, group):
        self.group = group
        G = group
        K = G.K
        self.classes = []
        self.class_index = {}
        q_frob = G.spec.q ** (2 if G.spec.unitary else 1)
        base = G.K.subfield(_factor_prime_power(G.spec.q)[1])
        for cls in G.conjugacy_classes():
            rep = cls[0]
            o = G.order_of(rep)
            if o % G.p == 0:
                continue
            eig = eigenvalues(K, rep, G.n)
            exps = [K.root_of_unity_exponent(x) for x in eig]
            oc = OracleClass(rep, len(cls), o, char_poly(K, rep, G.n), eig,
                             ratio_orbit(exps, q_frob),
                             ratio_orbit(element_ratios(K, eig), q_frob),
                             shift_orbit(exps, q_frob),
                             all(x in base for x in eig))
            for g in cls:
                self.class_index[g] = len(self.classes)
            self.classes.append(oc)


@lru_cache(maxsize=32)
def _group_classes(spec, K=None):
    return _Classes(MatrixGroup(spec, K))


def enumerate_group(spec, K=None):
    return _group_classes(spec, K).group.elements


def semisimple_classes_bruteforce(spec, K=None):
    """OracleClass records for the classes of elements of order prime to p."""
    return _group_classes(spec, K).classes


def class_of(spec, g, K=None):
    """Index into semisimple_classes_bruteforce(spec) of the class of g."""
    data = _group_classes(spec, K)
    return data.class_index[data.group.normalize(tuple(g))]


def semisimple_count(spec):
    return len(semisimple_classes_bruteforce(spec))


def p_prime_element_count(spec):
    G = _group_classes(spec).group
    return sum(1 for g in G.elements if G.order_of(g) % G.p)


# Matching against forms given by root data


def _components(simple, cartan):
    n = len(simple)
    comp = list(range(n))
    for i in range(n):
        for j in range(n):
            if cartan[i][j] and comp[i] != comp[j]:
                old, new = max(comp[i], comp[j]), min(comp[i], comp[j])
                comp = [new if c == old else c for c in comp]
    out = {}
    for i, c in enumerate(comp):
        out.setdefault(c, []).append(i)
    return sorted(out.values())


@dataclass(frozen=True)
class MatrixModel:
    spec: MatrixGroupSpec
    frobenius_power: int  # q_frob: the invariants are orbits under x -> q_frob x
    values: tuple  # vectors of X^* whose pairings with a point give the invariant


def matrix_model(form):
    """The SL/PGL/SU/PU matrix model of a form, or None.

    Handled: every simple factor of type A1 or A2, the twist permuting the
    factors in one cycle (a restriction of scalars), possibly composed with the
    flip of A2 (unitary, single factor only); simply connected or adjoint."""
    from . import exact_linalg as la
    rd = form.datum
    n = rd.rank
    if len(rd.simple) != n or n == 0:
        return None
    C = rd.cartan_matrix()
    comps = _components(rd.simple, C)
    m = len(comps[0])
    if m > 2 or any(len(c) != m for c in comps):
        return None
    if m == 2 and any(C[c[0]][c[1]] != -1 or C[c[1]][c[0]] != -1 for c in comps):
        return None
    tau = form.tau_matrix
    pos = {a: i for i, a in enumerate(rd.simple)}
    perm = [pos[la.matvec(tau, a)] for a in rd.simple]
    comp_of = {i: k for k, c in enumerate(comps) for i in c}
    k, cur = 1, comp_of[perm[comps[0][0]]]
    while cur != 0:
        cur = comp_of[perm[comps[cur][0]]]
        k += 1
    if k != len(comps):
        return None
    # tau^k on the first factor: identity or the A2 flip
    node = comps[0][0]
    for _ in range(k):
        node = perm[node]
    unitary = node != comps[0][0]
    if unitary and k > 1:
        return None
    if abs(la.det(rd.simple_coroots)) == 1:
        family = "SL"
    elif abs(la.det(rd.simple)) == 1:
        family = "PGL"
    else:
        return None
    q_frob = form.q ** (2 if unitary else k)
    first = set(comps[0])
    # weights of the standard representation of the first factor; for PGL
    # these are rational and their pairings are defined up to a common shift
    cor = rd.simple_coroots
    end = comps[0][0]
    target = tuple(1 if i == end else 0 for i in range(n))
    lam = la.solve(tuple(tuple(c) for c in cor), target)
    refl = [rd.reflection_matrix(rd.simple[i]) for i in sorted(first)]
    orbit = {lam}
    frontier = [lam]
    while frontier:
        nxt = []
        for v in frontier:
            for r in refl:
                u = la.matvec(r, v)
                if u not in orbit:
                    orbit.add(u)
                    nxt.append(u)
        frontier = nxt
        values = tuple(sorted(orbit))
    spec = MatrixGroupSpec(family, m + 1, form.q ** (1 if unitary else k), unitary)
    return MatrixModel(spec, q_frob, values)


def form_class_key(form, c, model):
    """Invariant of a rational class of a form, comparable with oracle_class_key."""
    from . import exact_linalg as la
    from .galois_fq import context
    vals = [la.dot(v, c.geometric) for v in model.values]
    if model.spec.family == "SL":
        inv = ratio_orbit(vals, model.frobenius_power)
    else:
        inv = shift_orbit(vals, model.frobenius_power)
    if model.spec.unitary:
        return (inv, None)
    ctx = context(form)
    split_class = ctx.torus_class_of(la.identity(ctx.n))
    split = any(ctx.torus_class_of(w) == split_class for _, w in ctx.class_routes(c))
    return (inv, split)


def oracle_class_key(spec, oc):
    inv = oc.eigen_orbit if spec.family == "SL" else oc.shift_orbit
    return (inv, None if spec.unitary else oc.split)


@dataclass
class Comparison:
    spec: MatrixGroupSpec
    form_count: int
    oracle_count: int
    keys_match: bool  # equal multisets of class invariants
    bijection: dict  # form class index -> oracle class index, when keys are unique

    @property
    def ok(self):
        return self.form_count == self.oracle_count and self.keys_match


def compare_form(form, K=None):
    """Compare rational classes of a form with the oracle; None if no model."""
    from .galois_fq import rational_classes
    model = matrix_model(form)
    if model is None:
        return None
    classes = rational_classes(form)
    ocs = semisimple_classes_bruteforce(model.spec, K)
    fk = [form_class_key(form, c, model) for c in classes]
    ok_ = [oracle_class_key(model.spec, oc) for oc in ocs]
    keys_match = sorted(fk, key=repr) == sorted(ok_, key=repr)
    bij = {}
    if keys_match and len(set(fk)) == len(fk):
        where = {k: i for i, k in enumerate(ok_)}
        bij = {i: where[k] for i, k in enumerate(fk)}
    return Comparison(model.spec, len(classes), len(ocs), keys_match, bij)


def embedding_map(small, big, K):
    """Class map induced by the inclusion small(F_q) -> big(F_q^k) of matrix
    groups of the same family and size, both realised inside K."""
    data = _group_classes(small, K)
    return [class_of(big, oc.rep, K) for oc in data.classes]
