"""Quasisplit groups over F_q as twisted root data.

A form is (based datum, q, tau) with tau a diagram automorphism on X^*.  Torus
points and Weyl elements are handled on the cocharacter side: Weyl elements as
matrices on X_*, points as vectors in X_* (x) Q/Z.  On the torus indexed by w
the Frobenius acts on X_* as q * w * tau (tau through its contragredient).

Semisimple classes are labelled by
  geometric label: lex-min point of the W-orbit (entries in [0, 1)),
  rational label:  the tau-twisted class in A(s) = W_s / W_s^0 of the Frobenius
                   cocycle, written as the lex-min coset representative.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd

import numpy as np

from . import exact_linalg as la
from .root_datum import BasedRootDatum, dual
from .weyl import DEFAULT_CAP, closure, twisted_classes


class FormError(ValueError):
    pass


def prime_power(q):
    """Return (p, e) with q = p**e, or raise."""
    if q < 2:
        raise FormError(f"q = {q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    e, m = 0, q
    while m % p == 0:
        m //= p
        e += 1
    if m != 1:
        raise FormError(f"q = {q} is not a prime power")
    return p, e


@dataclass(frozen=True)
class FqForm:
    datum: BasedRootDatum
    q: int
    tau: tuple = None  # on X^*; None means split

    def __post_init__(self):
        prime_power(self.q)
        if self.tau is not None:
            t = la.as_matrix(self.tau)
            object.__setattr__(self, "tau", t)
            if sorted(la.matvec(t, a) for a in self.datum.simple) != sorted(self.datum.simple):
                raise FormError("twist must permute the simple roots")

    @property
    def p(self):
        return prime_power(self.q)[0]

    @property
    def tau_matrix(self):
        return self.tau if self.tau is not None else la.identity(self.datum.rank)


@dataclass(frozen=True)
class TorusClass:
    rep: tuple  # lex-min cocharacter matrix of w in its twisted class
    index: int
    size: int


@dataclass(frozen=True)
class TorusPoint:
    s: tuple
    torus: tuple  # cocharacter matrix w


@dataclass(frozen=True)
class SemisimpleClassFq:
    geometric: tuple  # lex-min point of the W-orbit
    a_label: tuple  # lex-min coset representative of the twisted class in A(s)
    point: tuple = field(compare=False)
    torus: tuple = field(compare=False)

    @property
    def key(self):
        return (self.geometric, self.a_label)


def fmt_point(s):
    return [str(x) for x in s]


def _lex_positive(v):
    for x in v:
        if x:
            return x > 0
    return False


class ComponentGroup:
    """A(s) = W_s / W_s^0 with its twisted classes.

    W_s^0 is generated by the reflections in roots integral on s.  A coset of
    W_s^0 is represented by its unique element sending the positive integral
    coroots (positive: lexicographically) to positive ones."""

    def __init__(self, s, stabilizer, reflections, simple, coset_reps, y, classes, class_of):
        self.s = s
        self.stabilizer = stabilizer  # W_s
        self.reflections = reflections  # generators of W_s^0
        self.simple = simple  # (simple integral coroot, its reflection)
        self.coset_reps = coset_reps  # sorted
        self.y = y  # lex-min return element: y (q tau s) = s
        self.classes = classes  # twisted classes of A, each a sorted list of coset reps
        self.class_of = class_of  # coset rep -> canonical rep of its twisted class
        self._w0 = None

    @property
    def order(self):
        return len(self.coset_reps)

    @property
    def identity_component(self):
        if self._w0 is None:
            n = len(self.s)
            self._w0 = (closure(self.reflections, n=n) if self.reflections
                        else [la.identity(n)])
        return self._w0

    def coset_of(self, a):
        """Representative of a W_s^0, by descent along simple reflections."""
        a = la.as_matrix(a)
        while True:
            for beta, r in self.simple:
                if not _lex_positive(la.matvec(a, beta)):
                    a = la.matmul(a, r)
                    break
            else:
                return a


def _scaled(s):
    """(N s as a tuple of ints, N) for the least common denominator N."""
    N = 1
    for x in s:
        N = N * x.denominator // gcd(N, x.denominator)
    return tuple(int(x * N) for x in s), N


def _apply(M, v, N):
    return tuple(sum(a * b for a, b in zip(row, v)) % N for row in M)


# W-scans run on an int64 array; exact while |entries| * N * n stays far
# below 2^63.
_NUMPY_N = 1 << 40


@lru_cache(maxsize=32)
def _weyl_data(rd, tau, cap):
    """Generators and elements of W on X_*, and a memoised twisted-class
    partition; shared by all q for the same datum and twist."""
    dd = dual(rd)
    gens = [dd.reflection_matrix(a) for a in dd.simple]
    W = closure(gens, cap=cap, n=rd.rank)
    memo = []

    def classes():
        if not memo:
            memo.append(twisted_classes(W, tau, gens))
        return memo[0]

    return gens, W, classes


class FiniteGroupContext:
    """Cached Weyl data and class machinery for one form."""

    def __init__(self, form, cap=DEFAULT_CAP):
        self.form = form
        rd = form.datum
        self.n = rd.rank
        self.tau = la.contragredient(form.tau_matrix)
        self.tau_inv = la.int_inverse(self.tau)
        self.gens, self.W, self._classes = _weyl_data(rd, self.tau, cap)
        self.q = form.q
        self.roots = rd.roots
        self.cor = rd.coroot_of
        self._cg = {}
        self._canon = {}
        self._tori = None
        self._inv = {}
        self._warr = np.array(self.W, dtype=np.int64).reshape(len(self.W), self.n, self.n)

    def images(self, v, N):
        """Rows x v mod N for every x in W, in W order (an int array), or None
        when N is too large for int64 arithmetic."""
        if N > _NUMPY_N:
            return None
        return (self._warr @ np.array(v, dtype=np.int64)) % N

    def matching(self, v, target, N):
        """Indices (in W order) of the x in W with x v = target mod N."""
        imgs = self.images(v, N)
        if imgs is None:
            return [i for i, w in enumerate(self.W) if _apply(w, v, N) == tuple(target)]
        return np.nonzero((imgs == np.array(target, dtype=np.int64)).all(axis=1))[0].tolist()

    def inv(self, w):
        hit = self._inv.get(w)
        if hit is None:
            hit = self._inv[w] = la.int_inverse(w)
        return hit

    # points

    def act(self, M, s):
        v, N = _scaled(s)
        return tuple(Fraction(x, N) for x in _apply(M, v, N))

    def frob(self, w, s):
        """Frobenius of the torus indexed by w applied to s."""
        return self.act(la.matmul(w, self.tau), la.vscale(self.q, s))

    def canonical(self, s):
        """(lex-min point of the W-orbit of s, first x in W order with x s = it)."""
        s = tuple(s)
        hit = self._canon.get(s)
        if hit is not None:
            return hit
        v, N = _scaled(s)
        imgs = self.images(v, N)
        if imgs is not None:
            i = int(np.lexsort(imgs.T[::-1])[0])
            best, arg = tuple(int(x) for x in imgs[i]), self.W[i]
        else:
            best, arg = None, None
            for w in self.W:
                u = _apply(w, v, N)
                if best is None or u < best:
                    best, arg = u, w
        res = (tuple(Fraction(x, N) for x in best), arg)
        self._canon[s] = res
        return res

    def torus_classes(self):
        if self._tori is None:
            classes = self._classes()
            self._tori = [TorusClass(c[0], i, len(c)) for i, c in enumerate(classes)]
            self._torus_of = {w: self._tori[i] for i, c in enumerate(classes) for w in c}
        return self._tori

    def torus_class_of(self, w):
        self.torus_classes()
        return self._torus_of[la.as_matrix(w)]

    def frobenius_matrix(self, w):
        return la.scale(self.q, la.matmul(w, self.tau))

    def torus_points(self, w):
        F = self.frobenius_matrix(w)
        A = la.matsub(F, la.identity(self.n))
        return la.kernel_mod_lattice(A)

    def geometric_classes(self):
        labels = set()
        for t in self.torus_classes():
            for s in self.torus_points(t.rep):
                labels.add(self.canonical(s)[0])
        return sorted(labels)

    # centralizers

    def component_group(self, s):
        s = tuple(s)
        if s in self._cg:
            return self._cg[s]
        v, N = _scaled(s)
        idx = self.matching(v, v, N)
        W_s = [self.W[i] for i in idx]
        refl = {}
        for a in self.roots:
            if la.dot(a, v) % N == 0:
                refl[self.cor[a]] = la.matsub(la.identity(self.n), tuple(
                    tuple(self.cor[a][i] * a[j] for j in range(self.n)) for i in range(self.n)))
        pos = {b for b in refl if _lex_positive(b)}
        simple = sorted((b, refl[b]) for b in pos
                        if not any(la.vsub(b, c) in pos for c in pos if c != b))
        reps = sorted(self._positive_preserving(idx, [b for b, _ in simple]))
        qts = _apply(self.tau, [self.q * x for x in v], N)
        y = self.W[self.matching(qts, v, N)[0]]
        y_inv = self.inv(y)

        def F(b):  # induced Frobenius on W_s
            return la.matmul(la.matmul(la.matmul(la.matmul(y, self.tau), b), self.tau_inv), y_inv)

        cg = ComponentGroup(s, W_s, list(refl.values()), simple, reps, y, None, None)
        parent = {r: r for r in reps}

        def find(r):
            while parent[r] != r:
                parent[r] = parent[parent[r]]
                r = parent[r]
            return r

        for a in reps:
            for b in reps:
                c = cg.coset_of(la.matmul(la.matmul(b, a), self.inv(F(b))))
                x, z = find(a), find(c)
                if x != z:
                    parent[max(x, z)] = min(x, z)
        groups = {}
        for r in reps:
            groups.setdefault(find(r), []).append(r)
        classes = sorted((sorted(g) for g in groups.values()), key=lambda g: g[0])
        cg.classes = classes
        cg.class_of = {r: g[0] for g in classes for r in g}
        self._cg[s] = cg
        return cg

    def _positive_preserving(self, idx, simple):
        """The W[i], i in idx, sending every vector of simple to a
        lexicographically positive vector."""
        if not simple:
            return [self.W[i] for i in idx]
        imgs = self._warr[idx] @ np.array(simple, dtype=np.int64).T  # (m, n, k)
        first = (imgs != 0).argmax(axis=1)
        lead = np.take_along_axis(imgs, first[:, None, :], axis=1)[:, 0, :]
        keep = (lead > 0).all(axis=1)
        return [self.W[idx[j]] for j in np.nonzero(keep)[0].tolist()]

    def label(self, s, w):
        """Rational class label of the point s rational on the torus w."""
        s = tuple(s)
        if self.frob(w, s) != s:
            raise FormError(f"point {fmt_point(s)} is not rational on the given torus")
        s0, x = self.canonical(s)
        cg = self.component_group(s0)
        c = la.matmul(la.matmul(la.matmul(x, w), self.tau),
                      la.matmul(self.inv(x), self.tau_inv))
        a = la.matmul(c, self.inv(cg.y))
        if self.act(a, s0) != s0:
            raise FormError("cocycle does not land in the stabilizer (internal error)")
        return SemisimpleClassFq(s0, cg.class_of[cg.coset_of(a)], s, w)

    def rational_classes(self):
        out = []
        for s0 in self.geometric_classes():
            cg = self.component_group(s0)
            for cls in cg.classes:
                a = cls[0]
                w = la.matmul(a, cg.y)
                out.append(SemisimpleClassFq(s0, a, s0, w))
        return out

    def class_routes(self, c, base_only=False):
        """Every (point, torus) pair representing the rational class c; with
        base_only, those whose point is the canonical point of c."""
        routes = []
        v0, N = _scaled(c.geometric)
        if base_only:
            orbit = [v0]
        else:
            imgs = self.images(v0, N)
            if imgs is None:
                orbit = sorted({_apply(x, v0, N) for x in self.W})
            else:
                orbit = sorted({tuple(int(a) for a in r) for r in imgs})
        for v in orbit:
            s = tuple(Fraction(x, N) for x in v)
            qts = _apply(self.tau, [self.q * x for x in v], N)
            for i in self.matching(qts, v, N):
                w = self.W[i]
                if self.label(s, w).key == c.key:
                    routes.append((s, w))
        return routes


@lru_cache(maxsize=64)
def context(form):
    return FiniteGroupContext(form)


def torus_classes(form):
    return context(form).torus_classes()


def torus_points(t, form):
    w = t.rep if isinstance(t, TorusClass) else la.as_matrix(t)
    return [TorusPoint(s, w) for s in context(form).torus_points(w)]


def geometric_classes(form):
    return context(form).geometric_classes()


def component_group(form, s):
    """A(s) for s given by a point; computed at the canonical point of its orbit."""
    s = s.s if isinstance(s, TorusPoint) else tuple(Fraction(x) for x in s)
    ctx = context(form)
    return ctx.component_group(ctx.canonical(s)[0])


def rational_classes(form):
    return context(form).rational_classes()


def label_point(form, s, w):
    return context(form).label(tuple(Fraction(x) for x in s), la.as_matrix(w))
