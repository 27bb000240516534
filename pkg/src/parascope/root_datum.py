"""Root data and based root data.

Both lattices are Z^n and the pairing is the dot product, so a root datum is
just a list of roots in X^* = Z^n together with a parallel list of coroots in
X_* = Z^n.  All structure (isogeny type, central torus) is carried by the
vectors themselves.

Built data use node-indexed coordinates: for the simply connected flavor the
basis of X^* is the fundamental weights (so the coroots of the simple roots are
the standard basis of X_*), for the adjoint flavor the basis of X^* is the
simple roots.  Simple roots are listed in Bourbaki order.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as iproduct
import re

from . import exact_linalg as la


class RootDatumError(ValueError):
    pass


@dataclass(frozen=True)
class Factor:
    """Bookkeeping for one factor of a built datum (used by diagram automorphisms)."""

    family: str  # "A".."G", "T" (torus) or "GL"
    rank: int
    flavor: str  # "sc", "ad" or "" for tori / GL
    xoff: int  # first coordinate of the factor in X^*
    xdim: int
    soff: int  # index of the first simple root of the factor
    nodes: int

    @property
    def label(self):
        if self.family == "T":
            return f"T{self.rank}"
        if self.family == "GL":
            return f"GL{self.rank}"
        return f"{self.family}{self.rank} {self.flavor}"


@dataclass(frozen=True)
class RootDatum:
    rank: int
    roots: tuple
    coroots: tuple

    def __post_init__(self):
        if len(self.roots) != len(self.coroots):
            raise RootDatumError("roots and coroots must be parallel lists")

    @property
    def coroot_of(self):
        return dict(zip(self.roots, self.coroots))

    @property
    def root_of(self):
        return dict(zip(self.coroots, self.roots))

    def reflection_matrix(self, alpha):
        """Matrix of s_alpha on X^*: v -> v - <v, alpha_vee> alpha."""
        av = self.coroot_of[alpha]
        n = self.rank
        return tuple(tuple((1 if i == j else 0) - alpha[i] * av[j] for j in range(n))
                     for i in range(n))

    def coreflection_matrix(self, alpha):
        """Matrix of s_alpha on X_*: l -> l - <alpha, l> alpha_vee."""
        av = self.coroot_of[alpha]
        n = self.rank
        return tuple(tuple((1 if i == j else 0) - av[i] * alpha[j] for j in range(n))
                     for i in range(n))

    def semisimple_rank(self):
        return la.rank(self.roots) if self.roots else 0

    def problems(self):
        """List every violated root datum axiom (empty when valid)."""
        out = []
        roots = set(self.roots)
        if len(roots) != len(self.roots):
            out.append("duplicate roots")
        if len(set(self.coroots)) != len(self.coroots):
            out.append("duplicate coroots")
        cor = self.coroot_of
        for a, av in zip(self.roots, self.coroots):
            if len(a) != self.rank or len(av) != self.rank:
                out.append(f"root {a} has wrong length")
                continue
            if la.dot(a, av) != 2:
                out.append(f"<{a}, {av}> = {la.dot(a, av)} != 2")
            neg = la.vscale(-1, a)
            if neg not in roots:
                out.append(f"-{a} is not a root")
            elif cor[neg] != la.vscale(-1, av):
                out.append(f"coroot of -{a} is not -{av}")
            if la.vscale(2, a) in roots:
                out.append(f"non-reduced: 2*{a} is a root")
        if out:
            return out
        for a, av in zip(self.roots, self.coroots):
            for b, bv in zip(self.roots, self.coroots):
                sb = la.vsub(b, la.vscale(la.dot(b, av), a))
                sbv = la.vsub(bv, la.vscale(la.dot(a, bv), av))
                if sb not in roots:
                    out.append(f"s_{a} does not permute the roots")
                    return out
                if cor[sb] != sbv:
                    out.append(f"s_{a} does not permute the coroots compatibly")
                    return out
        return out

    def validate(self):
        probs = self.problems()
        if probs:
            raise RootDatumError("; ".join(probs[:5]))
        return self


@dataclass(frozen=True)
class BasedRootDatum(RootDatum):
    simple: tuple = ()
    positive: tuple = ()
    factors: tuple = field(default=(), compare=False)

    @property
    def simple_coroots(self):
        cor = self.coroot_of
        return tuple(cor[a] for a in self.simple)

    def cartan_matrix(self):
        """C[i][j] = <alpha_i, alpha_j^vee>."""
        sc = self.simple_coroots
        return tuple(tuple(la.dot(a, bv) for bv in sc) for a in self.simple)

    def problems(self):
        out = RootDatum.problems(self)
        if out:
            return out
        if self.simple and la.rank(self.simple) != len(self.simple):
            out.append("simple roots are linearly dependent")
        pos = set(self.positive)
        for a in self.roots:
            if (a in pos) == (la.vscale(-1, a) in pos):
                out.append(f"exactly one of +-{a} must be positive")
                break
        for a in self.positive:
            c = la.solve(la.transpose(self.simple), a) if self.simple else None
            if c is None or any(x < 0 or x.denominator != 1 for x in c):
                out.append(f"positive root {a} is not a nonnegative integer combination of simple roots")
                break
        return out


def positive_system(roots, functional):
    return tuple(a for a in roots if la.dot(a, functional) > 0)


def simple_roots_of(positive):
    pos = set(positive)
    return tuple(a for a in positive
                 if not any(la.vsub(a, b) in pos for b in positive if b != a))


def regular_functional(roots, n):
    """Lexicographically smallest integer functional of minimal max-norm that is
    nonzero on every root."""
    if not roots:
        return (0,) * n
    for m in range(1, 64):
        for f in iproduct(range(-m, m + 1), repeat=n):
            if max(abs(x) for x in f) != m:
                continue
            if all(la.dot(a, f) != 0 for a in roots):
                return f
    raise RootDatumError("no regular functional found")


def based(rd, functional=None, factors=()):
    if functional is None:
        functional = regular_functional(rd.roots, rd.rank)
    pos = positive_system(rd.roots, functional)
    simple = simple_roots_of(pos)
    return BasedRootDatum(rd.rank, rd.roots, rd.coroots, simple=simple,
                          positive=pos, factors=factors)


def reflection_closure(simple, simple_coroots):
    """All (root, coroot) pairs generated from simple pairs by simple reflections."""
    pairs = list(zip(simple, simple_coroots))
    seen = dict(pairs)
    frontier = list(pairs)
    while frontier:
        nxt = []
        for b, bv in frontier:
            for a, av in zip(simple, simple_coroots):
                sb = la.vsub(b, la.vscale(la.dot(b, av), a))
                if sb not in seen:
                    seen[sb] = la.vsub(bv, la.vscale(la.dot(a, bv), av))
                    nxt.append((sb, seen[sb]))
        frontier = nxt
    return seen


# Cartan matrices with C[i][j] = <alpha_i, alpha_j^vee>, Bourbaki node order.

def cartan_matrix(family, n):
    C = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(i, j):
        C[i][j] = C[j][i] = -1

    if family == "A":
        for i in range(n - 1):
            link(i, i + 1)
    elif family in ("B", "C"):
        for i in range(n - 2):
            link(i, i + 1)
        # B: last node short; C: last node long
        if family == "B":
            C[n - 2][n - 1], C[n - 1][n - 2] = -2, -1
        else:
            C[n - 2][n - 1], C[n - 1][n - 2] = -1, -2
    elif family == "D":
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 3, n - 1)
    elif family == "E":
        # nodes 1..n Bourbaki: 1-3-4-5-6(-7-8), 2-4
        link(0, 2)
        link(1, 3)
        for i in range(2, n - 1):
            link(i, i + 1)
    elif family == "F":
        link(0, 1)
        link(2, 3)
        C[1][2], C[2][1] = -2, -1
    elif family == "G":
        C[0][1], C[1][0] = -1, -3
    return tuple(tuple(r) for r in C)


_VALID = {"A": (1, None), "B": (2, None), "C": (2, None), "D": (3, None),
          "E": (6, 8), "F": (4, 4), "G": (2, 2)}

_ALIASES = {
    "SL": ("A", "sc"),
    "PGL": ("A", "ad"),
}


def _simple_factor(family, n, flavor):
    lo, hi = _VALID[family]
    if n < lo or (hi is not None and n > hi):
        raise RootDatumError(f"invalid rank {n} for family {family}")
    C = cartan_matrix(family, n)
    I = la.identity(n)
    if flavor == "sc":
        simple = tuple(C[i] for i in range(n))
        simple_co = tuple(I[i] for i in range(n))
    elif flavor == "ad":
        simple = tuple(I[i] for i in range(n))
        simple_co = tuple(tuple(C[i][j] for i in range(n)) for j in range(n))
    else:
        raise RootDatumError(f"unknown isogeny flavor {flavor!r}")
    return n, simple, simple_co


def _gl_factor(n):
    simple = []
    for i in range(n - 1):
        v = [0] * n
        v[i], v[i + 1] = 1, -1
        simple.append(tuple(v))
    return n, tuple(simple), tuple(simple)


def _parse_one(token):
    token = token.strip()
    m = re.fullmatch(r"([A-G])\s*(\d+)\s*(sc|ad)?", token)
    if m:
        return m.group(1), int(m.group(2)), m.group(3) or "sc"
    m = re.fullmatch(r"T\s*(\d+)", token)
    if m:
        return "T", int(m.group(1)), ""
    m = re.fullmatch(r"(SL|PGL|GL)\s*(\d+)", token)
    if m:
        kind, d = m.group(1), int(m.group(2))
        if kind == "GL":
            return "GL", d, ""
        fam, fl = _ALIASES[kind]
        return fam, d - 1, fl
    raise RootDatumError(f"unknown datum spec {token!r}")


def build(spec):
    """Build a based root datum from a spec string such as "A2 sc",
    "A1 sc x A1 sc", "GL2", "T1" or "D4 ad".  A list of spec strings is read as
    a product."""
    if isinstance(spec, (list, tuple)):
        tokens = list(spec)
    else:
        tokens = re.split(r"\s*[x×*]\s*", spec.strip())
    parts = []
    for tok in tokens:
        if not tok:
            raise RootDatumError(f"unknown datum spec {spec!r}")
        fam, n, fl = _parse_one(tok)
        if fam == "T":
            parts.append((fam, n, fl, n, (), ()))
        elif fam == "GL":
            if n < 1:
                raise RootDatumError("GL needs dimension >= 1")
            dim, s, sc = _gl_factor(n)
            parts.append((fam, n, fl, dim, s, sc))
        else:
            dim, s, sc = _simple_factor(fam, n, fl)
            parts.append((fam, n, fl, dim, s, sc))
    total = sum(p[3] for p in parts)
    simple, simple_co, factors = [], [], []
    off = 0
    for fam, n, fl, dim, s, sc in parts:
        pad = lambda v: (0,) * off + tuple(v) + (0,) * (total - off - dim)
        factors.append(Factor(fam, n, fl, off, dim, len(simple), len(s)))
        simple.extend(pad(v) for v in s)
        simple_co.extend(pad(v) for v in sc)
        off += dim
    pairs = reflection_closure(simple, simple_co)
    roots = tuple(sorted(pairs))
    coroots = tuple(pairs[a] for a in roots)
    # positive system: nonnegative combinations of the given simple roots
    pos = []
    for a in roots:
        c = la.solve(la.transpose(simple), a)
        if all(x >= 0 for x in c):
            pos.append(a)
    brd = BasedRootDatum(total, roots, coroots, simple=tuple(simple),
                         positive=tuple(pos), factors=tuple(factors))
    return brd.validate()


def dual(rd):
    """Swap characters and cocharacters (roots and coroots)."""
    if isinstance(rd, BasedRootDatum):
        cor = rd.coroot_of
        return BasedRootDatum(rd.rank, rd.coroots, rd.roots,
                              simple=tuple(cor[a] for a in rd.simple),
                              positive=tuple(cor[a] for a in rd.positive),
                              factors=tuple(_dual_factor(f) for f in rd.factors))
    return RootDatum(rd.rank, rd.coroots, rd.roots)


_DUAL_FAMILY = {"B": "C", "C": "B"}


def _dual_factor(f):
    flavor = {"sc": "ad", "ad": "sc"}.get(f.flavor, f.flavor)
    return Factor(_DUAL_FAMILY.get(f.family, f.family), f.rank, flavor,
                  f.xoff, f.xdim, f.soff, f.nodes)


# Classification


@dataclass(frozen=True)
class CartanType:
    components: tuple  # sorted tuple of (family, rank)
    torus_rank: int = 0

    def __str__(self):
        parts = [f"{f}{r}" for f, r in self.components]
        s = "+".join(parts) if parts else "T0"
        if self.torus_rank and parts:
            s += f"+T{self.torus_rank}"
        elif self.torus_rank:
            s = f"T{self.torus_rank}"
        return s

    def dual(self):
        comps = tuple(sorted((_DUAL_FAMILY.get(f, f), r) for f, r in self.components))
        return CartanType(comps, self.torus_rank)


_WEYL_ORDER = {"G": {2: 12}, "F": {4: 1152}, "E": {6: 51840, 7: 2903040, 8: 696729600}}


def classical_weyl_order(family, n):
    from math import factorial
    if family == "A":
        return factorial(n + 1)
    if family in ("B", "C"):
        return 2 ** n * factorial(n)
    if family == "D":
        return 2 ** (n - 1) * factorial(n)
    return _WEYL_ORDER[family][n]


def _components(C):
    n = len(C)
    seen, comps = set(), []
    for s in range(n):
        if s in seen:
            continue
        stack, comp = [s], []
        seen.add(s)
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in range(n):
                if j != i and C[i][j] != 0 and j not in seen:
                    seen.add(j)
                    stack.append(j)
        comps.append(sorted(comp))
    return comps


def _identify(rd, simple, idx, C):
    n = len(idx)
    sub = [[C[i][j] for j in idx] for i in idx]
    bonds = {}
    for a in range(n):
        for b in range(a + 1, n):
            if sub[a][b] != 0:
                bonds[(a, b)] = sub[a][b] * sub[b][a]
    if n == 1:
        return ("A", 1)
    mult = max(bonds.values())
    deg = [sum(1 for (a, b) in bonds if x in (a, b)) for x in range(n)]
    if mult == 3:
        return ("G", 2)
    if mult == 2:
        if n == 4:
            (a, b), = [k for k, v in bonds.items() if v == 2]
            if deg[a] == 2 and deg[b] == 2:
                return ("F", 4)
        # count short simple roots: alpha_i is shorter than alpha_j when C[i][j] == -1 and C[j][i] == -2
        (a, b), = [k for k, v in bonds.items() if v == 2]
        short = a if sub[b][a] == -2 else b
        if n == 2:
            return (_b2_or_c2(rd, [simple[i] for i in idx], short, sub), 2)
        # B_n has exactly one short simple root, at an end of the chain
        return ("B", n) if deg[short] == 1 else ("C", n)
    if max(deg) <= 2:
        return ("A", n)
    branch = deg.index(3)
    # arm lengths from the branch node
    arms = []
    for nb in [j for j in range(n) if (min(branch, j), max(branch, j)) in bonds]:
        length, prev, cur = 1, branch, nb
        while True:
            nxt = [j for j in range(n) if j != prev and (min(cur, j), max(cur, j)) in bonds]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    arms.sort()
    if arms[0] == 1 and arms[1] == 1:
        return ("D", n)
    if arms[:2] == [1, 2]:
        return ("E", n)
    raise RootDatumError(f"unrecognized Dynkin diagram with arms {arms}")


def _b2_or_c2(rd, simple, short_idx, sub):
    """B2 and C2 share a root system; tell them apart by the datum.

    C2 when half a long root is a character of the derived coroot lattice
    (Sp4-like), B2 otherwise (SO5-like).
    """
    long_idx = 1 - short_idx
    cor = rd.coroot_of
    corts = [cor[a] for a in simple]
    # weights of X^* restricted to the coroot lattice, in fundamental-weight coordinates
    restricted = la.hnf_rows(tuple(tuple(row[k] for k in range(len(corts)))
                                   for row in (tuple(la.dot(e, cv) for cv in corts)
                                               for e in la.identity(rd.rank))))
    half = tuple(Fraction(sub[long_idx][j], 2) for j in range(2))
    return "C" if la.in_lattice(half, restricted) else "B"


def classify(rd):
    """Cartan type of a root datum (any base; chosen by the regular-functional rule)."""
    probs = RootDatum.problems(rd)
    if probs:
        raise RootDatumError("; ".join(probs[:5]))
    if isinstance(rd, BasedRootDatum) and rd.simple:
        simple = rd.simple
    else:
        simple = based(rd).simple
    ss_rank = la.rank(simple) if simple else 0
    if not simple:
        return CartanType((), rd.rank)
    cor = rd.coroot_of
    C = [[la.dot(a, cor[b]) for b in simple] for a in simple]
    comps = tuple(sorted(_identify(rd, simple, idx, C) for idx in _components(C)))
    return CartanType(comps, rd.rank - ss_rank)
