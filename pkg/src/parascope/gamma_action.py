"""Finite-group actions on a based root datum.

An action is a finite group of lattice automorphisms of X^*(T~) preserving the
roots and the chosen positive system.  On X_*(T~) the same group acts through
the contragredient matrices, so the pairing is invariant.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from . import exact_linalg as la
from .root_datum import BasedRootDatum, RootDatumError
from .weyl import closure

GAMMA_CAP = 1000


class ActionError(ValueError):
    pass


@dataclass
class Report:
    """Outcome of a validation: a list of named checks with pass/fail."""

    checks: list = field(default_factory=list)

    def add(self, name, ok, detail=""):
        self.checks.append((name, bool(ok), detail))

    @property
    def ok(self):
        return all(c[1] for c in self.checks)

    @property
    def failures(self):
        return [c for c in self.checks if not c[1]]

    def as_dict(self):
        return {"ok": self.ok,
                "checks": [{"name": n, "ok": o, "detail": d} for n, o, d in self.checks]}


@dataclass(frozen=True)
class GammaAction:
    datum: BasedRootDatum
    generators: tuple
    tau: tuple = None  # Frobenius twist on X^*(T~), if any

    @property
    def elements(self):
        return _elements(self.generators, self.datum.rank)

    @property
    def order(self):
        return len(self.elements)

    @property
    def cochar_elements(self):
        return [la.contragredient(g) for g in self.elements]


_ELEMENT_CACHE = {}


def _elements(gens, n):
    key = (gens, n)
    if key not in _ELEMENT_CACHE:
        _ELEMENT_CACHE[key] = closure(gens, cap=GAMMA_CAP, n=n) if gens else [la.identity(n)]
    return _ELEMENT_CACHE[key]


def make_action(datum, generators=(), tau=None):
    gens = tuple(la.as_matrix(g) for g in generators)
    return GammaAction(datum, gens, la.as_matrix(tau) if tau is not None else None)


def validate_action(a):
    rd = a.datum
    rep = Report()
    roots = set(rd.roots)
    pos = set(rd.positive)
    n = rd.rank
    for k, g in enumerate(a.generators):
        shape_ok = len(g) == n and all(len(r) == n for r in g)
        rep.add(f"generator {k}: square of size {n}", shape_ok)
        if not shape_ok:
            continue
        unimod = abs(la.det(g)) == 1
        rep.add(f"generator {k}: invertible over Z", unimod)
        if not unimod:
            continue
        rep.add(f"generator {k}: permutes the roots",
                all(la.matvec(g, r) in roots for r in rd.roots))
        rep.add(f"generator {k}: preserves the positive system",
                all(la.matvec(g, r) in pos for r in rd.positive))
        gv = la.contragredient(g)
        cor = rd.coroot_of
        rep.add(f"generator {k}: compatible with coroots",
                all(la.matvec(g, r) in cor and cor[la.matvec(g, r)] == la.matvec(gv, cor[r])
                    for r in rd.roots))
    if not rep.ok:
        return rep
    try:
        els = a.elements
        rep.add("group closure within cap", True, f"|Gamma| = {len(els)}")
    except Exception as exc:  # cap exceeded
        rep.add("group closure within cap", False, str(exc))
        return rep
    if a.tau is not None:
        t = a.tau
        rep.add("twist permutes the roots and positive system",
                abs(la.det(t)) == 1 and all(la.matvec(t, r) in pos for r in rd.positive))
        rep.add("action commutes with the twist",
                all(la.matmul(t, g) == la.matmul(g, t) for g in a.generators))
    return rep


# Orbits


@dataclass(frozen=True)
class RootOrbit:
    roots: tuple
    case: int  # 1: mutually orthogonal, 2: not
    psi: tuple
    stabilizer_order: int

    @property
    def size(self):
        return len(self.roots)


def orbit_of(a, root):
    return tuple(sorted({la.matvec(g, root) for g in a.elements}))


def _orbit_data(a, orbit):
    rd = a.datum
    cor = rd.coroot_of
    roots = set(rd.roots)
    orth = all(la.dot(t, cor[u]) == 0 for t in orbit for u in orbit if t != u)
    stab = a.order // len(orbit)
    if orth:
        return RootOrbit(orbit, 1, orbit, stab)
    psi = set()
    for t in orbit:
        partners = [u for u in orbit if u != t and la.dot(t, cor[u]) != 0]
        if len(partners) != 1:
            raise ActionError(f"orbit {orbit}: root {t} has {len(partners)} non-orthogonal partners")
        s = la.vadd(t, partners[0])
        if s not in roots:
            raise ActionError(f"orbit {orbit}: {t} + {partners[0]} is not a root")
        psi.add(s)
    return RootOrbit(orbit, 2, tuple(sorted(psi)), stab)


def root_orbits(a):
    """Gamma-orbits on the roots, with their orthogonality case and Psi."""
    seen = set()
    out = []
    for r in a.datum.roots:
        if r in seen:
            continue
        orb = orbit_of(a, r)
        seen.update(orb)
        out.append(_orbit_data(a, orb))
    return out


def has_case2(a):
    return any(o.case == 2 for o in root_orbits(a))


def multiple_coefficient(a, o):
    """|Psi| / |orbit|, after checking the coroot identity exactly.

    The identity checked: sum of beta^vee over Psi is Gamma-fixed and pairs to
    2|Psi|/|orbit| with the Gamma-average of the orbit (the restricted root
    viewed inside V^*(T~)^Gamma).
    """
    rd = a.datum
    cor = rd.coroot_of
    c = Fraction(len(o.psi), len(o.roots))
    s = (0,) * rd.rank
    for b in o.psi:
        s = la.vadd(s, cor[b])
    for gv in a.cochar_elements:
        if la.matvec(gv, s) != s:
            raise ActionError("sum of Psi coroots is not Gamma-fixed")
    avg = tuple(Fraction(sum(t[i] for t in o.roots), len(o.roots)) for i in range(rd.rank))
    if la.dot(avg, s) != 2 * c:
        raise ActionError(f"coroot identity fails on orbit {o.roots}")
    return c


def integrality_constants(a, o):
    """|Psi| |Stab(beta)| / |orbit| for each beta in Psi, as Fractions."""
    out = []
    for b in o.psi:
        stab = sum(1 for g in a.elements if la.matvec(g, b) == b)
        out.append(Fraction(len(o.psi) * stab, len(o.roots)))
    return out


# Fixed-point root datum


def fixed_cocharacters(a):
    """Basis (rows) of X_*(T~)^Gamma."""
    n = a.datum.rank
    rows = []
    for gv in a.cochar_elements:
        rows.extend(la.matsub(gv, la.identity(n)))
    if not rows:
        return la.identity(n)
    return la.hnf_rows(la.integer_kernel(rows, n))


@dataclass(frozen=True)
class FixedDatum:
    datum: BasedRootDatum  # root datum of G on X^*(T) = Z^r
    i_star: tuple  # r x n integer matrix X^*(T~) -> X^*(T)
    i_lower: tuple  # n x r integer matrix X_*(T) -> X_*(T~)
    orbit_for_root: dict  # G-root -> RootOrbit it came from


def coroot_from_orbit(a, o):
    """Image in X_*(T~) of the coroot of the restricted root: sum over the orbit
    in case 1, twice the sum over Psi in case 2."""
    cor = a.datum.coroot_of
    s = (0,) * a.datum.rank
    if o.case == 1:
        for t in o.roots:
            s = la.vadd(s, cor[t])
        return s
    for b in o.psi:
        s = la.vadd(s, cor[b])
    return la.vscale(2, s)


def fixed_root_datum(a):
    """Root datum of the connected fixed-point group, with i^* and i_*."""
    rd = a.datum
    basis = fixed_cocharacters(a)
    r = len(basis)
    i_lower = la.transpose(basis) if r else tuple(() for _ in range(rd.rank))
    i_star = basis
    orbits = root_orbits(a)
    restricted = {}
    for o in orbits:
        for t in o.roots:
            c = la.matvec(i_star, t)
            if not any(c):
                raise ActionError(f"root {t} restricts to zero")
            restricted.setdefault(c, [])
            if o not in restricted[c]:
                restricted[c].append(o)
    keep = {}
    for c, orbs in restricted.items():
        half = tuple(Fraction(x, 2) for x in c)
        if all(h.denominator == 1 for h in half) and tuple(int(h) for h in half) in restricted:
            continue  # keep only the indivisible restriction
        cvs = set()
        for o in orbs:
            v = coroot_from_orbit(a, o)
            y = la.solve(i_lower, v)
            y = la.as_int_vector(y) if y is not None else None
            if y is None:
                raise ActionError(f"coroot for {c} is not in X_*(T~)^Gamma")
            cvs.add(y)
        if len(cvs) != 1:
            raise ActionError(f"restricted root {c} has inconsistent coroots {cvs}")
        keep[c] = (cvs.pop(), orbs[0])
    roots = tuple(sorted(keep))
    coroots = tuple(keep[c][0] for c in roots)
    pos = tuple(c for c in roots if any(la.matvec(i_star, p) == c for p in rd.positive))
    from .root_datum import simple_roots_of
    g = BasedRootDatum(r, roots, coroots, simple=simple_roots_of(pos), positive=pos)
    try:
        g.validate()
    except RootDatumError as exc:
        raise ActionError(f"fixed datum is not a root datum: {exc}") from exc
    return FixedDatum(g, i_star, i_lower, {c: keep[c][1] for c in roots})


# Norm maps


@dataclass(frozen=True)
class NormMaps:
    order: int
    j_star: tuple  # n x r
    pi: tuple  # r x n, V_*(T~) -> V_*(T)
    iota: tuple  # n x r, V^*(T) -> V^*(T~)
    i_upper: tuple  # r x n, V^*(T~) -> V^*(T)   (i^*)
    i_lower: tuple  # n x r, V_*(T) -> V_*(T~)   (i_*)
    norm_lower: tuple  # r x n, N_*
    norm_upper: tuple  # n x r, N^*
    avg_upper: tuple  # n x n, Gamma-average on V^*(T~)


def _frac(A):
    return tuple(tuple(Fraction(x) for x in r) for r in A)


def average_cochar(a):
    n = a.datum.rank
    els = a.cochar_elements
    total = la.zeros(n, n)
    for g in els:
        total = la.matadd(total, g)
    return la.scale(Fraction(1, len(els)), total)


def fixed_subspace_dim(a):
    return len(fixed_cocharacters(a))


def norm_maps(a, j_star):
    """pi, iota, i^*, i_*, N_*, N^* for an isomorphism j_*: V_*(T) -> V_*(T~)^Gamma."""
    j = _frac(j_star)
    n = a.datum.rank
    r = len(j[0]) if j else 0
    if len(j) != n:
        raise ActionError("j_* must have one row per coordinate of X_*(T~)")
    if r and la.rank(j) != r:
        raise ActionError("j_* is not injective")
    if r != fixed_subspace_dim(a):
        raise ActionError("j_* is not onto the Gamma-fixed subspace")
    for gv in a.cochar_elements:
        if la.matmul(gv, j) != j:
            raise ActionError("image of j_* is not Gamma-fixed")
    jt = la.transpose(j)
    left_inv = la.matmul(la.inverse(la.matmul(jt, j)), jt) if r else ()
    avg = average_cochar(a)
    pi = la.matmul(left_inv, avg) if r else ()
    iota = la.transpose(pi) if r else tuple(() for _ in range(n))
    N_lower = la.scale(a.order, pi) if r else ()
    avg_up = la.zeros(n, n)
    for g in a.elements:
        avg_up = la.matadd(avg_up, g)
    avg_up = la.scale(Fraction(1, a.order), avg_up)
    return NormMaps(a.order, j, pi, iota, jt, j, N_lower,
                    la.transpose(N_lower) if r else tuple(() for _ in range(n)), avg_up)


def check_norm_identities(nm):
    """The three exact identities relating the norm maps; returns a Report."""
    rep = Report()
    r = len(nm.j_star[0]) if nm.j_star and nm.j_star[0] else 0
    rep.add("pi o i_* = id", la.matmul(nm.pi, nm.i_lower) == _frac(la.identity(r)) if r else True)
    ok = True
    for v in la.identity(r):
        for w in la.identity(r):
            lhs = la.dot(la.matvec(nm.iota, v), la.matvec(nm.i_lower, w))
            ok &= lhs == la.dot(v, w)
    rep.add("<iota(v), i_*(w)> = <v, w>", ok)
    rep.add("N_* = |Gamma| pi", nm.norm_lower == la.scale(nm.order, nm.pi) if r else True)
    # i^* = iota^-1 o (character average): equivalently iota o i^* = average
    rep.add("iota o i^* = average over Gamma",
            la.matmul(nm.iota, nm.i_upper) == nm.avg_upper if r else True)
    return rep


# Named automorphisms


_FLIPS = {
    "A": lambda n: [n - 1 - i for i in range(n)],
    "D": lambda n: list(range(n - 2)) + [n - 1, n - 2],
    "E": lambda n: [5, 1, 4, 3, 2, 0] if n == 6 else None,
}


def node_permutation(factor, kind):
    n = factor.rank
    if isinstance(kind, (list, tuple)):
        return list(kind)
    if kind == "flip":
        f = _FLIPS.get(factor.family)
        perm = f(n) if f else None
        if perm is None:
            raise ActionError(f"{factor.label} has no diagram flip")
        return perm
    if kind == "triality":
        if (factor.family, n) != ("D", 4):
            raise ActionError("triality needs a D4 factor")
        return [2, 1, 3, 0]
    raise ActionError(f"unknown diagram automorphism {kind!r}")


def diagram_automorphism(rd, kind, factor=0):
    """Lattice automorphism of X^* induced by a Dynkin diagram symmetry of one
    factor of a built datum (identity on the other factors)."""
    if not rd.factors:
        raise ActionError("named automorphisms need a datum built from a spec string")
    f = rd.factors[factor]
    if f.flavor not in ("sc", "ad"):
        raise ActionError(f"{f.label}: named automorphisms only for sc/ad factors")
    perm = node_permutation(f, kind)
    M = [list(r) for r in la.identity(rd.rank)]
    for i in range(f.nodes):
        M[f.xoff + i][f.xoff + i] = 0
    for i, j in enumerate(perm):
        M[f.xoff + j][f.xoff + i] = 1
    M = la.as_matrix(M)
    if sorted(la.matvec(M, a) for a in rd.simple) != sorted(rd.simple):
        raise ActionError(f"{kind} is not a symmetry of {f.label}")
    return M


def factor_permutation(rd, perm):
    """Automorphism moving factor k onto factor perm[k] (factors must match)."""
    fs = rd.factors
    if sorted(perm) != list(range(len(fs))):
        raise ActionError("factor permutation must be a permutation of the factors")
    M = [[0] * rd.rank for _ in range(rd.rank)]
    for k, t in enumerate(perm):
        a, b = fs[k], fs[t]
        if (a.family, a.rank, a.flavor, a.xdim) != (b.family, b.rank, b.flavor, b.xdim):
            raise ActionError(f"cannot move {a.label} onto {b.label}")
        for i in range(a.xdim):
            M[b.xoff + i][a.xoff + i] = 1
    return la.as_matrix(M)
