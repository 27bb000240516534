"""Parascopic data: (action, j_*) pairs with their two integrality conditions,
the Weyl group embedding, and equivalence of data sharing implicit tori."""

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache

from . import exact_linalg as la
from .gamma_action import (Report, coroot_from_orbit, fixed_cocharacters,
                           fixed_root_datum, norm_maps, orbit_of, root_orbits,
                           validate_action, _orbit_data)
from .root_datum import BasedRootDatum, simple_roots_of
from .weyl import WeylGroup


class DatumError(ValueError):
    pass


@lru_cache(maxsize=None)
def weyl_group(rd):
    return WeylGroup(rd)


@dataclass(frozen=True, eq=False)
class ParascopicDatum:
    action: object  # GammaAction on the datum of G~
    j_star: tuple  # n x r rational matrix V_*(T) -> V_*(T~)
    group: BasedRootDatum  # root datum of G on X^*(T) = Z^r
    tau: tuple = None  # Frobenius twist of G on X^*(T), if any

    @property
    def ambient(self):
        return self.action.datum

    @cached_property
    def maps(self):
        return norm_maps(self.action, self.j_star)

    @property
    def i_star(self):
        """i^* as an r x n rational matrix (transpose of j_*)."""
        return self.maps.i_upper

    def restrict(self, chi):
        return la.matvec(self.i_star, chi)


def induced_twist(i_star, tau_tilde):
    """The twist on X^*(T) making i^* equivariant: tau i^* = i^* tau~."""
    A = tuple(tuple(Fraction(x) for x in r) for r in i_star)
    right = la.matmul(la.transpose(A), la.inverse(la.matmul(A, la.transpose(A))))
    t = la.matmul(la.matmul(A, tau_tilde), right)
    if la.matmul(t, A) != la.matmul(A, tau_tilde):
        raise DatumError("twist does not descend to X^*(T)")
    ti = la.as_int_matrix(t)
    if ti is None:
        raise DatumError("induced twist is not integral")
    return ti


def canonical_datum(a):
    """The fixed-point datum: X_*(T) = X_*(T~)^Gamma, j_* the inclusion."""
    rep = validate_action(a)
    if not rep.ok:
        raise DatumError(f"invalid action: {rep.failures[0][0]}")
    fx = fixed_root_datum(a)
    tau = induced_twist(fx.i_star, a.tau) if a.tau is not None else None
    return ParascopicDatum(a, fx.i_lower, fx.datum, tau)


def datum_from_j(a, j_star, roots=None, coroots=None, tau=None):
    """A datum with an explicit j_*.  Roots of G default to the indivisible
    restrictions, with coroots pulled back through j_*; the result need not
    satisfy the conditions (check with validate_datum)."""
    j = tuple(tuple(Fraction(x) for x in r) for r in j_star)
    r = len(j[0]) if j else 0
    if roots is None:
        it = la.transpose(j)
        found = {}
        for o in root_orbits(a):
            cv = coroot_from_orbit(a, o)
            for t in o.roots:
                c = la.matvec(it, t)
                found.setdefault(c, la.solve(j, cv))
        keep = [c for c in found
                if tuple(x / 2 for x in c) not in found]
        roots = []
        coroots = []
        for c in sorted(keep):
            cv = found[c]
            ci, cvi = la.as_int_vector(c), la.as_int_vector(cv) if cv is not None else None
            if ci is None or cvi is None:
                continue  # not in the lattice; the P2 check reports the gap
            roots.append(ci)
            coroots.append(cvi)
    roots = tuple(tuple(x) for x in roots)
    coroots = tuple(tuple(x) for x in coroots)
    pos_f = _positive_functional(a, j)
    pos = tuple(c for c in roots if la.dot(c, pos_f) > 0)
    group = BasedRootDatum(r, roots, coroots, simple=simple_roots_of(pos), positive=pos)
    if tau is None and a.tau is not None:
        try:
            tau = induced_twist(la.transpose(j), a.tau)
        except DatumError:
            tau = None
    return ParascopicDatum(a, j, group, tau)


def _positive_functional(a, j):
    # pull a regular Gamma-invariant functional on the positive roots back to V_*(T)
    rd = a.datum
    rho_v = (0,) * rd.rank
    for p in rd.positive:
        rho_v = la.vadd(rho_v, rd.coroot_of[p])
    y = la.solve(j, rho_v)
    return y if y is not None else (0,) * (len(j[0]) if j else 0)


def validate_datum(d):
    """Every datum invariant, reported separately (never raises)."""
    rep = Report()
    a = d.action
    arep = validate_action(a)
    rep.add("action: permutes roots and preserves a positive system", arep.ok,
            "; ".join(c[0] for c in arep.failures))
    if not arep.ok:
        return rep
    n = a.datum.rank
    j = d.j_star
    r = len(j[0]) if j and j[0] else 0
    fixed = fixed_cocharacters(a)
    iso = (len(j) == n and la.rank(j) == r if r else len(fixed) == 0) and r == len(fixed)
    iso = iso and all(la.matmul(gv, j) == j for gv in a.cochar_elements)
    rep.add("j_* is an isomorphism onto V_*(T~)^Gamma", iso)
    if not iso:
        return rep
    if a.tau is not None or d.tau is not None:
        ok = a.tau is not None and d.tau is not None
        if ok:
            tt = la.contragredient(a.tau)
            tg = la.contragredient(d.tau)
            ok = la.matmul(tt, j) == la.matmul(j, tg)
        rep.add("j_* is Galois-equivariant", ok)
    # P1: j_*(X_*(T)) contains X_*(T~)^Gamma
    bad = [b for b in fixed
           if (lambda y: y is None or any(x.denominator != 1 for x in y))(la.solve(j, b))]
    rep.add("P1: j_*(X_*(T)) contains X_*(T~)^Gamma", not bad,
            f"{len(bad)} fixed basis vectors without integral preimage" if bad else "")
    restricted = {d.restrict(t) for t in a.datum.roots}
    missing = [c for c in d.group.roots if tuple(Fraction(x) for x in c) not in restricted]
    rep.add("P2: i^*(roots of G~) contains the roots of G", not missing,
            f"{len(missing)} roots of G are not restrictions" if missing else "")
    gprobs = d.group.problems()
    rep.add("roots of G form a root datum", not gprobs, "; ".join(gprobs[:3]))
    return rep


# Weyl group embedding


def lift_root(d, alpha):
    """Lexicographically smallest root of G~ restricting to alpha."""
    target = tuple(Fraction(x) for x in alpha)
    for t in d.ambient.roots:
        if d.restrict(t) == target:
            return t
    raise DatumError(f"root {alpha} of G is not a restriction (P2 fails)")


def psi_for(d, alpha):
    t = lift_root(d, alpha)
    return _orbit_data(d.action, orbit_of(d.action, t))


def reflection_image(d, alpha):
    """prod_{beta in Psi} w_beta as a matrix on X^*(T~)."""
    o = psi_for(d, alpha)
    M = la.identity(d.ambient.rank)
    for b in o.psi:
        M = la.matmul(M, d.ambient.reflection_matrix(b))
    return M


class WeylEmbedding:
    """The embedding W(G,T) -> W(G~,T~)^Gamma, tabulated on all of W(G,T)."""

    def __init__(self, d):
        self.datum = d
        g = d.group
        self.source = weyl_group(g)
        self.generators = [(a, g.reflection_matrix(a), reflection_image(d, a)) for a in g.simple]
        r = g.rank
        one = la.identity(r)
        image = {one: la.identity(d.ambient.rank)}
        frontier = [one]
        while frontier:
            nxt = []
            for w in frontier:
                for _, s, t in self.generators:
                    x = la.matmul(w, s)
                    if x not in image:
                        image[x] = la.matmul(image[w], t)
                        nxt.append(x)
            frontier = nxt
        self.image = image

    def __call__(self, w):
        return self.image[la.as_matrix(w)]

    def check(self):
        d = self.datum
        rep = Report()
        hom = all(self.image[la.matmul(w, s)] == la.matmul(self.image[w], t)
                  for w in self.image for _, s, t in self.generators)
        rep.add("homomorphism", hom)
        rep.add("injective", len(set(self.image.values())) == len(self.image))
        W_amb = weyl_group(d.ambient)
        in_w = all(v in W_amb for v in self.image.values())
        rep.add("image in W(G~,T~)", in_w)
        gam = d.action.elements
        fixed = all(la.matmul(g, v) == la.matmul(v, g) for v in self.image.values() for g in gam)
        rep.add("image is Gamma-fixed", fixed)
        ist = d.i_star
        restr = all(la.matmul(ist, v) == la.matmul(w, ist) for w, v in self.image.items())
        rep.add("i^* o i(w) = w o i^*", restr)
        iota = d.maps.iota
        restr2 = all(la.matmul(v, iota) == la.matmul(iota, w) for w, v in self.image.items())
        rep.add("i(w) restricted to V^*(T~)^Gamma equals w", restr2)
        return rep

    def table(self):
        return [(a, s, t) for a, s, t in self.generators]


def weyl_embedding(d):
    return WeylEmbedding(d)


def fixed_weyl_subgroup(d):
    W = weyl_group(d.ambient)
    gam = d.action.elements
    return [w for w in W.elements if all(la.matmul(g, w) == la.matmul(w, g) for g in gam)]


# Equivalence


def equivalent(d1, d2):
    """Search W(G,T) x W(G~,T~) for a witness of equivalence of two data with
    the same implicit tori.  Returns (True, (w, w~)) or (False, None)."""
    if d1.ambient != d2.ambient or d1.group.rank != d2.group.rank:
        return False, None
    g1, g2 = d1.action.generators, d2.action.generators
    if len(g1) != len(g2):
        return False, None
    emb = WeylEmbedding(d1)
    W = _identity_first(emb.source.elements)
    Wt = _identity_first(weyl_group(d1.ambient).elements)
    tau = d1.action.tau
    j1, j2 = d1.j_star, d2.j_star
    for wt in Wt:
        wti = la.int_inverse(wt)
        if any(la.matmul(la.matmul(wt, a), wti) != b for a, b in zip(g1, g2)):
            continue
        wt_co = la.contragredient(wt)
        for w in W:
            if tau is not None:
                x = la.matmul(wt, la.int_inverse(emb(w)))
                if la.matmul(tau, x) != la.matmul(x, tau):
                    continue
            w_co_inv = la.contragredient(la.int_inverse(w))
            if la.matmul(la.matmul(wt_co, j1), w_co_inv) == j2:
                return True, (w, wt)
    return False, None


def _identity_first(elements):
    n = len(elements[0])
    one = la.identity(n)
    return [one] + [w for w in elements if w != one]


def transport(d, w, wt):
    """The datum (w~ phi w~^-1, w~ j_* w^-1) equivalent to d via (w, w~)."""
    a = d.action
    wti = la.int_inverse(wt)
    gens = tuple(la.matmul(la.matmul(wt, g), wti) for g in a.generators)
    from .gamma_action import make_action
    a2 = make_action(a.datum, gens, a.tau)
    j2 = la.matmul(la.matmul(la.contragredient(wt), d.j_star),
                   la.contragredient(la.int_inverse(w)))
    return ParascopicDatum(a2, j2, d.group, d.tau)
