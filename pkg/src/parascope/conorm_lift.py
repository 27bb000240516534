"""Duality of tori, the conorm map and lifting of semisimple classes.

Lattice conventions: the dual datum of G has X^*(T*) = X_*(T) and
X_*(T*) = X^*(T), so the duality map of the base form is the identity matrix.
Points of T* are vectors in X^*(T) (x) Q/Z, and the Weyl group of G* acts on
them through the matrices of W(G) on X^*(T).  The conorm is then the matrix
N^*: X^*(T) -> X^*(T~), read as a map X_*(T*) -> X_*(T~*).
"""

from dataclasses import dataclass

from . import exact_linalg as la
from .galois_fq import FormError, FqForm, SemisimpleClassFq, context
from .gamma_action import Report, has_case2
from .parascopy import WeylEmbedding
from .root_datum import dual


class LiftError(ValueError):
    pass


@dataclass(frozen=True)
class DualityMap:
    matrix: tuple  # unimodular, X^*(T) -> X_*(T*)

    def __call__(self, v):
        return la.matvec(self.matrix, v)


def _check_duality(delta, rd, rd_star):
    """delta sends roots to coroots of the dual and delta^* sends roots of the
    dual to coroots."""
    fwd = {la.matvec(delta.matrix, a) for a in rd.roots} == set(rd_star.coroot_of.values())
    back = {la.matvec(la.transpose(delta.matrix), b) for b in rd_star.roots} \
        == set(rd.coroot_of.values())
    return fwd and back


def duality_base(form):
    """The dual form F* and the base duality map (identity)."""
    rd = form.datum
    rd_star = dual(rd)
    tau_star = la.contragredient(form.tau) if form.tau is not None else None
    fs = FqForm(rd_star, form.q, tau_star)
    delta = DualityMap(la.identity(rd.rank))
    if not _check_duality(delta, rd, rd_star):
        raise FormError("dual datum does not exchange roots and coroots")
    return fs, delta


def dual_torus(t, form):
    """The torus class of F* matching t in F, with its duality map.

    A torus class of F is stored by its matrix on X_*(T); the same Weyl element
    acts on X_*(T*) = X^*(T) by the contragredient matrix."""
    fs, delta = duality_base(form)
    w = t.rep if hasattr(t, "rep") else la.as_matrix(t)
    return context(fs).torus_class_of(la.contragredient(w)), delta


@dataclass
class ConormMap:
    matrix: tuple  # n x r integer matrix X_*(T*) -> X_*(T~*)
    datum: object
    embedding: WeylEmbedding

    def __call__(self, s):
        return la.reduce_mod1(la.matvec(self.matrix, s))

    def check(self, form, form_tilde):
        """Integrality, Weyl- and Frobenius-equivariance as matrix identities."""
        rep = Report()
        N = self.matrix
        rep.add("conorm is integral", la.as_int_matrix(N) is not None)
        emb = self.embedding
        rep.add("Weyl-equivariant", all(
            la.matmul(t, N) == la.matmul(N, s) for _, s, t in emb.generators))
        tau = form.tau_matrix
        tt = form_tilde.tau_matrix
        ok = la.matmul(tt, N) == la.matmul(N, tau)
        q = form.q
        for w, wt in emb.image.items():
            if not ok:
                break
            ok = la.matmul(la.scale(q, la.matmul(wt, tt)), N) == \
                la.matmul(N, la.scale(q, la.matmul(w, tau)))
        rep.add("Frobenius-equivariant on every torus", ok)
        return rep


def conorm(d, delta=None, delta_tilde=None):
    """The conorm delta~ o N^* o delta^-1 of a datum (deltas default to identity)."""
    N = d.maps.norm_upper
    if delta is not None:
        N = la.matmul(N, la.inverse(delta.matrix))
    if delta_tilde is not None:
        N = la.matmul(delta_tilde.matrix, N)
    Ni = la.as_int_matrix(N)
    if Ni is None:
        raise LiftError("conorm is not integral (condition P1 fails)")
    return ConormMap(Ni, d, WeylEmbedding(d))


def forms(d, q):
    """(F, F~) over F_q for a datum: G gets the induced twist of G~."""
    return FqForm(d.group, q, d.tau), FqForm(d.ambient, q, d.action.tau)


def warnings_for(d, q):
    out = []
    if q % 2 == 0 and has_case2(d.action):
        out.append("even q with a case-2 root orbit: lifting is computed but the "
                   "characteristic 2 regime is not covered by the general theory")
    return out


class Lifter:
    """Lifts rational semisimple classes of G*(F_q) to G~*(F_q)."""

    def __init__(self, d, q):
        self.datum = d
        self.form, self.form_tilde = forms(d, q)
        self.dual_form, _ = duality_base(self.form)
        self.dual_form_tilde, _ = duality_base(self.form_tilde)
        self.ctx = context(self.dual_form)
        self.ctx_tilde = context(self.dual_form_tilde)
        self.conorm = conorm(d)
        self._image = {w: la.as_int_matrix(v) for w, v in self.conorm.embedding.image.items()}

    def emb(self, w):
        """The Weyl embedding i as integer matrices."""
        return self._image[la.as_matrix(w)]

    def classes(self):
        return self.ctx.rational_classes()

    def lift_point(self, s, w):
        """(s~, i(w)) for the point s of T* rational on the torus w."""
        if self.ctx.frob(w, s) != tuple(s):
            raise LiftError("point is not rational on the given torus")
        return self.conorm(s), self.emb(w)

    def lift(self, c, route=None):
        s, w = route if route is not None else (c.point, c.torus)
        st, wt = self.lift_point(s, w)
        return self.ctx_tilde.label(st, wt)

    def check(self, base_only=False):
        """Route independence of lifted labels and the stabilizer embeddings.
        base_only restricts to routes through the canonical point; the other
        routes are W-translates of these, which the equivariance of the
        conorm carries to W~-translates."""
        rep = self.conorm.check(self.dual_form, self.dual_form_tilde)
        routes_ok, w0_ok, ws_ok = True, True, True
        bad = []
        one = la.identity(self.ctx_tilde.n)
        for c in self.classes():
            base = self.lift(c).key
            points = set()
            for s, w in self.ctx.class_routes(c, base_only):
                if self.lift(c, (s, w)).key != base:
                    routes_ok = False
                    bad.append(c)
                    break
                points.add(s)
            for s in sorted(points):
                st = self.conorm(s)
                cg = self.ctx.component_group(s)
                cgt = self.ctx_tilde.component_group(st)
                for r in cg.reflections:
                    x = self.emb(r)
                    if self.ctx_tilde.act(x, st) != st or cgt.coset_of(x) != one:
                        w0_ok = False
                if any(self.ctx_tilde.act(self.emb(x), st) != st for x in cg.stabilizer):
                    ws_ok = False
        rep.add("lifted labels independent of the torus route", routes_ok,
                f"{len(bad)} classes disagree" if bad else "")
        rep.add("W_s^0 maps into W~_s~^0", w0_ok)
        rep.add("W_s maps into W~_s~", ws_ok)
        return rep


def lift_rational(d, c, q):
    """The class of G~*(F_q) obtained by lifting the class c of G*(F_q)."""
    if not isinstance(c, SemisimpleClassFq):
        raise LiftError("expected a rational semisimple class")
    return Lifter(d, q).lift(c)


def lift_table(d, q):
    lf = Lifter(d, q)
    return [(c, lf.lift(c)) for c in lf.classes()]


def check_consistency(d, q, base_only=False):
    return Lifter(d, q).check(base_only)
