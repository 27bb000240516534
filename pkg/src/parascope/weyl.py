"""Weyl groups as finite groups of integer matrices acting on X^*."""

from . import exact_linalg as la

DEFAULT_CAP = 2 ** 20


class WeylCapExceeded(RuntimeError):
    pass


class NotNormalizing(ValueError):
    pass


def closure(gens, cap=DEFAULT_CAP, n=None):
    """All products of the given invertible integer matrices (a finite group)."""
    gens = [la.as_matrix(g) for g in gens]
    if n is None:
        n = len(gens[0]) if gens else 0
    one = la.identity(n)
    seen = {one}
    frontier = [one]
    while frontier:
        nxt = []
        for w in frontier:
            for g in gens:
                x = la.matmul(w, g)
                if x not in seen:
                    seen.add(x)
                    if len(seen) > cap:
                        raise WeylCapExceeded(f"group order exceeds cap {cap}")
                    nxt.append(x)
        frontier = nxt
    return sorted(seen)


def simple_reflections(rd):
    return [rd.reflection_matrix(a) for a in rd.simple]


def enumerate_weyl(rd, cap=DEFAULT_CAP):
    """All elements of W as matrices on X^*, sorted lexicographically."""
    return closure(simple_reflections(rd), cap=cap, n=rd.rank)


def reflection(rd, alpha):
    alpha = tuple(alpha)
    if alpha not in rd.coroot_of:
        raise ValueError(f"{alpha} is not a root")
    return rd.reflection_matrix(alpha)


def order(w):
    n = len(w)
    one = la.identity(n)
    x, k = w, 1
    while x != one:
        x = la.matmul(x, w)
        k += 1
    return k


def permutes(w, vectors):
    s = set(vectors)
    return all(la.matvec(w, v) in s for v in vectors)


def reduced_word(rd, w):
    """A reduced word (indices into rd.simple) for w; computed by descents."""
    pos = set(rd.positive)
    word = []
    cur = w
    while True:
        for i, a in enumerate(rd.simple):
            if la.matvec(cur, a) not in pos:
                word.append(i)
                cur = la.matmul(cur, rd.reflection_matrix(a))
                break
        else:
            break
    if cur != la.identity(rd.rank):
        raise ValueError("matrix is not a Weyl group element")
    return tuple(reversed(word))


def _check_normalizes(elements, auts):
    S = set(elements)
    for t in auts:
        tinv = la.int_inverse(t)
        for w in elements:
            if la.matmul(la.matmul(t, w), tinv) not in S:
                raise NotNormalizing("automorphism does not normalize the group")


def twisted_classes(elements, tau=None, gens=None):
    """Partition of W under w ~ x w tau(x)^-1, where tau(x) = tau x tau^-1.

    Returns a list of classes (each a sorted list of matrices); classes are
    ordered by their lex-min representative, which is listed first.
    ``gens`` (a generating set of W) speeds up the orbit computation.
    """
    elements = [la.as_matrix(w) for w in elements]
    n = len(elements[0])
    if tau is None:
        tau = la.identity(n)
    tau = la.as_matrix(tau)
    _check_normalizes(elements, [tau])
    tinv = la.int_inverse(tau)
    movers = gens if gens is not None else elements
    movers = [la.as_matrix(x) for x in movers]
    twisted = [(x, la.int_inverse(la.matmul(la.matmul(tau, x), tinv))) for x in movers]
    # x w tau(x)^-1 for generators x; orbits of a group action are the
    # connected components of the generator graph
    parent = {w: w for w in elements}

    def find(w):
        while parent[w] != w:
            parent[w] = parent[parent[w]]
            w = parent[w]
        return w

    for w in elements:
        for x, txi in twisted:
            v = la.matmul(la.matmul(x, w), txi)
            a, b = find(w), find(v)
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups = {}
    for w in elements:
        groups.setdefault(find(w), []).append(w)
    return sorted((sorted(c) for c in groups.values()), key=lambda c: c[0])


def conjugacy_classes(elements, gens=None):
    return twisted_classes(elements, None, gens)


def fixed_subgroup(elements, action):
    """Elements commuting with every automorphism in ``action``."""
    action = [la.as_matrix(a) for a in action]
    _check_normalizes(elements, action)
    return [w for w in elements
            if all(la.matmul(a, w) == la.matmul(w, a) for a in action)]


class WeylGroup:
    """Enumerated Weyl group with fast index lookup and both lattice actions."""

    def __init__(self, rd, cap=DEFAULT_CAP):
        self.rd = rd
        self.elements = enumerate_weyl(rd, cap)
        self.index = {w: i for i, w in enumerate(self.elements)}
        self.gens = simple_reflections(rd)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, w):
        return w in self.index

    def cochar(self, w):
        """Matrix of w on X_* (inverse transpose of its matrix on X^*)."""
        return la.contragredient(w)
