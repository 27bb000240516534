"""Actions and data shared by the test modules."""

from functools import lru_cache

from parascope.gamma_action import diagram_automorphism, factor_permutation, make_action
from parascope.parascopy import canonical_datum
from parascope.root_datum import build

# (name, spec, generator kinds, expected fixed type)
FOLDINGS = [
    ("A2 flip", "A2 sc", ["flip"], "A1"),
    ("A3 flip", "A3 sc", ["flip"], "C2"),
    ("A4 flip", "A4 sc", ["flip"], "B2"),
    ("A5 flip", "A5 sc", ["flip"], "C3"),
    ("D4 triality", "D4 sc", ["triality"], "G2"),
    ("D4 flip", "D4 sc", ["flip"], "B3"),
    ("D5 flip", "D5 sc", ["flip"], "B4"),
    ("E6 flip", "E6 sc", ["flip"], "F4"),
    ("A1^3 cyclic", "A1 sc x A1 sc x A1 sc", [("factors", [1, 2, 0])], "A1"),
]

WEYL_ORDER = {"A1": 2, "C2": 8, "B2": 8, "C3": 48, "G2": 12, "B3": 48, "B4": 384, "F4": 1152}


def _gen(rd, g):
    if isinstance(g, tuple):
        return factor_permutation(rd, g[1])
    return diagram_automorphism(rd, g)


@lru_cache(maxsize=None)
def folding_action(name):
    _, spec, gens, _ = next(f for f in FOLDINGS if f[0] == name)
    rd = build(spec)
    return make_action(rd, [_gen(rd, g) for g in gens])


@lru_cache(maxsize=None)
def base_change_action():
    rd = build("A1 sc x A1 sc")
    sw = factor_permutation(rd, [1, 0])
    return make_action(rd, [sw], sw)


@lru_cache(maxsize=None)
def trivial_action(spec):
    return make_action(build(spec), [])


def all_actions():
    out = [(name, folding_action(name)) for name, *_ in FOLDINGS]
    out.append(("A1xA1 swap", base_change_action()))
    return out


# data used for lifting: small enough to run every class at q = 3, 5
LIFT_FIXTURES = ["A2 flip", "A1xA1 swap", "A3 flip", "A1^3 cyclic", "D4 triality"]


@lru_cache(maxsize=None)
def lift_datum(name):
    if name == "A1xA1 swap":
        return canonical_datum(base_change_action())
    return canonical_datum(folding_action(name))
