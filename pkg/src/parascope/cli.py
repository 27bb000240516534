"""parascope: command line front end.

Config files are JSON objects:

    {"gtilde": "A2 sc",                 # group spec string or list of them
     "gamma": ["flip"],                 # generators of the finite group action
     "twist": null,                     # Frobenius twist of G~ (optional)
     "datum": "canonical",              # or {"j_star": [[...], ...]}
     "q": 3}                            # optional default for --q

An automorphism is "flip", "triality", {"diagram": kind-or-permutation,
"factor": k}, {"factors": permutation}, {"matrix": rows} or
{"compose": [a, b, ...]} (applied right to left, as matrices multiply).
"""

import argparse
import hashlib
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from math import gcd

from . import exact_linalg as la
from .conorm_lift import Lifter, LiftError, forms, warnings_for
from .galois_fq import FormError, context, prime_power
from .gamma_action import (ActionError, check_norm_identities, diagram_automorphism,
                           factor_permutation, fixed_root_datum, make_action, root_orbits)
from .oracle import OracleCapExceeded, compare_form
from .parascopy import (DatumError, canonical_datum, datum_from_j, psi_for, validate_datum,
                        weyl_embedding, weyl_group)
from .root_datum import RootDatumError, build, classify
from .weyl import WeylCapExceeded

EXIT_OK, EXIT_INVALID, EXIT_PARSE, EXIT_CAP, EXIT_ORACLE = 0, 1, 2, 3, 4

CONFIG_KEYS = {"gtilde", "gamma", "twist", "datum", "q", "description"}


class ConfigError(ValueError):
    pass


class Invalid(Exception):
    def __init__(self, results):
        super().__init__("validation failed")
        self.results = results


# config


def parse_automorphism(rd, obj):
    if isinstance(obj, str):
        return diagram_automorphism(rd, obj)
    if not isinstance(obj, dict) or len(obj) not in (1, 2):
        raise ConfigError(f"cannot read automorphism {obj!r}")
    if "diagram" in obj:
        return diagram_automorphism(rd, obj["diagram"], obj.get("factor", 0))
    if "factors" in obj:
        return factor_permutation(rd, obj["factors"])
    if "matrix" in obj:
        M = la.as_matrix(obj["matrix"])
        if len(M) != rd.rank or any(len(r) != rd.rank for r in M):
            raise ConfigError(f"automorphism matrix must be {rd.rank} x {rd.rank}")
        return M
    if "compose" in obj:
        M = la.identity(rd.rank)
        for part in obj["compose"]:
            M = la.matmul(M, parse_automorphism(rd, part))
        return M
    raise ConfigError(f"cannot read automorphism {obj!r}")


class Setup:
    """Parsed config: the action, the datum and the default q."""

    def __init__(self, cfg):
        if not isinstance(cfg, dict):
            raise ConfigError("config must be a JSON object")
        extra = set(cfg) - CONFIG_KEYS
        if extra:
            raise ConfigError(f"unknown config keys: {sorted(extra)}")
        if "gtilde" not in cfg:
            raise ConfigError("config needs 'gtilde'")
        self.config = cfg
        self.rd = build(cfg["gtilde"])
        gens = [parse_automorphism(self.rd, g) for g in cfg.get("gamma", [])]
        tw = cfg.get("twist")
        tau = parse_automorphism(self.rd, tw) if tw is not None else None
        self.action = make_action(self.rd, gens, tau)
        spec = cfg.get("datum", "canonical")
        self.q = cfg.get("q")
        if spec == "canonical":
            self.datum = canonical_datum(self.action)
        elif isinstance(spec, dict) and set(spec) == {"j_star"}:
            j = [[Fraction(x) for x in row] for row in spec["j_star"]]
            self.datum = datum_from_j(self.action, j)
        else:
            raise ConfigError("'datum' must be \"canonical\" or {\"j_star\": rows}")

    def validate(self):
        rep = validate_datum(self.datum)
        if not rep.ok:
            raise Invalid({"datum": report_json(rep)})
        return rep


def load_config(path):
    with open(path) as fh:
        text = fh.read()
    try:
        cfg = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: not valid JSON ({exc.msg})") from None
    return cfg


def digest(cfg):
    blob = json.dumps(cfg, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


# JSON helpers


def jv(v):
    return [str(x) if isinstance(x, Fraction) else x for x in v]


def jm(M):
    return [jv(r) for r in M]


def report_json(rep):
    return rep.as_dict()


# commands


def cmd_validate(setup, args):
    rep = validate_datum(setup.datum)
    results = {"datum": report_json(rep)}
    if rep.ok:
        results["norm_identities"] = report_json(check_norm_identities(setup.datum.maps))
        results["weyl_embedding"] = report_json(weyl_embedding(setup.datum).check())
    ok = rep.ok and all(results[k]["ok"] for k in results)
    if not ok:
        raise Invalid(results)
    return results


def cmd_fixed(setup, args):
    fx = fixed_root_datum(setup.action)
    g = fx.datum
    ctype = classify(g)
    orbits = [{"roots": jm(o.roots), "case": o.case, "psi": jm(o.psi)}
              for o in root_orbits(setup.action)]
    return {"cartan_type": str(ctype), "rank": g.rank, "weyl_order": len(weyl_group(g)),
            "gamma_order": setup.action.order, "roots": jm(g.roots),
            "coroots": jm(g.coroot_of[a] for a in g.roots), "simple_roots": jm(g.simple),
            "i_upper": jm(fx.i_star), "i_lower": jm(fx.i_lower), "orbits": orbits}


def cmd_weyl_embed(setup, args):
    setup.validate()
    emb = weyl_embedding(setup.datum)
    rows = []
    for a, s, t in emb.table():
        psi = psi_for(setup.datum, a).psi
        rows.append({"root": jv(a), "reflection": jm(s), "psi": jm(psi), "image": jm(t)})
    rep = emb.check()
    res = {"generators": rows, "source_order": len(emb.image),
           "image_order": len(set(emb.image.values())), "checks": report_json(rep)}
    if not rep.ok:
        raise Invalid(res)
    return res


def _q(setup, args):
    q = args.q if args.q is not None else setup.q
    if q is None:
        raise ConfigError("this command needs --q (or 'q' in the config)")
    prime_power(q)
    return q


def _torus_json(ctx, t):
    return {"index": t.index, "rep": jm(t.rep), "size": t.size,
            "points": abs(la.det(la.matsub(ctx.frobenius_matrix(t.rep), la.identity(ctx.n))))}


def cmd_tori(setup, args):
    setup.validate()
    q = _q(setup, args)
    d = setup.datum
    F, Ft = forms(d, q)
    ctx, ctxt = context(F), context(Ft)
    emb = weyl_embedding(d)
    rows = []
    for t in ctx.torus_classes():
        w = la.contragredient(t.rep)  # on X^*(T)
        img = la.contragredient(emb(w))
        rows.append(dict(_torus_json(ctx, t), image=ctxt.torus_class_of(img).index))
    return {"q": q, "G": rows, "G~": [_torus_json(ctxt, t) for t in ctxt.torus_classes()]}


def _class_json(ctx, c, index):
    cg = ctx.component_group(c.geometric)
    return {"index": index, "geometric": jv(c.geometric), "a_label": jm(c.a_label),
            "torus": ctx.torus_class_of(c.torus).index, "component_group_order": cg.order}


def cmd_classes(setup, args):
    setup.validate()
    q = _q(setup, args)
    lf = Lifter(setup.datum, q)
    return {"q": q, "group": "G*", "classes": [_class_json(lf.ctx, c, i)
                                               for i, c in enumerate(lf.classes())]}


def _pmap(fn, items, threads):
    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            return list(ex.map(fn, items))
    return [fn(x) for x in items]


def cmd_lift(setup, args):
    setup.validate()
    q = _q(setup, args)
    lf = Lifter(setup.datum, q)
    classes = lf.classes()
    target = lf.ctx_tilde.rational_classes()
    where = {c.key: i for i, c in enumerate(target)}
    if args.cls is not None:
        if not 0 <= args.cls < len(classes):
            raise ConfigError(f"--class must be in 0..{len(classes) - 1}")
        picked = [args.cls]
    else:
        picked = list(range(len(classes)))
    lifted = _pmap(lambda i: lf.lift(classes[i]), picked, args.threads)
    rows = []
    for i, l in zip(picked, lifted):
        rows.append({"class": _class_json(lf.ctx, classes[i], i),
                     "lift": {"index": where[l.key], "geometric": jv(l.geometric),
                              "a_label": jm(l.a_label)}})
    return {"q": q, "source_classes": len(classes), "target_classes": len(target),
            "conorm": jm(lf.conorm.matrix), "rows": rows}


def cmd_check(setup, args):
    setup.validate()
    q = _q(setup, args)
    rep = Lifter(setup.datum, q).check()
    res = {"q": q, "report": report_json(rep)}
    if not rep.ok:
        raise Invalid(res)
    return res


class OracleMismatch(Exception):
    def __init__(self, results):
        super().__init__("oracle mismatch")
        self.results = results


def cmd_oracle(setup, args):
    setup.validate()
    q = _q(setup, args)
    lf = Lifter(setup.datum, q)
    out = {"q": q}
    ok = True
    for name, form in (("G*", lf.dual_form), ("G~*", lf.dual_form_tilde)):
        cmp_ = compare_form(form)
        if cmp_ is None:
            out[name] = {"model": None, "status": "skipped (no matrix model)"}
            continue
        out[name] = {"model": cmp_.spec.name, "classes": cmp_.form_count,
                     "oracle_classes": cmp_.oracle_count, "invariants_match": cmp_.keys_match,
                     "ok": cmp_.ok}
        ok &= cmp_.ok
    if not ok:
        raise OracleMismatch(out)
    return out


COMMANDS = {
    "validate": cmd_validate, "fixed": cmd_fixed, "weyl-embed": cmd_weyl_embed,
    "tori": cmd_tori, "classes": cmd_classes, "lift": cmd_lift, "check": cmd_check,
    "oracle": cmd_oracle,
}


def warnings(setup, q):
    out = []
    if q is not None:
        out += warnings_for(setup.datum, q)
        if gcd(q, setup.action.order) != 1:
            out.append(f"q = {q} is not coprime to |Gamma| = {setup.action.order}")
    return out


# output


def print_human(command, results, warns, out):
    for w in warns:
        print(f"warning: {w}", file=out)
    if command == "fixed":
        print(f"fixed-point group: {results['cartan_type']}  rank {results['rank']}  "
              f"|W| = {results['weyl_order']}  |Gamma| = {results['gamma_order']}", file=out)
        print(f"roots: {results['roots']}", file=out)
        print(f"i^*: {results['i_upper']}", file=out)
        return
    if command == "weyl-embed" and "generators" in results:
        print(f"{'root':<12} {'Psi':<28} image", file=out)
        for r in results["generators"]:
            print(f"{str(r['root']):<12} {str(r['psi']):<28} {r['image']}", file=out)
        print(f"|W(G)| = {results['source_order']}", file=out)
    if command == "tori":
        print(f"q = {results['q']}", file=out)
        print(f"{'G':<4} {'size':>5} {'|T(F_q)|':>9}  image in G~", file=out)
        for r in results["G"]:
            print(f"{r['index']:<4} {r['size']:>5} {r['points']:>9}  {r['image']}", file=out)
        return
    if command == "classes":
        print(f"{'idx':<4} {'geometric':<24} {'|A|':>4} torus", file=out)
        for r in results["classes"]:
            print(f"{r['index']:<4} {str(r['geometric']):<24} {r['component_group_order']:>4} "
                  f"{r['torus']}", file=out)
        return
    if command == "lift":
        print(f"q = {results['q']}: {results['source_classes']} classes of G*, "
              f"{results['target_classes']} of G~*", file=out)
        print(f"{'idx':<4} {'geometric':<20} {'->':<3} {'idx':<4} geometric", file=out)
        for r in results["rows"]:
            c, l = r["class"], r["lift"]
            print(f"{c['index']:<4} {str(c['geometric']):<20} {'->':<3} {l['index']:<4} "
                  f"{l['geometric']}", file=out)
        return
    reports = {k: v for k, v in results.items() if isinstance(v, dict) and "checks" in v}
    if "report" in results:
        reports["report"] = results["report"]
    for name, rep in reports.items():
        print(f"[{name}]", file=out)
        for c in rep["checks"]:
            mark = "ok  " if c["ok"] else "FAIL"
            detail = f"  ({c['detail']})" if c["detail"] else ""
            print(f"  {mark} {c['name']}{detail}", file=out)
    for name in ("G*", "G~*"):
        if name in results:
            print(f"{name}: {results[name]}", file=out)


def build_parser():
    ap = argparse.ArgumentParser(prog="parascope",
                                 description="Root-datum computations for lifting semisimple classes.")
    ap.add_argument("command", choices=sorted(COMMANDS))
    ap.add_argument("config", help="JSON config file")
    ap.add_argument("--q", type=int, default=None, help="size of the finite field")
    grp = ap.add_mutually_exclusive_group()
    grp.add_argument("--all", action="store_true", help="lift every class (default)")
    grp.add_argument("--class", dest="cls", type=int, default=None, help="lift one class")
    ap.add_argument("--json", action="store_true", help="machine-readable output")
    ap.add_argument("--threads", type=int, default=1, help="worker threads")
    return ap


def main(argv=None, out=None):
    out = out or sys.stdout
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    cfg = None
    code = EXIT_OK
    warns = []
    try:
        cfg = load_config(args.config)
        setup = Setup(cfg)
        q = args.q if args.q is not None else setup.q
        warns = warnings(setup, q)
        results = COMMANDS[args.command](setup, args)
    except (ConfigError, RootDatumError, json.JSONDecodeError, OSError, FormError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (ActionError, DatumError, LiftError) as exc:
        results, code = {"error": str(exc)}, EXIT_INVALID
    except Invalid as exc:
        results, code = exc.results, EXIT_INVALID
    except OracleMismatch as exc:
        results, code = exc.results, EXIT_ORACLE
    except (WeylCapExceeded, OracleCapExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    if args.json:
        doc = {"command": args.command, "input_digest": digest(cfg), "results": results,
               "warnings": warns}
        print(json.dumps(doc, sort_keys=True, indent=2), file=out)
    else:
        if "error" in results:
            print(f"error: {results['error']}", file=out)
        print_human(args.command, results, warns, out)
    return code


if __name__ == "__main__":
    sys.exit(main())
