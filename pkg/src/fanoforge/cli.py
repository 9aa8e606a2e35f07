"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 invalid input, 3 infeasible.
"""

from __future__ import annotations

import argparse
import sys
import warnings
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from math import gcd

from . import chow
from .chow import BOTH_MODES, GEOMETRIC, PAPER_FORMAL, BundleData, ConventionMode
from .construction import (ConstructionInput, build_threefold, cyclic_cover,
                           fano_anticanonical_bidegree, fano_bidegree_check, p_cover,
                           unbounded_search)
from .curves import (OnePointDivisor, kernel_dim_lower_bound, kernel_witness_check,
                     raynaud_canonical, riemann_roch, tate_genus)
from .errors import FanoForgeError, Infeasible, InvalidInput
from .lattice import DivisorClass
from .parser import DegreeOverflowWarning, evaluate_divisor, expand, format_class, parse_class
from .presets import load_model
from .report import dumps, jsonable, model_summary, rat, to_text


def _modes(arg: str):
    if arg == "both":
        return BOTH_MODES
    return (ConventionMode.parse(arg),)


def _int_range(text: str):
    """``"3"``, ``"1-10"`` or ``"1,4,9"``."""
    out = []
    try:
        for part in text.split(","):
            lo, sep, hi = part.partition("-")
            if sep:
                out.extend(range(int(lo), int(hi) + 1))
            else:
                out.append(int(part))
    except ValueError:
        raise InvalidInput(f"bad integer range {text!r}") from None
    return sorted(set(out))


def _load(args):
    return load_model(args.surface, ks2=args.ks2, char_p=getattr(args, "model_p", None))


def _divisor(model, text):
    if text is None:
        return None
    return evaluate_divisor(text, model)


def _default_m(p: int) -> int:
    m = 3
    while gcd(m, p) != 1:
        m += 1
    return m


# -- subcommands ------------------------------------------------------------

def cmd_verify(args):
    from .verify import run_suite

    results = run_suite(_modes(args.mode))
    doc = {"checks": [{"name": n, "ok": ok, "detail": d} for n, ok, d in results],
           "all_ok": all(ok for _, ok, _ in results)}
    if args.format == "text":
        lines = [f"[{'PASS' if ok else 'FAIL'}] {n}: {d}" for n, ok, d in results]
        lines.append("all checks passed" if doc["all_ok"] else "SOME CHECKS FAILED")
        return doc, "\n".join(lines), 0 if doc["all_ok"] else 1
    return doc, None, 0 if doc["all_ok"] else 1


def construct_report(model, p, n, d, D=None, m=None, curves=(), bound=None,
                     cyclic_mode=PAPER_FORMAL):
    inp = ConstructionInput(model, p, n, d, D)
    rep = build_threefold(inp, bound=bound)
    covers = {mode.value: p_cover(model, rep.chern, p, inp.D, mode, curves) for mode in BOTH_MODES}
    m = _default_m(p) if m is None else m
    cyc = cyclic_cover(covers[cyclic_mode.value].degree, m, p)
    ext = rep.extension
    return {
        "input": {"surface": model_summary(model), "p": p, "n": n, "d": d,
                  "D": jsonable(inp.D), "m": m},
        "extension": {"L": jsonable(ext.L), "Lp": jsonable(ext.Lp), "lenZ": ext.lenZ},
        "chern": {"c1": jsonable(rep.chern.c1), "c2": rat(rep.chern.c2)},
        "antiK": format_class(rep.antiK, model),
        "deg_paper": rat(rep.deg_paper),
        "deg_geom": rat(rep.deg_geom),
        "family_dim": rep.family_dim,
        "ext_space_dim": rep.extension_space_dim,
        "parameter_count_with_extension_fiber": rep.parameter_count,
        "locally_free": rep.locally_free,
        "cover": {
            "class": format_class(covers[PAPER_FORMAL.value].K_X_description, model),
            "multiplier": p,
            "degree_paper": rat(covers[PAPER_FORMAL.value].degree),
            "degree_geom": rat(covers[GEOMETRIC.value].degree),
            "ample_certified": covers[PAPER_FORMAL.value].ample_certified,
            "certified_by": list(covers[PAPER_FORMAL.value].certified_by),
        },
        "cyclic": {
            "m": m,
            "mode": cyclic_mode.value,
            "canonical_multiple": rat(cyc.canonical_multiple),
            "degree": rat(cyc.degree),
            "K_nef": cyc.K_nef,
            "formula": "K_{X_m} = pi_m^*((m-2)(-K_X)), derived from the branched-cover formula",
        },
        "certificates": list(rep.certificates),
    }


def cmd_construct(args):
    model = _load(args)
    p = args.p if args.p is not None else model.char_p
    if not p:
        raise InvalidInput("--p is required for a characteristic-0 model")
    mode = _modes(args.mode)[0]
    doc = construct_report(model, p, args.n, args.d, _divisor(model, args.D), args.m,
                           cyclic_mode=mode)
    return doc, None, 0


def _table_cell(job):
    surface, ks2, model_p, p, n, d = job
    model = load_model(surface, ks2=ks2, char_p=model_p)
    try:
        rep = build_threefold(ConstructionInput(model, p, n, d))
    except Infeasible:
        return {"n": n, "d": d, "feasible": False}
    return {"n": n, "d": d, "feasible": True, "L": jsonable(rep.extension.L),
            "deg_paper": rat(rep.deg_paper), "deg_geom": rat(rep.deg_geom),
            "family_dim": rep.family_dim, "ext_space_dim": rep.extension_space_dim}


def cmd_table(args):
    model = _load(args)
    p = args.p if args.p is not None else (model.char_p or 3)
    ConstructionInput(model, p, 1, 1)  # validate before fanning out
    jobs = [(args.surface, args.ks2, None, p, n, d)
            for n in _int_range(args.n) for d in _int_range(args.d)]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(_table_cell, jobs, chunksize=16))
    else:
        rows = [_table_cell(j) for j in jobs]
    rows.sort(key=lambda r: (r["n"], r["d"]))
    if args.feasible_only:
        rows = [r for r in rows if r["feasible"]]
    doc = {"surface": model.name, "KS2": rat(model.KS2), "p": p, "rows": rows}
    if args.format == "text":
        lines = [f"{'n':>3} {'d':>4}  {'L':>10}  {'deg_paper':>10}  {'deg_geom':>10}"]
        for r in rows:
            if r["feasible"]:
                L = model.format_divisor(DivisorClass([Fraction(c) for c in r["L"]]))
                lines.append(f"{r['n']:>3} {r['d']:>4}  {L:>10}  "
                             f"{r['deg_paper']:>10}  {r['deg_geom']:>10}")
            else:
                lines.append(f"{r['n']:>3} {r['d']:>4}  {'infeasible':>10}")
        return doc, "\n".join(lines), 0
    return doc, None, 0


def cmd_search(args):
    model = _load(args)
    out = {}
    for mode in _modes(args.mode):
        n, deg = unbounded_search(model, Fraction(args.N), mode)
        out[mode.value] = {"n": n, "degree": rat(deg)}
    return {"surface": model.name, "KS2": rat(model.KS2), "N": rat(Fraction(args.N)),
            "results": out}, None, 0


def cmd_curve(args):
    if args.kind == "tate":
        return {"p": args.p, "genus": tate_genus(args.p)}, None, 0
    if args.kind == "raynaud":
        dz, g = raynaud_canonical(args.p, args.e)
        kb = kernel_dim_lower_bound(args.p, args.e)
        return {"p": args.p, "e": args.e, "dz": dz.mult, "genus": g, "h1": kb.h1,
                "D": kb.D.mult, "D_ample": kb.D_ample,
                "meets_paper_bound": kb.meets_paper_bound, "note": kb.note}, None, 0
    if args.kind == "rr":
        h0, h1 = riemann_roch(args.g, args.deg)
        return {"g": args.g, "deg": args.deg, "h0": h0, "h1": h1}, None, 0
    if args.kind == "witness":
        vals = {}
        for item in args.val or []:
            key, _, value = item.partition("=")
            try:
                vals[key] = int(value)
            except ValueError:
                raise InvalidInput(f"bad valuation {item!r}") from None
        ok = kernel_witness_check(args.p, args.dz, OnePointDivisor(args.D), vals, args.genus)
        return {"p": args.p, "dz": args.dz, "D": args.D, "holds": ok}, None, 0
    raise InvalidInput(f"unknown curve command {args.kind!r}")


def cmd_eval(args):
    model = _load(args)
    c1 = _divisor(model, args.c1) if args.c1 else model.zero()
    E = BundleData(model, c1, Fraction(args.c2))
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", DegreeOverflowWarning)
        raw = expand(parse_class(args.expr, model), model)
    out = {"expr": args.expr, "c1": jsonable(c1), "c2": rat(E.c2), "results": {}}
    for mode in _modes(args.mode):
        cls = chow.normalize(E, raw, mode)
        entry = {"class": format_class(cls, model), "degree": rat(chow.integrate(E, raw, mode))}
        if cls.a3 != chow.integrate(E, raw, mode):
            entry["note"] = ("degree uses the monomial rule deg H^3 = -c1^2 - c2, "
                             "which does not follow from the relation used for the normal form")
        out["results"][mode.value] = entry
    if caught:
        out["warnings"] = [str(w.message) for w in caught]
    return out, None, 0


def cmd_fano_bidegree(args):
    bideg = fano_anticanonical_bidegree(args.p, args.n)
    return {"p": args.p, "n": args.n, "antiK_bidegree": list(bideg),
            "fano": fano_bidegree_check(args.p, args.n)}, None, 0


# -- wiring -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fanoforge", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "text"], default=None)
    surface = argparse.ArgumentParser(add_help=False)
    surface.add_argument("--surface", default="ample-k.json",
                         help="model JSON path or preset name (p2, ample-k, raynaud)")
    surface.add_argument("--ks2", type=int, default=None, help="K_S^2 for family presets")
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", parents=[common])
    v.add_argument("--mode", choices=["paper", "geom", "both"], default="both")
    v.set_defaults(func=cmd_verify, default_format="text")

    c = sub.add_parser("construct", parents=[common, surface])
    c.add_argument("--p", type=int, default=None)
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--d", type=int, required=True)
    c.add_argument("--D", default=None, help="ample divisor for the p-cover (expression)")
    c.add_argument("--m", type=int, default=None, help="cyclic cover order")
    c.add_argument("--mode", choices=["paper", "geom", "both"], default="paper",
                   help="convention feeding the cyclic cover; both degrees are always reported")
    c.set_defaults(func=cmd_construct, default_format="json")

    t = sub.add_parser("table", parents=[common, surface])
    t.add_argument("--p", type=int, default=None)
    t.add_argument("--n", default="1-10")
    t.add_argument("--d", default="1-50")
    t.add_argument("--feasible-only", action="store_true")
    t.add_argument("--jobs", type=int, default=1)
    t.set_defaults(func=cmd_table, default_format="json")

    s = sub.add_parser("search", parents=[common, surface])
    s.add_argument("--N", required=True)
    s.add_argument("--mode", choices=["paper", "geom", "both"], default="paper")
    s.set_defaults(func=cmd_search, default_format="json")

    cu = sub.add_parser("curve", parents=[common])
    cu.add_argument("kind", choices=["tate", "raynaud", "rr", "witness"])
    cu.add_argument("--p", type=int, default=3)
    cu.add_argument("--e", type=int, default=1)
    cu.add_argument("--g", type=int, default=0)
    cu.add_argument("--deg", type=int, default=0)
    cu.add_argument("--dz", type=int, default=0)
    cu.add_argument("--D", type=int, default=0)
    cu.add_argument("--genus", type=int, default=None)
    cu.add_argument("--val", action="append", help="valuation at infinity, e.g. y=-3")
    cu.set_defaults(func=cmd_curve, default_format="json")

    e = sub.add_parser("eval", parents=[common, surface])
    e.add_argument("expr")
    e.add_argument("--c1", default=None, help="c1(E) as a divisor expression")
    e.add_argument("--c2", default="0")
    e.add_argument("--mode", choices=["paper", "geom", "both"], default="both")
    e.set_defaults(func=cmd_eval, default_format="json")

    f = sub.add_parser("fano-bidegree", parents=[common])
    f.add_argument("--p", type=int, required=True)
    f.add_argument("--n", type=int, required=True)
    f.set_defaults(func=cmd_fano_bidegree, default_format="json")
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    fmt = args.format or args.default_format
    args.format = fmt
    try:
        doc, text, code = args.func(args)
    except FanoForgeError as exc:
        kind = type(exc).__name__
        if fmt == "json":
            print(dumps({"error": kind, "message": str(exc), "exit_code": exc.exit_code}))
        else:
            print(f"error ({kind}): {exc}", file=sys.stderr)
        return exc.exit_code
    except (ValueError, ZeroDivisionError) as exc:
        if fmt == "json":
            print(dumps({"error": "InvalidInput", "message": str(exc), "exit_code": 2}))
        else:
            print(f"error (InvalidInput): {exc}", file=sys.stderr)
        return 2
    if fmt == "json":
        print(dumps(doc))
    else:
        print(text if text is not None else to_text(doc))
    return code


if __name__ == "__main__":
    sys.exit(main())
