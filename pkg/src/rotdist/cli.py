"""Command-line front end: ``rotdist dist|verify|nf|family``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Optional

from . import distances as D
from .errors import NotDefined, ParameterViolation, ParseError, ResourceCap, RotDistError, SizeMismatch
from .families import FAMILIES, FamilyInstance, longra
from .groupf import TreePair, pair_of_word, partial_reduce, to_unique_normal_form, word_of_pair
from .rotations import Word, g_table_conformance
from .trees import caret_count, parse_tree, render_tree

EXIT_OK, EXIT_UNDEFINED, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _emit(payload: dict, as_json: bool, text: str) -> None:
    if as_json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _parse_range(text: str) -> range:
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return range(int(lo), int(hi) + 1)
        k = int(text)
        return range(k, k + 1)
    except ValueError:
        raise InputError(f"bad range {text!r}; use N or LO..HI") from None


def _tree(text: str, flag: str):
    try:
        return parse_tree(text)
    except ParseError as exc:
        raise InputError(f"{flag}: {exc}") from None


def _genset(text: str) -> D.GenSet:
    try:
        return D.GenSet.parse(text)
    except (ParseError, ValueError) as exc:
        raise InputError(f"--gens: {exc}") from None


def _letters(w: Optional[Word]) -> Optional[list]:
    return None if w is None else [str(g) for g in w]


# --- dist ---------------------------------------------------------------------------------


def _dist_genset(args) -> D.GenSet:
    if args.metric == "rr":
        if args.gens not in (None, "x0,x1"):
            raise InputError("--metric rr fixes the generating set to x0,x1")
        return D.RR
    if args.metric == "ra":
        if args.gens not in (None, "right-all"):
            raise InputError("--metric ra fixes the generating set to right-all")
        return D.GenSet.all_right_arm()
    if args.metric == "r":
        return D.GenSet.all_nodes()
    if args.gens is None:
        raise InputError(f"--metric {args.metric} needs --gens")
    S = _genset(args.gens)
    if S.mode is not D.Mode.FINITE:
        raise InputError(f"--metric {args.metric} needs a finite generating set")
    if args.metric == "rra" and S.left_levels:
        raise InputError("--metric rra takes right-arm levels only; use rs for y generators")
    return S


def cmd_dist(args) -> int:
    t1, t2 = _tree(args.t1, "--t1"), _tree(args.t2, "--t2")
    n1, n2 = caret_count(t1), caret_count(t2)
    if n1 != n2:
        raise InputError(f"trees have {n1} and {n2} carets")
    S = _dist_genset(args)
    exact = args.exact or ("formula" if args.metric in ("ra", "rra") else "bfs")
    if exact == "formula" and args.metric not in ("ra", "rra", "rr"):
        raise InputError(f"no formula for --metric {args.metric}; use --exact bfs")

    cache = D.DistanceCache(args.cache) if args.cache else None
    key = (render_tree(t1), render_tree(t2))
    res: Optional[D.DistanceResult] = None
    if exact == "formula" and S.mode is D.Mode.ALL_RIGHT_ARM:
        res = D.d_ra(t1, t2)
    elif exact == "formula":
        # definedness is decided exactly; the distance itself still needs the oracle
        if not D.rra_defined(t1, t2, S):
            res = D.DistanceResult(False, method="formula")
    if res is None and cache is not None and not args.witness:
        hit, d = cache.lookup(n1, S, *key)
        if hit:
            res = D.DistanceResult(d is not None, d, method="cache")
    if res is None:
        res = D.bfs_distance(t1, t2, S, cap=args.cap)
        if cache is not None:
            cache.store(n1, S, {key: res.distance})

    witness = res.witness if args.witness else None
    payload = {"n": n1, "genset": str(S), "defined": res.defined,
               "distance": res.distance, "witness": _letters(witness)}
    lines = [f"n = {n1}", f"genset = {S}", f"defined = {str(res.defined).lower()}"]
    if res.defined:
        lines.append(f"distance = {res.distance}  ({res.method})")
        if res.upper_bound is not None:
            lines.append(f"upper bound = {res.upper_bound}")
        if witness is not None:
            lines.append(f"witness = {witness if len(witness) else '(empty)'}")
    _emit(payload, args.json, "\n".join(lines))
    return EXIT_OK if res.defined else EXIT_UNDEFINED


# --- verify -------------------------------------------------------------------------------


def _family_from_args(args) -> FamilyInstance:
    if args.name is None:
        raise InputError("--name is required")
    if args.name not in FAMILIES:
        raise InputError(f"unknown family {args.name!r}; choose from {', '.join(FAMILIES)}")
    try:
        if args.name == "badword":
            return FAMILIES["badword"](_need(args, "m"), _need(args, "n"))
        if args.name in ("longra", "discovered"):
            return FAMILIES[args.name](_need(args, "n"))
        return FAMILIES[args.name](_need(args, "I"), _need(args, "m"), args.J)
    except ParameterViolation as exc:
        raise InputError(str(exc)) from None


def _need(args, name: str) -> int:
    v = getattr(args, name)
    if v is None:
        raise InputError(f"--{name} is required for family {args.name}")
    try:
        return int(v)
    except ValueError:
        raise InputError(f"--{name} must be a single integer here") from None


def cmd_verify(args) -> int:
    rows = []
    check = args.check
    if check == "family":
        inst = _family_from_args(args)
        r = D.check_lower_bound_family(inst, cap=args.cap)
        rows.append({"check": check, "family": inst.name, "params": r.params, "n": r.n, "genset": r.genset,
                     "distance": r.distance, "lower": r.lower, "upper": r.upper, "passed": r.passed})
    elif check == "gtables":
        ns = _parse_range(args.n or "1..8")
        rep = g_table_conformance(ns.stop - 1, ns.start)
        rows.append({"check": check, "n": f"{ns.start}..{ns.stop - 1}", "checked": rep.checked,
                     "matched": rep.matched, "mismatches": len(rep.mismatches),
                     "uncovered": dict(sorted(rep.uncovered.items())), "passed": rep.passed})
    else:
        ns = _parse_range(args.n or "3..6")
        for n in ns:
            if check in ("upper-4n8", "sharp-rr"):
                S = D.RR if check == "sharp-rr" else _genset(args.gens or "x0,x1")
                rep = D.check_upper_bounds(n, S, cap=args.cap)
                ok = rep.passed and (check != "sharp-rr" or rep.maximum == 4 * n - 8)
                rows.append({"check": check, "n": n, "genset": rep.genset, "max": rep.maximum,
                             "bound": rep.bound, "violations": rep.violations, "passed": ok})
            elif check == "ra-2n2":
                rep = D.check_upper_bounds(n, D.GenSet.all_right_arm(), cap=args.cap)
                ok = rep.passed and rep.maximum == 2 * n - 2
                if n >= 3:
                    inst = longra(n)
                    ok = ok and D.d_ra(inst.pair.t1, inst.pair.t2).distance == 2 * n - 2
                rows.append({"check": check, "n": n, "genset": rep.genset, "max": rep.maximum,
                             "bound": rep.bound, "violations": rep.violations, "passed": ok})
            elif check == "defined-vs-reach":
                S = _genset(args.gens or "x0,x2")
                if S.left_levels:
                    raise InputError("defined-vs-reach takes right-arm levels only")
                rep = D.check_definedness(n, S, cap=args.cap)
                rows.append({"check": check, "n": n, "genset": rep.genset, "pairs": rep.pairs,
                             "defined": rep.defined, "mismatches": rep.mismatches, "passed": rep.passed})
    ok = all(r["passed"] for r in rows)
    text = []
    for r in rows:
        fields = "  ".join(f"{k}={v}" for k, v in r.items() if k not in ("check", "passed"))
        text.append(f"{'PASS' if r['passed'] else 'FAIL'}  {r['check']}  {fields}")
    _emit({"check": check, "passed": ok, "results": rows}, args.json, "\n".join(text))
    return EXIT_OK if ok else EXIT_UNDEFINED


# --- nf -----------------------------------------------------------------------------------


def cmd_nf(args) -> int:
    if args.word is not None:
        if args.t1 is not None or args.t2 is not None:
            raise InputError("give either --word or --t1/--t2")
        try:
            w = Word.parse(args.word)
        except ParseError as exc:
            raise InputError(f"--word: {exc}") from None
        if any(g.family == "y" for g in w):
            w = w.expand_y()
        unique, partial = to_unique_normal_form(w), partial_reduce(w)
        pair = pair_of_word(unique)
    else:
        if args.t1 is None or args.t2 is None:
            raise InputError("nf needs --word or both --t1 and --t2")
        t1, t2 = _tree(args.t1, "--t1"), _tree(args.t2, "--t2")
        try:
            pair = TreePair(t1, t2)
        except SizeMismatch as exc:
            raise InputError(str(exc)) from None
        raw = word_of_pair(pair)
        unique, partial = to_unique_normal_form(raw), partial_reduce(raw)
    payload = {"unique": str(unique), "partial": str(partial), "length": unique.length}
    if args.word is not None:
        payload["t1"], payload["t2"] = render_tree(pair.t1), render_tree(pair.t2)
    text = [f"unique normal form = {str(unique) or 'identity'}",
            f"partially reduced  = {str(partial) or 'identity'}",
            f"length = {unique.length}"]
    if args.word is not None:
        text += [f"t1 = {payload['t1']}", f"t2 = {payload['t2']}"]
    _emit(payload, args.json, "\n".join(text))
    return EXIT_OK


# --- family ---------------------------------------------------------------------------------


def cmd_family(args) -> int:
    inst = _family_from_args(args)
    payload = inst.describe()
    if args.certify:
        r = D.check_lower_bound_family(inst, cap=args.cap)
        payload["distance"] = r.distance
        payload["certified"] = r.passed
    text = [f"{k} = {v}" for k, v in payload.items()]
    _emit(payload, args.json, "\n".join(text))
    if args.certify and not payload["certified"]:
        return EXIT_UNDEFINED
    return EXIT_OK


# --- entry point --------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rotdist", description="Restricted rotation distances between binary trees.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.add_argument("--cap", type=int, default=D.BFS_CAP, help="largest caret count for BFS")

    d = sub.add_parser("dist", help="distance between two trees")
    d.add_argument("--metric", choices=["rr", "ra", "rra", "rs", "r"], required=True)
    d.add_argument("--gens")
    d.add_argument("--t1", required=True)
    d.add_argument("--t2", required=True)
    d.add_argument("--exact", choices=["bfs", "formula"])
    d.add_argument("--witness", action="store_true")
    d.add_argument("--cache", metavar="DIR")
    common(d)
    d.set_defaults(func=cmd_dist)

    v = sub.add_parser("verify", help="exhaustive checks of bounds and tables")
    v.add_argument("--check", required=True,
                   choices=["upper-4n8", "ra-2n2", "sharp-rr", "gtables", "defined-vs-reach", "family"])
    v.add_argument("--n", help="N or LO..HI")
    v.add_argument("--gens")
    _family_args(v, with_n=False)
    v.add_argument("--cache", metavar="DIR")
    common(v)
    v.set_defaults(func=cmd_verify)

    nf = sub.add_parser("nf", help="normal forms of a word or a tree pair")
    nf.add_argument("--word")
    nf.add_argument("--t1")
    nf.add_argument("--t2")
    nf.add_argument("--json", action="store_true")
    nf.set_defaults(func=cmd_nf)

    f = sub.add_parser("family", help="extremal family instances")
    _family_args(f, with_n=True)
    f.add_argument("--certify", action="store_true", help="measure the BFS distance")
    common(f)
    f.set_defaults(func=cmd_family)
    return p


def _family_args(sp, with_n: bool) -> None:
    sp.add_argument("--name", choices=sorted(FAMILIES))
    sp.add_argument("--m", type=int)
    sp.add_argument("--I", type=int)
    sp.add_argument("--J", type=int)
    if with_n:
        sp.add_argument("--n", type=int)


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ResourceCap, SizeMismatch, ParameterViolation, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NotDefined as exc:
        print(f"undefined: {exc}", file=sys.stderr)
        return EXIT_UNDEFINED
    except RotDistError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
