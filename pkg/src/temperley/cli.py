"""Command-line interface: ``temperley <subcommand> ...``.

Maps are read with ``--in``, which takes a file in the text graph format
or the name of a built-in fixture (``c4``, ``grid23``, ...).  ``gen``
writes region maps; a region's designated v* and f* go into a comment
header, which ``--in`` picks up as defaults for ``--root``/``--fstar``.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import secrets
import sys
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

from . import closed_form, exact_count, fixtures, heights, regions, render, sampler, square_octagon
from .bijection import (BijectionError, matching_to_tree, parse_matching, parse_tree, rebase_matching,
                        tree_to_matching)
from .overlay import build_overlay, restrict
from .planar_map import MapError, PlanarMap, format_map, parse_map

SCHEMA = "temperley/1"
HEADER = re.compile(r"#\s*region\s+(\S+)\s+params=(\S*)\s+vstar=(\d+)\s+fstar=(\d+)")


class UsageError(Exception):
    pass


class VerificationFailed(Exception):
    pass


# -- output ----------------------------------------------------------------

def _jsonable(x):
    if isinstance(x, bool) or x is None or isinstance(x, (str, float)):
        return x
    if isinstance(x, int):
        return str(x)           # no 64-bit truncation downstream
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return str(x)


class Output:
    def __init__(self, args):
        self.fmt = args.format
        self.path = args.out
        self.text: List[str] = []
        self.data: Dict[str, Any] = {}

    def emit(self, text: str, **data):
        self.text.append(text.rstrip("\n"))
        self.data.update(data)

    def flush(self, command: str):
        if self.fmt == "json":
            body = json.dumps({"schema": SCHEMA, "data": {"command": command, **_jsonable(self.data)}},
                              indent=2, sort_keys=True) + "\n"
        else:
            body = "\n".join(self.text) + "\n" if self.text else ""
        if self.path:
            with open(self.path, "w", encoding="utf-8") as fh:
                fh.write(body)
        else:
            sys.stdout.write(body)


def _q(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# -- inputs ----------------------------------------------------------------

class Loaded:
    def __init__(self, m: PlanarMap, v_star: Optional[int] = None, f_star: Optional[int] = None):
        self.map, self.v_star, self.f_star = m, v_star, f_star


def load_map(spec: Optional[str]) -> Loaded:
    if spec is None:
        raise UsageError("--in is required")
    if os.path.exists(spec):
        with open(spec, encoding="utf-8") as fh:
            text = fh.read()
        m = parse_map(text)
        hit = HEADER.search(text)
        if hit:
            return Loaded(m, int(hit.group(3)), int(hit.group(4)))
        return Loaded(m)
    if spec in fixtures.FIXTURES:
        return Loaded(fixtures.FIXTURES[spec]())
    raise UsageError(f"no such file or fixture: {spec}")


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(str(exc))


def _pair(text: str, what: str) -> Tuple[int, int]:
    try:
        a, b = (int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"{what} must look like A,B")
    return a, b


def _root(args, ld: Loaded) -> int:
    r = args.root if args.root is not None else ld.v_star
    if r is None:
        raise UsageError("--root is required")
    return r


def _fstar(args, ld: Loaded) -> int:
    if args.fstar is not None:
        return args.fstar
    if ld.f_star is not None:
        return ld.f_star
    return ld.map.outer_face


def _seed(args) -> int:
    if args.seed is None:
        args.seed = secrets.randbits(64)
        print(f"seed={args.seed}", file=sys.stderr)
    if not 0 <= args.seed < 2 ** 64:
        raise UsageError("--seed must be a 64-bit unsigned integer")
    return args.seed


# -- subcommands -----------------------------------------------------------

def cmd_gen(args, out: Output):
    name = args.family
    if name in fixtures.FIXTURES:
        m = fixtures.FIXTURES[name]()
        out.emit(format_map(m), map=format_map(m))
        return
    try:
        r = regions.generate(name, args.l, args.m)
    except regions.BadParameters as exc:
        raise UsageError(str(exc))
    params = ",".join(str(p) for p in r.params)
    text = f"# region {r.family} params={params} vstar={r.v_star} fstar={r.f_star}\n" + format_map(r.map)
    out.emit(text, map=format_map(r.map), family=r.family, params=list(r.params),
             v_star=r.v_star, f_star=r.f_star)


def cmd_overlay(args, out: Output):
    ld = load_map(args.inp)
    h = build_overlay(ld.map)
    if args.root is not None or args.fstar is not None:
        h = restrict(h, _root(args, ld), _fstar(args, ld))
    out.emit(h.to_text(), overlay=h.to_text(), incident=h.incident_flag)


def cmd_count_trees(args, out: Output):
    ld = load_map(args.inp)
    c = exact_count.count_arborescences(ld.map, _root(args, ld))
    out.emit(_q(c), count=c)


def cmd_count_matchings(args, out: Output):
    ld = load_map(args.inp)
    h = build_overlay(ld.map)
    if args.root is not None or ld.v_star is not None:
        h = restrict(h, _root(args, ld), _fstar(args, ld))
    c = exact_count.matching_weight_sum(h)
    out.emit(_q(c), count=c, incident=h.incident_flag)


def _restricted(args, ld):
    v, f = _root(args, ld), _fstar(args, ld)
    return v, f, restrict(build_overlay(ld.map), v, f)


def cmd_biject(args, out: Output):
    ld = load_map(args.inp)
    v, f, h = _restricted(args, ld)
    if args.matching:
        t = matching_to_tree(parse_matching(_read(args.matching)), h)
        out.emit(t.to_text(), tree=t.to_text(), weight=t.weight(ld.map))
        return
    if args.tree:
        t = parse_tree(_read(args.tree))
    else:
        t, _ = sampler.wilson_sample(ld.map, v, _seed(args))
    mt = tree_to_matching(t, h)
    out.emit(mt.to_text(), matching=mt.to_text(), tree=t.to_text(), weight=mt.weight)


def cmd_rebase(args, out: Output):
    ld = load_map(args.inp)
    frm, to = _pair(args.frm, "--from"), _pair(args.to, "--to")
    mt = parse_matching(_read(args.matching))
    new = rebase_matching(mt, frm, to, build_overlay(ld.map))
    out.emit(new.to_text(), matching=new.to_text(), weight=new.weight)


def cmd_sample(args, out: Output):
    ld = load_map(args.inp)
    root = _root(args, ld)
    s = sampler.WilsonSampler(ld.map, root, _seed(args))
    h = restrict(build_overlay(ld.map), root, _fstar(args, ld)) if args.matching else None
    texts = []
    for _ in range(args.count):
        t = s.sample()
        texts.append(tree_to_matching(t, h).to_text() if h is not None else t.to_text())
    print(s.stats.line(), file=sys.stderr)
    out.emit("\n".join(texts), samples=texts, steps=s.stats.total_steps, seed=args.seed)


def cmd_sqoct(args, out: Output):
    L, M = _pair(args.order, "--order")
    if L < 1 or M < 1:
        raise UsageError("order must be positive")
    if args.action == "count":
        c = square_octagon.count_matchings_squareoct(L, M)
        out.emit(_q(c), count=c)
    else:
        pairs = square_octagon.sample_squareoct_matching(L, M, _seed(args))
        lines = sorted("pair " + " ".join(sorted((_board_node(a), _board_node(b)))) for a, b in pairs)
        out.emit("\n".join(lines), pairs=lines, seed=args.seed)


def _board_node(n) -> str:
    kind, i, j, corner = n
    return f"{kind}({i},{j}).{corner}"


def cmd_formula(args, out: Output):
    name = args.name
    if name == "return_constant":
        r = sampler.return_constant()
        out.emit(f"{r:.15g}\nagm {sampler.return_constant_agm():.15g}", value=r)
        return
    if name == "twelve_six_four":
        R, N, bound = closed_form.twelve_six_four_series()
        probs = closed_form.twelve_six_four_probs()
        lines = [f"R {closed_form.mpmath.nstr(R, 20)}", f"terms {N}", f"tail {closed_form.mpmath.nstr(bound, 3)}"]
        lines += [closed_form.mpmath.nstr(p, 20) for p in probs]
        out.emit("\n".join(lines), R=str(R), terms=N, tail=str(bound), probs=[str(p) for p in probs])
        return
    if name not in closed_form.FORMULAS:
        raise UsageError(f"unknown formula {name!r}; choose from "
                         + ", ".join(sorted(closed_form.FORMULAS) + ["return_constant", "twelve_six_four"]))
    if args.m is None or (args.l is None and name not in closed_form.TRIANGLE_KINDS + ("hex",)):
        raise UsageError("--l and --m are required")
    try:
        res = closed_form.FORMULAS[name](args.l, args.m)
    except closed_form.BadParameters as exc:
        raise UsageError(str(exc))
    lines = [str(res.rounded), f"margin {res.margin:.3e}"]
    if args.raw:
        lines.insert(1, f"raw {closed_form.mpmath.nstr(res.raw, 30)}")
    out.emit("\n".join(lines), value=res.rounded, raw=str(res.raw), margin=res.margin)


def _height_field(args, ld):
    v, f, h = _restricted(args, ld)
    if args.matching:
        mt = parse_matching(_read(args.matching))
    else:
        t = parse_tree(_read(args.tree)) if args.tree else sampler.wilson_sample(ld.map, v, _seed(args))[0]
        mt = tree_to_matching(t, h)
    return heights.compute_heights(mt, h), mt


def cmd_height(args, out: Output):
    ld = load_map(args.inp)
    field, mt = _height_field(args, ld)
    lines = field.lines()
    if field.exact and args.radians:
        lines = [f"{ln} {field.radians(did):.12g}" for ln, did in zip(lines, sorted(field.heights, key=repr))]
    if args.svg:
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(render.render_svg(ld.map, matching=mt, heights=field))
    out.emit("\n".join(lines), facets=lines)


def cmd_winding(args, out: Output):
    ld = load_map(args.inp)
    root = _root(args, ld)
    t = parse_tree(_read(args.tree)) if args.tree else sampler.wilson_sample(ld.map, root, _seed(args))[0]
    to = args.to if args.to is not None else root
    cont = args.cont
    if cont is None and to == root:
        # default continuation at the root: next edge counterclockwise after the arrival
        path = heights.tree_path(t, ld.map, args.frm, to)
        if path:
            cont = ld.map.rot_succ(path[-1] ^ 1)
    turns = heights.winding_turns(t, ld.map, args.frm, to, cont)
    h = restrict(build_overlay(ld.map), root, _fstar(args, ld))
    field = heights.compute_heights(tree_to_matching(t, h), h)
    hv = heights.winding_heights(t, ld.map, args.frm, to, cont, field)
    out.emit(f"turns {turns}\nheights {hv}\nagree {'yes' if turns == hv else 'no'}",
             turns=turns, heights=hv, agree=turns == hv)
    if turns != hv:
        raise VerificationFailed("winding and height difference disagree")


def cmd_render(args, out: Output):
    ld = load_map(args.inp)
    decor = {}
    if args.tree:
        decor["tree"] = parse_tree(_read(args.tree))
    if args.matching:
        decor["matching"] = parse_matching(_read(args.matching))
    text = render.render(ld.map, args.style, **decor)
    out.emit(text, picture=text)


def cmd_verify(args, out: Output):
    from .verify import run_checks

    results = run_checks(quick=args.quick)
    lines = [f"{'ok  ' if ok else 'FAIL'} {name}: {detail}" for name, ok, detail in results]
    out.emit("\n".join(lines), checks=[{"name": n, "ok": ok, "detail": d} for n, ok, d in results])
    if not all(ok for _, ok, _ in results):
        raise VerificationFailed(f"{sum(not ok for _, ok, _ in results)} check(s) failed")


# -- parser ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS,
                        help="64-bit unsigned seed (default: fresh entropy, printed to stderr)")
    common.add_argument("--out", default=argparse.SUPPRESS, help="write output here instead of stdout")
    common.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)

    p = argparse.ArgumentParser(prog="temperley", parents=[common],
                                description="Trees, matchings and heights on plane maps.")
    sub = p.add_subparsers(dest="command", required=True)

    def cmd(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=fn)
        return sp

    def map_args(sp, root=True, fstar=True):
        sp.add_argument("--in", dest="inp", help="graph file or fixture name")
        if root:
            sp.add_argument("--root", "--vstar", dest="root", type=int, default=None)
        if fstar:
            sp.add_argument("--fstar", type=int, default=None)

    sp = cmd("gen", cmd_gen, "write a region or fixture map")
    sp.add_argument("family", help="region family or fixture name")
    sp.add_argument("--l", type=int)
    sp.add_argument("--m", type=int)

    map_args(cmd("overlay", cmd_overlay, "print H(G) or H(v*, f*)"))
    map_args(cmd("count-trees", cmd_count_trees, "Matrix-Tree count"), fstar=False)
    map_args(cmd("count-matchings", cmd_count_matchings, "weighted matching sum of the overlay"))

    sp = cmd("biject", cmd_biject, "tree -> matching (or back with --matching)")
    map_args(sp)
    sp.add_argument("--tree", help="tree file; default: sample one")
    sp.add_argument("--matching", help="matching file to map back to a tree")

    sp = cmd("rebase", cmd_rebase, "move a matching to another (v*, f*)")
    map_args(sp, root=False, fstar=False)
    sp.add_argument("--matching", required=True)
    sp.add_argument("--from", dest="frm", required=True, help="old v,f")
    sp.add_argument("--to", required=True, help="new v,f")

    sp = cmd("sample", cmd_sample, "Wilson samples")
    map_args(sp)
    sp.add_argument("--count", type=int, default=1)
    sp.add_argument("--matching", action="store_true", help="print matchings instead of trees")

    sp = cmd("sqoct", cmd_sqoct, "square-octagon boards")
    sp.add_argument("action", choices=("count", "sample"))
    sp.add_argument("--order", required=True, help="L,M")

    sp = cmd("formula", cmd_formula, "closed-form product")
    sp.add_argument("name")
    sp.add_argument("--l", type=int)
    sp.add_argument("--m", type=int)
    sp.add_argument("--raw", action="store_true")

    sp = cmd("height", cmd_height, "height function of a matching")
    map_args(sp)
    sp.add_argument("--tree")
    sp.add_argument("--matching")
    sp.add_argument("--radians", action="store_true")
    sp.add_argument("--svg", help="also write an SVG overlay here")

    sp = cmd("winding", cmd_winding, "winding of a tree path vs height difference")
    map_args(sp)
    sp.add_argument("--tree")
    sp.add_argument("--from", dest="frm", type=int, required=True)
    sp.add_argument("--to", type=int, default=None, help="ancestor of --from (default: root)")
    sp.add_argument("--cont", type=int, default=None, help="half-edge leaving --to")

    sp = cmd("render", cmd_render, "SVG or ASCII drawing")
    map_args(sp, root=False, fstar=False)
    sp.add_argument("--tree")
    sp.add_argument("--matching")
    sp.add_argument("--style", choices=("svg", "ascii"), default="svg")

    sp = cmd("verify", cmd_verify, "run the cross-check suite")
    sp.add_argument("--quick", action="store_true", help="skip the slower checks")
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    for name, default in (("seed", None), ("out", None), ("format", "text")):
        if not hasattr(args, name):
            setattr(args, name, default)
    out = Output(args)
    status = 0
    try:
        args.func(args, out)
    except VerificationFailed as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        status = 1
    except (UsageError, MapError, BijectionError, heights.HeightError, sampler.Unreachable,
            exact_count.TooLarge, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    out.flush(args.command)
    return status


if __name__ == "__main__":
    sys.exit(main())
