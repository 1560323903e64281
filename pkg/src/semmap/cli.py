"""Command-line front end: ``semmap <command> ...``.

Exit codes: 0 success, 1 domain failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from . import catalog as cat
from .blocks import block_certificate, block_cycles, blocks
from .classify import BudgetExhausted, ClassifyError, ClassifyOptions, classify_type
from .covering import CutError, admissible_cycles, build_cover, parse_cycle, side_swap_symmetry
from .maps import (
    MapError,
    PolyhedralMap,
    dumps,
    euler_characteristic,
    is_orientable,
    load,
    semi_equivelar_type,
    to_dict,
)
from .symmetry import (
    are_isomorphic,
    automorphism_group,
    canonical_certificate,
    identify_group,
    is_chiral,
    vertex_orbits,
)
from .typearith import EnumerationParams, TypeError_, enumerate_types, parse_type


class DomainError(Exception):
    pass


def _load_map(arg: str) -> PolyhedralMap:
    p = Path(arg)
    if p.exists():
        return load(p)
    # fall back to the packaged catalog, by entry name or by file name
    name = arg if arg in cat.names() else cat.find_file(p.name)
    if name is None:
        raise DomainError(f"no such map file or catalog entry: {arg}")
    return cat.get(name).map


def _summary(m: PolyhedralMap) -> dict:
    t = semi_equivelar_type(m)
    return {
        "name": m.name,
        "f_vector": [m.f0, m.f1, m.f2],
        "chi": euler_characteristic(m),
        "type": str(t) if t else None,
        "orientable": is_orientable(m),
    }


def _emit(args, text: str, payload) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


# -- commands -----------------------------------------------------------------


def cmd_validate(args):
    m = _load_map(args.map)
    s = _summary(m)
    text = (f"valid polyhedral map: f=({s['f_vector'][0]},{s['f_vector'][1]},{s['f_vector'][2]}) "
            f"chi={s['chi']} {'orientable' if s['orientable'] else 'non-orientable'}")
    if s["type"]:
        text += f" type={s['type']}"
    _emit(args, text, {"valid": True, **s})
    return 0


def cmd_type(args):
    m = _load_map(args.map)
    s = _summary(m)
    if s["type"] is None:
        raise DomainError("map is not semi-equivelar: vertex types differ")
    text = "\n".join([
        s["type"],
        f"chi={s['chi']}",
        f"n={m.f0}",
        "orientable" if s["orientable"] else "non-orientable",
    ])
    _emit(args, text, {"type": s["type"], "chi": s["chi"], "n": m.f0, "orientable": s["orientable"]})
    return 0


def _group_payload(G):
    gid = identify_group(G)
    return gid, {
        "order": G.order,
        "group": str(gid),
        "tag": gid.tag,
        "generators": [str(g) for g in G.generators()],
    }


def cmd_aut(args):
    m = _load_map(args.map)
    G = automorphism_group(m)
    gid, payload = _group_payload(G)
    lines = [f"|Aut|={G.order}", f"group={gid}"]
    lines += [f"generator {g}" for g in payload["generators"]]
    if args.elements:
        payload["elements"] = [str(g) for g in G]
        lines += [f"  {g}" for g in G]
    _emit(args, "\n".join(lines), payload)
    return 0


def cmd_iso(args):
    a = _load_map(args.a)
    b = _load_map(args.b)
    f = are_isomorphic(a, b)
    if f is None:
        _emit(args, "not isomorphic", {"isomorphic": False})
        return 1
    pairs = sorted(f.items())
    _emit(args, "isomorphic\n" + " ".join(f"{x}->{y}" for x, y in pairs),
          {"isomorphic": True, "map": [[x, y] for x, y in pairs]})
    return 0


def cmd_orbits(args):
    m = _load_map(args.map)
    orbs = vertex_orbits(m)
    trans = len(orbs) == 1
    lines = [f"{len(orbs)} orbit(s); {'vertex-transitive' if trans else 'not vertex-transitive'}"]
    lines += ["{" + ",".join(map(str, o)) + "}" for o in orbs]
    _emit(args, "\n".join(lines), {"orbits": [list(o) for o in orbs], "vertex_transitive": trans})
    return 0


def cmd_enumerate(args):
    params = EnumerationParams(
        chi=args.chi,
        min_vertices=args.min_vertices,
        min_face_count=args.min_face_count,
        apply_paper_exclusions=not args.no_paper_exclusions,
        apply_patch_bound=args.patch_bound,
    )
    rows = enumerate_types(params, include_rejected=args.include_rejected)
    lines = [f"{'n':>5}  {'type':<28} faces  {'status'}"]
    for r in rows:
        fv = " ".join(f"x{s}={c}" for s, c in sorted((r.face_vector or {}).items()))
        lines.append(f"{r.n if r.n is not None else '-':>5}  {str(r.type):<28} {fv}  {r.rejection or 'ok'}")
    lines.append(f"{sum(r.accepted for r in rows)} admissible type(s)")
    _emit(args, "\n".join(lines), {"chi": args.chi, "entries": [r.as_dict() for r in rows]})
    return 0


def cmd_cycles(args):
    m = _load_map(args.map)
    cyc = admissible_cycles(m, args.max_len)
    _emit(args, "\n".join(str(c) for c in cyc) + f"\n{len(cyc)} admissible cycle(s)",
          {"cycles": [list(c.vertices) for c in cyc]})
    return 0


def cmd_cover(args):
    m = _load_map(args.map)
    cycle = parse_cycle(args.cycle)
    rep = build_cover(m, cycle, args.m, predict=args.m >= 2)
    c = rep.cover
    s = _summary(c)
    payload = {
        "m": args.m,
        "cycle": list(cycle.vertices),
        "cover": s,
        "deck_rotation": str(rep.deck_rotation),
        "deck_order": rep.deck_rotation.order(),
        "predicted_group": str(rep.predicted_group) if rep.predicted_group else None,
    }
    lines = [
        f"{args.m}-fold cover along {cycle}",
        f"f=({c.f0},{c.f1},{c.f2}) chi={s['chi']} type={s['type']} "
        f"{'orientable' if s['orientable'] else 'non-orientable'}",
        f"deck rotation {rep.deck_rotation} (order {rep.deck_rotation.order()})",
    ]
    if rep.predicted_group:
        lines.append(f"predicted group {rep.predicted_group}")
    if args.aut:
        G = automorphism_group(c)
        gid, gp = _group_payload(G)
        payload["aut"] = gp
        lines.append(f"|Aut|={G.order}")
        lines.append(str(gid))
    if args.swap:
        alpha = side_swap_symmetry(m, cycle)
        payload["side_swap"] = None if alpha is None else str(alpha)
        lines.append(f"side swap: {alpha if alpha is not None else 'none'}")
    if args.out:
        Path(args.out).write_text(dumps(c, indent=2), encoding="utf-8")
        lines.append(f"wrote {args.out}")
    if args.emit_map:
        payload["map"] = to_dict(c)
    _emit(args, "\n".join(lines), payload)
    return 0


def cmd_classify(args):
    t = parse_type(args.type)
    mode = "anchored" if args.anchored else "generic" if args.generic else "auto"
    opts = ClassifyOptions(mode=mode, budget=args.budget)
    try:
        res = classify_type(t, args.chi, opts)
    except BudgetExhausted as exc:
        raise DomainError(str(exc)) from None
    g = max(res.type.sizes)
    lines = [f"type {res.type} chi={res.chi} n={res.n} mode={res.mode}",
             f"{len(res.maps)} map(s) up to isomorphism, {res.oriented_count()} up to "
             f"orientation-preserving isomorphism ({res.nodes} search nodes)"]
    entries = []
    for i, m in enumerate(res.maps, 1):
        G = automorphism_group(m)
        info = {"index": i, "orientable": is_orientable(m), "chiral": is_chiral(m, G),
                "aut_order": G.order, "group": str(identify_group(G)), "f_vector": [m.f0, m.f1, m.f2],
                "certificate": hashlib.sha256(canonical_certificate(m)).hexdigest()[:16]}
        if g > 3 and g % 2 == 0:
            info["block_certificate"] = [list(c) for c in block_certificate(m, g)]
        entries.append(info)
        line = (f"  #{i}: |Aut|={G.order} {info['group']} "
                f"{'orientable' if info['orientable'] else 'non-orientable'}"
                f"{' chiral' if info['chiral'] else ''} cert={info['certificate']}")
        if "block_certificate" in info:
            line += f" blocks={info['block_certificate']}"
        lines.append(line)
        if args.emit_dir:
            os.makedirs(args.emit_dir, exist_ok=True)
            m2 = PolyhedralMap(m.faces, name=f"{res.type} #{i}")
            Path(args.emit_dir, f"map_{i:03d}.json").write_text(dumps(m2, indent=2), encoding="utf-8")
    _emit(args, "\n".join(lines), {"type": str(res.type), "chi": res.chi, "n": res.n,
                                   "mode": res.mode, "count": len(res.maps),
                                   "oriented_count": res.oriented_count(), "maps": entries})
    return 0


def cmd_blocks(args):
    m = _load_map(args.map)
    bl = blocks(m, args.g)
    cyc = block_cycles(m, args.g)
    cert = block_certificate(m, args.g) if bl else ()
    lines = [f"{len(bl)} block(s)"] + [f"  {b}" for b in bl]
    lines.append(f"{len(cyc)} block cycle(s)")
    for c in cyc:
        lines.append("  " + " - ".join(str(b) for b, _ in c))
    lines.append(f"certificate {list(map(list, cert))}")
    _emit(args, "\n".join(lines), {
        "blocks": [[b.a, b.b, b.c, b.d] for b in bl],
        "cycles": [[[b.a, b.b, b.c, b.d] for b, _ in c] for c in cyc],
        "certificate": [list(x) for x in cert],
    })
    return 0


def cmd_catalog(args):
    if args.name is None:
        rows = cat.list_entries()
        _emit(args, "\n".join(f"{n:<16} {p}" for n, p in rows),
              {"entries": [{"name": n, "provenance": p} for n, p in rows]})
        return 0
    try:
        e = cat.get(args.name)
    except cat.CatalogError as exc:
        raise DomainError(str(exc)) from None
    payload = {"name": e.name, "provenance": e.provenance, "expected": e.expected,
               "command": e.command, "map": to_dict(e.map)}
    text = "\n".join(x for x in [
        f"{e.name} ({e.provenance})",
        f"file {e.file}",
        "expected " + ", ".join(f"{k}={v}" for k, v in e.expected.items()),
        f"command {e.command}" if e.command else "",
    ] if x)
    _emit(args, text, payload)
    return 0


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    # the flags are accepted before or after the subcommand; SUPPRESS keeps a
    # subparser from resetting a value given to the main parser
    def common() -> argparse.ArgumentParser:
        c = argparse.ArgumentParser(add_help=False)
        c.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                       help="machine-readable output")
        c.add_argument("--no-banner", action="store_true", default=argparse.SUPPRESS,
                       help="omit the timestamp header")
        return c

    p = argparse.ArgumentParser(prog="semmap", description="Semi-equivelar maps on closed surfaces.",
                                parents=[common()])
    p.set_defaults(json=False, no_banner=False)
    p.add_argument("--version", action="version", version=f"semmap {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_, parents=[common()])
        sp.set_defaults(fn=fn)
        return sp

    sp = add("validate", cmd_validate, "check that a face list is a polyhedral map")
    sp.add_argument("map")
    sp = add("type", cmd_type, "vertex type, Euler characteristic and orientability")
    sp.add_argument("map")
    sp = add("aut", cmd_aut, "automorphism group")
    sp.add_argument("map")
    sp.add_argument("--elements", action="store_true", help="list every element")
    sp = add("iso", cmd_iso, "isomorphism test")
    sp.add_argument("a")
    sp.add_argument("b")
    sp = add("orbits", cmd_orbits, "vertex orbits of the automorphism group")
    sp.add_argument("map")
    sp = add("enumerate", cmd_enumerate, "admissible types for an Euler characteristic")
    sp.add_argument("--chi", type=int, required=True)
    sp.add_argument("--min-vertices", type=int, default=12)
    sp.add_argument("--min-face-count", type=int, default=3)
    sp.add_argument("--no-paper-exclusions", action="store_true",
                    help="keep types that are only excluded by the published list")
    sp.add_argument("--patch-bound", action="store_true", help="also apply the (3,q,3,q) patch bound")
    sp.add_argument("--include-rejected", action="store_true")
    sp = add("cycles", cmd_cycles, "cycles along which the map can be cut")
    sp.add_argument("map")
    sp.add_argument("--max-len", type=int, default=4)
    sp = add("cover", cmd_cover, "m-fold cyclic cover along a cycle")
    sp.add_argument("map")
    sp.add_argument("--cycle", required=True, help="comma-separated vertices, e.g. 0,6,10")
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--aut", action="store_true", help="compute and identify the cover's group")
    sp.add_argument("--swap", action="store_true", help="report the side-swapping involution")
    sp.add_argument("--out", help="write the cover as a JSON map file")
    sp.add_argument("--emit-map", action="store_true", help="include the cover in the JSON payload")
    sp = add("classify", cmd_classify, "all maps of a type up to isomorphism")
    sp.add_argument("--type", required=True)
    sp.add_argument("--chi", type=int, required=True)
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--anchored", action="store_true")
    g.add_argument("--generic", action="store_true")
    sp.add_argument("--budget", type=int, default=10**8)
    sp.add_argument("--emit-dir")
    sp = add("blocks", cmd_blocks, "blocks, block cycles and their certificate")
    sp.add_argument("map")
    sp.add_argument("--g", type=int, default=10)
    sp = add("catalog", cmd_catalog, "list or show packaged maps")
    sp.add_argument("name", nargs="?")
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not args.json and not args.no_banner:
        stamp = datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")
        print(f"# semmap {__version__} {stamp}")
    try:
        return args.fn(args)
    except (DomainError, MapError, CutError, ClassifyError, TypeError_, cat.CatalogError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
