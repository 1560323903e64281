"""Named reference maps shipped with the package.

Each entry is one JSON map file under ``data/catalog`` plus a record in
``manifest.json`` giving its provenance and the properties it must have.
Entries marked ``derived`` carry the command that regenerates them and a
machine-readable ``recipe`` that :func:`regenerate` replays.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources

from .typearith import as_type
from .maps import PolyhedralMap, dumps, euler_characteristic, is_orientable, loads, semi_equivelar_type


class CatalogError(KeyError):
    def __str__(self) -> str:
        return self.args[0]


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    file: str
    provenance: str  # "reference" (transcribed face list) or "derived"
    map: PolyhedralMap
    expected: dict = field(default_factory=dict)
    command: str | None = None
    note: str | None = None

    def check(self) -> list[str]:
        """Mismatches between the stored map and its expected properties."""
        m = self.map
        exp = self.expected
        bad = []
        t = semi_equivelar_type(m)
        if "type" in exp and t != as_type(exp["type"]):
            bad.append(f"type {t} != {exp['type']}")
        if "n" in exp and m.f0 != exp["n"]:
            bad.append(f"n {m.f0} != {exp['n']}")
        if "chi" in exp and euler_characteristic(m) != exp["chi"]:
            bad.append(f"chi {euler_characteristic(m)} != {exp['chi']}")
        if "orientable" in exp and is_orientable(m) != exp["orientable"]:
            bad.append(f"orientable {is_orientable(m)} != {exp['orientable']}")
        return bad


def _root():
    return resources.files("semmap").joinpath("data", "catalog")


def manifest() -> list[dict]:
    return json.loads(_root().joinpath("manifest.json").read_text(encoding="utf-8"))["entries"]


def names() -> list[str]:
    return [e["name"] for e in manifest()]


def list_entries() -> list[tuple[str, str]]:
    return [(e["name"], e["provenance"]) for e in manifest()]


def raw_text(name: str) -> str:
    rec = _record(name)
    return _root().joinpath(rec["file"]).read_text(encoding="utf-8")


def _record(name: str) -> dict:
    for e in manifest():
        if e["name"] == name:
            return e
    raise CatalogError(f"unknown catalog entry {name!r}; available: {', '.join(names())}")


def get(name: str) -> CatalogEntry:
    rec = _record(name)
    m = loads(_root().joinpath(rec["file"]).read_text(encoding="utf-8"))
    entry = CatalogEntry(
        name=rec["name"],
        file=rec["file"],
        provenance=rec["provenance"],
        map=m,
        expected=rec.get("expected", {}),
        command=rec.get("command"),
        note=rec.get("note"),
    )
    bad = entry.check()
    if bad:
        raise CatalogError(f"catalog entry {name!r} does not match its manifest: {'; '.join(bad)}")
    return entry


def find_file(basename: str) -> str | None:
    """Catalog entry name whose data file is ``basename``."""
    for e in manifest():
        if e["file"] == basename:
            return e["name"]
    return None


# -- regeneration of derived entries -------------------------------------------

# decagon k of a [3^4,10] representative is relabelled to this block
_GON_BLOCKS = (1, 21, 11)


def place_gons(m: PolyhedralMap, g: int, starts=_GON_BLOCKS) -> PolyhedralMap:
    """Relabel so the g-gons, taken in face-list order, become
    [s, s+1, ..., s+g-1] for the successive ``starts``; the remaining
    vertices keep their relative order after the largest block."""
    gons = [f for f in m.faces if len(f) == g]
    if len(gons) != len(starts):
        raise CatalogError(f"expected {len(starts)} faces of size {g}, found {len(gons)}")
    mapping: dict[int, int] = {}
    for f, s0 in zip(gons, starts):
        for i, v in enumerate(f):
            mapping[v] = s0 + i
    nxt = max(starts) + g
    for v in m.labels:
        if v not in mapping:
            mapping[v] = nxt
            nxt += 1
    faces = [tuple(mapping[v] for v in f) for f in m.faces]
    big = sorted((f for f in faces if len(f) == g), key=min)
    rest = sorted(tuple(sorted(f)) if len(f) == 3 else f for f in faces if len(f) != g)
    return PolyhedralMap(big + rest, name=m.name)


def regenerate(name: str) -> PolyhedralMap:
    """Rebuild a derived entry from its recipe."""
    rec = _record(name)
    recipe = rec.get("recipe")
    if rec["provenance"] != "derived" or recipe is None:
        raise CatalogError(f"catalog entry {name!r} is not derived")
    op = recipe["op"]
    if op == "cover":
        from .covering import build_cover

        base = get(recipe["base"]).map
        m = build_cover(base, tuple(recipe["cycle"]), recipe["m"], predict=False).cover
    elif op == "classify":
        from .classify import ClassifyOptions, classify_type

        res = classify_type(recipe["type"], recipe["chi"], ClassifyOptions(mode=recipe.get("mode", "auto")))
        m = res.maps[recipe["index"]]
        if recipe.get("mirror"):
            m = m.mirror()
        if "gon" in recipe:
            m = place_gons(m, recipe["gon"])
    else:
        raise CatalogError(f"unknown recipe op {op!r}")
    return PolyhedralMap(m.faces, name=name)


def regenerated_text(name: str) -> str:
    return dumps(regenerate(name), indent=2)
