"""JSON (de)serialization and DOT export.

JSON is the single source format; files carry a "kind" discriminator.
Dumps are deterministic: sorted keys, fixed separators, one trailing
newline, so identical inputs produce byte-identical files.
"""

from __future__ import annotations

import json

from .fincat import FinCat, FinFunctor, Mor
from .idx import Carrier, IndexedSmf
from .lens import DeltaLens, DiaLens, Retrofunctor
from .smult import FinFunction, Smf


class ParseError(ValueError):
    pass


def dumps(data) -> str:
    return json.dumps(data, sort_keys=True, separators=(",", ":")) + "\n"


# ---------------------------------------------------------------------------
# encoders


def fincat_to_json(cat: FinCat) -> dict:
    return {
        "kind": "fincat",
        "objects": list(cat.objects),
        "morphisms": [
            {"id": m, "src": mor.src, "tgt": mor.tgt}
            for m, mor in cat.morphisms.items()
        ],
        "identities": dict(cat.identity),
        "compose": [
            {"first": f, "then": g, "result": h}
            for (f, g), h in cat.compose.items()
        ],
    }


def functor_to_json(fun: FinFunctor) -> dict:
    return {
        "kind": "functor",
        "dom": fincat_to_json(fun.dom),
        "cod": fincat_to_json(fun.cod),
        "obj_map": dict(fun.obj_map),
        "mor_map": dict(fun.mor_map),
    }


def lens_to_json(l: DeltaLens) -> dict:
    return {
        "kind": "lens",
        "cat_a": fincat_to_json(l.cat_a),
        "cat_b": fincat_to_json(l.cat_b),
        "functor": {"obj_map": dict(l.f.obj_map), "mor_map": dict(l.f.mor_map)},
        "lifts": [
            {"object": a, "over": u, "lift": w}
            for (a, u), w in l.lift.items()
        ],
    }


def dialens_to_json(d: DiaLens) -> dict:
    return {
        "kind": "dialens",
        "cat_x": fincat_to_json(d.p.dom),
        "cat_a": fincat_to_json(d.p.cod),
        "cat_b": fincat_to_json(d.f.cod),
        "p": {"obj_map": dict(d.p.obj_map), "mor_map": dict(d.p.mor_map)},
        "f": {"obj_map": dict(d.f.obj_map), "mor_map": dict(d.f.mor_map)},
    }


def retrofunctor_to_json(r: Retrofunctor) -> dict:
    return {
        "kind": "retrofunctor",
        "cat_a": fincat_to_json(r.cat_a),
        "cat_b": fincat_to_json(r.cat_b),
        "obj_map": dict(r.obj_map),
        "lifts": [
            {"object": a, "over": u, "lift": w}
            for (a, u), w in r.lift.items()
        ],
    }


def smf_to_json(m: Smf) -> dict:
    return {
        "kind": "smf",
        "src": list(m.src),
        "carrier": list(m.carrier),
        "tgt": list(m.tgt),
        "s": dict(m.s.mapping),
        "t": dict(m.t.mapping),
        "sigma": dict(m.sigma.mapping),
    }


def indexed_smf_to_json(x: IndexedSmf) -> dict:
    return {
        "kind": "indexed_smf",
        "base": fincat_to_json(x.base),
        "objsets": {o: list(s) for o, s in x.obj_sets.items()},
        "carriers": {
            u: {
                "elems": list(c.elems),
                "s": dict(c.s),
                "t": dict(c.t),
                "sigma": dict(c.sigma),
            }
            for u, c in x.carriers.items()
        },
        "mu": [
            {
                "u": u,
                "v": v,
                "table": [
                    {"alpha": a, "beta": b, "result": r}
                    for (a, b), r in table.items()
                ],
            }
            for (u, v), table in x.mu.items()
        ],
    }


def to_json(value) -> dict:
    for cls, enc in (
        (DeltaLens, lens_to_json),
        (DiaLens, dialens_to_json),
        (Retrofunctor, retrofunctor_to_json),
        (IndexedSmf, indexed_smf_to_json),
        (Smf, smf_to_json),
        (FinFunctor, functor_to_json),
        (FinCat, fincat_to_json),
    ):
        if isinstance(value, cls):
            return enc(value)
    raise ParseError(f"no JSON encoding for {type(value).__name__}")


# ---------------------------------------------------------------------------
# decoders


def _require(data: dict, *keys):
    for key in keys:
        if key not in data:
            raise ParseError(f"missing key {key!r}")


def fincat_from_json(data: dict) -> FinCat:
    _require(data, "objects", "morphisms", "identities", "compose")
    try:
        morphisms = {m["id"]: Mor(m["src"], m["tgt"]) for m in data["morphisms"]}
        compose = {(e["first"], e["then"]): e["result"] for e in data["compose"]}
        return FinCat(data["objects"], morphisms, data["identities"], compose)
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed category data: {exc!r}")


def functor_from_json(data: dict, dom: FinCat | None = None,
                      cod: FinCat | None = None) -> FinFunctor:
    if dom is None:
        _require(data, "dom")
        dom = fincat_from_json(data["dom"])
    if cod is None:
        _require(data, "cod")
        cod = fincat_from_json(data["cod"])
    _require(data, "obj_map", "mor_map")
    return FinFunctor(dom, cod, data["obj_map"], data["mor_map"])


def lens_from_json(data: dict) -> DeltaLens:
    _require(data, "cat_a", "cat_b", "functor", "lifts")
    cat_a = fincat_from_json(data["cat_a"])
    cat_b = fincat_from_json(data["cat_b"])
    fun = functor_from_json(data["functor"], dom=cat_a, cod=cat_b)
    lift = {}
    for entry in data["lifts"]:
        _require(entry, "object", "over", "lift")
        lift[(entry["object"], entry["over"])] = entry["lift"]
    return DeltaLens(fun, lift)


def dialens_from_json(data: dict) -> DiaLens:
    _require(data, "cat_x", "cat_a", "cat_b", "p", "f")
    cat_x = fincat_from_json(data["cat_x"])
    cat_a = fincat_from_json(data["cat_a"])
    cat_b = fincat_from_json(data["cat_b"])
    p = functor_from_json(data["p"], dom=cat_x, cod=cat_a)
    f = functor_from_json(data["f"], dom=cat_a, cod=cat_b)
    return DiaLens(p, f)


def retrofunctor_from_json(data: dict) -> Retrofunctor:
    _require(data, "cat_a", "cat_b", "obj_map", "lifts")
    lift = {}
    for entry in data["lifts"]:
        _require(entry, "object", "over", "lift")
        lift[(entry["object"], entry["over"])] = entry["lift"]
    return Retrofunctor(fincat_from_json(data["cat_a"]),
                        fincat_from_json(data["cat_b"]),
                        data["obj_map"], lift)


def smf_from_json(data: dict) -> Smf:
    _require(data, "src", "carrier", "tgt", "s", "t", "sigma")
    return Smf(data["src"], data["carrier"], data["tgt"],
               data["s"], data["t"], data["sigma"])


def indexed_smf_from_json(data: dict) -> IndexedSmf:
    _require(data, "base", "objsets", "carriers", "mu")
    base = fincat_from_json(data["base"])
    carriers = {}
    for u, c in data["carriers"].items():
        _require(c, "elems", "s", "t", "sigma")
        carriers[u] = Carrier(c["elems"], c["s"], c["t"], c["sigma"])
    mu = {}
    for entry in data["mu"]:
        _require(entry, "u", "v", "table")
        mu[(entry["u"], entry["v"])] = {
            (row["alpha"], row["beta"]): row["result"]
            for row in entry["table"]
        }
    return IndexedSmf(base, data["objsets"], carriers, mu)


DECODERS = {
    "fincat": fincat_from_json,
    "functor": functor_from_json,
    "lens": lens_from_json,
    "dialens": dialens_from_json,
    "retrofunctor": retrofunctor_from_json,
    "smf": smf_from_json,
    "indexed_smf": indexed_smf_from_json,
}


def from_json(data: dict):
    if not isinstance(data, dict):
        raise ParseError("top-level JSON value must be an object")
    kind = data.get("kind")
    if kind not in DECODERS:
        raise ParseError(f"unknown or missing kind {kind!r}")
    return DECODERS[kind](data)


# ---------------------------------------------------------------------------
# DOT export


def _quote(name: str) -> str:
    return '"' + name.replace('"', '\\"') + '"'


def fincat_to_dot(cat: FinCat, name: str = "category") -> str:
    lines = [f"digraph {_quote(name)} {{"]
    for o in cat.objects:
        lines.append(f"  {_quote(o)};")
    for m in cat.non_identities():
        lines.append(
            f"  {_quote(cat.src(m))} -> {_quote(cat.tgt(m))} "
            f"[label={_quote(m)}];"
        )
    lines.append("}")
    return "\n".join(lines) + "\n"


def lens_to_dot(l: DeltaLens, name: str = "lens") -> str:
    """Underlying graph of the total category; chosen lifts in color."""
    chosen = set(l.lift.values())
    cat = l.cat_a
    lines = [f"digraph {_quote(name)} {{"]
    for o in cat.objects:
        lines.append(f"  {_quote(o)} [label={_quote(o + ' @ ' + l.f.fo(o))}];")
    for m in cat.non_identities():
        color = ' color="blue"' if m in chosen else ""
        lines.append(
            f"  {_quote(cat.src(m))} -> {_quote(cat.tgt(m))} "
            f"[label={_quote(m + ' @ ' + l.f.fm(m))}{color}];"
        )
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_dot(value, name: str = "export") -> str:
    if isinstance(value, DeltaLens):
        return lens_to_dot(value, name)
    if isinstance(value, FinCat):
        return fincat_to_dot(value, name)
    if isinstance(value, IndexedSmf):
        from .idx import elements

        return lens_to_dot(elements(value)[0], name)
    if isinstance(value, FinFunctor):
        return fincat_to_dot(value.dom, name)
    raise ParseError(f"no DOT export for {type(value).__name__}")
