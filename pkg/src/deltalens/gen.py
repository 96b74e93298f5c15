"""Seeded random instances: categories, functors, lenses, indexed data.

Generation is by construction, never by rejection over raw tables:
categories are free on acyclic multigraphs (plus a few fixed cyclic
catalog categories), set-valued functors are free assignments on
generating edges, and lenses come from a diagrammatic presentation
whose discrete-opfibration part is a category of elements.  Every
instance is a deterministic function of (config, seed, index).
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .fincat import FinCat, FinFunctor, Mor, pair, product_category, unpair
from .idx import Carrier, IndexedSmf, elements, fibres
from .lens import DeltaLens, DiaLens, from_diagram, lens_of_dopf
from .smult import FinFunction, Smf, SmultCell


@dataclass
class GenConfig:
    seed: int = 0
    max_objects: int = 5
    max_hom: int = 3           # max morphisms per hom-set
    max_fibre: int = 4
    acyclic: bool = True
    count: int = 1
    max_morphisms: int = 20    # cap on total morphisms of a base
    max_carrier: int = 90      # cap on total morphisms upstairs


def rng_for(seed, index: int) -> random.Random:
    return random.Random(f"{seed}:{index}")


# ---------------------------------------------------------------------------
# fixed catalog


def empty_cat() -> FinCat:
    return FinCat([], {}, {}, {})


def terminal_cat() -> FinCat:
    return FinCat(["*"], {"i:*": Mor("*", "*")}, {"*": "i:*"},
                  {("i:*", "i:*"): "i:*"})


def interval_cat() -> FinCat:
    morphisms = {"i:x0": Mor("x0", "x0"), "i:x1": Mor("x1", "x1"),
                 "u": Mor("x0", "x1")}
    compose = {("i:x0", "i:x0"): "i:x0", ("i:x1", "i:x1"): "i:x1",
               ("i:x0", "u"): "u", ("u", "i:x1"): "u"}
    return FinCat(["x0", "x1"], morphisms, {"x0": "i:x0", "x1": "i:x1"}, compose)


def discrete_cat(n: int) -> FinCat:
    objects = [f"x{i}" for i in range(n)]
    morphisms = {f"i:{x}": Mor(x, x) for x in objects}
    identity = {x: f"i:{x}" for x in objects}
    compose = {(f"i:{x}", f"i:{x}"): f"i:{x}" for x in objects}
    return FinCat(objects, morphisms, identity, compose)


def vee_cat() -> FinCat:
    objects = ["a0", "a1", "a2"]
    morphisms = {f"i:{x}": Mor(x, x) for x in objects}
    morphisms["w1"] = Mor("a0", "a1")
    morphisms["w2"] = Mor("a0", "a2")
    identity = {x: f"i:{x}" for x in objects}
    compose = {(f"i:{x}", f"i:{x}"): f"i:{x}" for x in objects}
    compose.update({("i:a0", "w1"): "w1", ("w1", "i:a1"): "w1",
                    ("i:a0", "w2"): "w2", ("w2", "i:a2"): "w2"})
    return FinCat(objects, morphisms, identity, compose)


def parallel_pair_cat() -> FinCat:
    objects = ["x0", "x1"]
    morphisms = {"i:x0": Mor("x0", "x0"), "i:x1": Mor("x1", "x1"),
                 "u1": Mor("x0", "x1"), "u2": Mor("x0", "x1")}
    identity = {"x0": "i:x0", "x1": "i:x1"}
    compose = {("i:x0", "i:x0"): "i:x0", ("i:x1", "i:x1"): "i:x1",
               ("i:x0", "u1"): "u1", ("u1", "i:x1"): "u1",
               ("i:x0", "u2"): "u2", ("u2", "i:x1"): "u2"}
    return FinCat(objects, morphisms, identity, compose)


def chain_cat(n: int) -> FinCat:
    """Free category on the linear graph with n objects."""
    objects = [f"x{i}" for i in range(n)]
    morphisms = {f"i:{x}": Mor(x, x) for x in objects}
    for i in range(n):
        for j in range(i + 1, n):
            morphisms[f"c{i}{j}"] = Mor(f"x{i}", f"x{j}")
    identity = {x: f"i:{x}" for x in objects}

    def name(i, j):
        return f"i:x{i}" if i == j else f"c{i}{j}"

    compose = {}
    for i in range(n):
        for j in range(i, n):
            for k in range(j, n):
                compose[(name(i, j), name(j, k))] = name(i, k)
    return FinCat(objects, morphisms, identity, compose)


def z2_cat() -> FinCat:
    morphisms = {"e": Mor("*", "*"), "g": Mor("*", "*")}
    compose = {("e", "e"): "e", ("e", "g"): "g", ("g", "e"): "g",
               ("g", "g"): "e"}
    return FinCat(["*"], morphisms, {"*": "e"}, compose)


def idempotent_cat() -> FinCat:
    morphisms = {"e": Mor("*", "*"), "j": Mor("*", "*")}
    compose = {("e", "e"): "e", ("e", "j"): "j", ("j", "e"): "j",
               ("j", "j"): "j"}
    return FinCat(["*"], morphisms, {"*": "e"}, compose)


def iso_pair_cat() -> FinCat:
    objects = ["x0", "x1"]
    morphisms = {"i:x0": Mor("x0", "x0"), "i:x1": Mor("x1", "x1"),
                 "f": Mor("x0", "x1"), "g": Mor("x1", "x0")}
    identity = {"x0": "i:x0", "x1": "i:x1"}
    compose = {("i:x0", "i:x0"): "i:x0", ("i:x1", "i:x1"): "i:x1",
               ("i:x0", "f"): "f", ("f", "i:x1"): "f",
               ("i:x1", "g"): "g", ("g", "i:x0"): "g",
               ("f", "g"): "i:x0", ("g", "f"): "i:x1"}
    return FinCat(objects, morphisms, identity, compose)


def catalog_small() -> list[FinCat]:
    """Categories with at most 3 objects used for exhaustive checks."""
    return [
        empty_cat(),
        terminal_cat(),
        interval_cat(),
        discrete_cat(2),
        vee_cat(),
        parallel_pair_cat(),
        chain_cat(3),
        z2_cat(),
        idempotent_cat(),
        iso_pair_cat(),
    ]


# ---------------------------------------------------------------------------
# free categories on random acyclic multigraphs


@dataclass
class FreeCat:
    cat: FinCat
    edges: dict[str, tuple[str, str]]   # edge name -> (src, tgt)
    paths: dict[str, tuple[str, ...]]   # morphism name -> edge names


def _free_cat_on_edges(objects, edges) -> FreeCat:
    """The path category of an acyclic multigraph."""
    paths: dict[tuple, tuple[str, str]] = {(o,): (o, o) for o in sorted(objects)}
    frontier = dict(paths)
    while frontier:
        nxt = {}
        for key, (s, t) in frontier.items():
            for e, (es, et) in edges.items():
                if es == t:
                    nxt[key + (e,)] = (s, et)
        paths.update(nxt)
        frontier = nxt
        if len(paths) > 4000:
            raise OverflowError("path explosion")

    def name(key) -> str:
        if len(key) == 1:
            return f"i:{key[0]}"
        return "p:" + ".".join(key[1:])

    morphisms = {name(k): Mor(*v) for k, v in paths.items()}
    identity = {o: f"i:{o}" for o in objects}
    compose = {}
    for k1, (s1, t1) in paths.items():
        for k2, (s2, _) in paths.items():
            if t1 == s2:
                compose[(name(k1), name(k2))] = name((k1[0],) + k1[1:] + k2[1:])
    cat = FinCat(objects, morphisms, identity, compose)
    path_edges = {name(k): k[1:] for k in paths}
    return FreeCat(cat, dict(edges), path_edges)


def gen_free_cat(cfg: GenConfig, rng: random.Random) -> FreeCat:
    n = rng.randint(1, cfg.max_objects)
    objects = [f"x{i}" for i in range(n)]
    edges: dict[str, tuple[str, str]] = {}
    want = rng.randint(0, n + 1)
    built = _free_cat_on_edges(objects, edges)
    attempts = 0
    while len(edges) < want and attempts < 3 * want + 3:
        attempts += 1
        j, k = rng.randrange(n), rng.randrange(n)
        if j >= k:
            continue
        cand = dict(edges)
        cand[f"e{len(edges)}"] = (f"x{j}", f"x{k}")
        try:
            trial = _free_cat_on_edges(objects, cand)
        except OverflowError:
            continue
        cat = trial.cat
        if len(cat.morphisms) > cfg.max_morphisms:
            continue
        if any(len(cat.hom(x, y)) > cfg.max_hom
               for x in cat.objects for y in cat.objects):
            continue
        edges, built = cand, trial
    return built


def gen_fincat(cfg: GenConfig, rng: random.Random) -> FinCat:
    free = gen_free_cat(cfg, rng)
    if cfg.acyclic or rng.random() < 0.7:
        return free.cat
    loops = [z2_cat(), idempotent_cat(), iso_pair_cat()]
    return _disjoint_union(free.cat, rng.choice(loops))


def _disjoint_union(a: FinCat, b: FinCat) -> FinCat:
    rename_o = {o: f"y{idx}" for idx, o in enumerate(b.objects)}
    rename_m = {m: f"loop{idx}" for idx, m in enumerate(sorted(b.morphisms))}
    objects = list(a.objects) + list(rename_o.values())
    morphisms = dict(a.morphisms)
    for m, mor in b.morphisms.items():
        morphisms[rename_m[m]] = Mor(rename_o[mor.src], rename_o[mor.tgt])
    identity = dict(a.identity)
    identity.update({rename_o[o]: rename_m[b.id_of(o)] for o in b.objects})
    compose = dict(a.compose)
    for (f, g), h in b.compose.items():
        compose[(rename_m[f], rename_m[g])] = rename_m[h]
    return FinCat(objects, morphisms, identity, compose)


# ---------------------------------------------------------------------------
# functors and set-valued data


def gen_functor(cfg: GenConfig, rng: random.Random,
                dom: FreeCat | None = None,
                cod: FinCat | None = None) -> FinFunctor:
    """A random functor out of a free category, built on generators."""
    if dom is None:
        dom = gen_free_cat(cfg, rng)
    if cod is None:
        cod = gen_fincat(cfg, rng)
    obj_map = {}
    edge_map = {}
    for _ in range(8):
        obj_map = {x: rng.choice(cod.objects) for x in dom.cat.objects}
        edge_map = {}
        feasible = True
        for e, (s, t) in sorted(dom.edges.items()):
            hom = cod.hom(obj_map[s], obj_map[t])
            if not hom:
                feasible = False
                break
            edge_map[e] = rng.choice(hom)
        if feasible:
            break
    else:
        target = rng.choice(cod.objects)
        obj_map = {x: target for x in dom.cat.objects}
        edge_map = {e: cod.id_of(target) for e in dom.edges}
    mor_map = {}
    for m, path in dom.paths.items():
        acc = cod.id_of(obj_map[dom.cat.src(m)])
        for e in path:
            acc = cod.then(acc, edge_map[e])
        mor_map[m] = acc
    return FinFunctor(dom.cat, cod, obj_map, mor_map)


@dataclass
class SetFunctor:
    base: FreeCat
    sets: dict[str, tuple[str, ...]]
    action: dict[str, dict[str, str]]   # per base morphism


def gen_set_functor(base: FreeCat, cfg: GenConfig, rng: random.Random,
                    min_size: int = 0) -> SetFunctor:
    cat = base.cat
    sizes = {x: rng.randint(min_size, cfg.max_fibre) for x in cat.objects}
    changed = True
    while changed:
        changed = False
        for e, (s, t) in sorted(base.edges.items()):
            if sizes[s] > 0 and sizes[t] == 0:
                sizes[t] = 1
                changed = True
    sets = {x: tuple(f"{x}#{i}" for i in range(sizes[x])) for x in cat.objects}
    edge_action = {}
    for e, (s, t) in sorted(base.edges.items()):
        edge_action[e] = {a: rng.choice(sets[t]) for a in sets[s]}
    action = {}
    for m, path in base.paths.items():
        table = {a: a for a in sets[cat.src(m)]}
        for e in path:
            table = {a: edge_action[e][v] for a, v in table.items()}
        action[m] = table
    return SetFunctor(base, sets, action)


def dopf_of_set_functor(g: SetFunctor) -> FinFunctor:
    """The elements projection of a set-valued functor; a discrete
    opfibration by construction."""
    cat = g.base.cat
    objects = [pair(x, a) for x in cat.objects for a in g.sets[x]]
    morphisms = {}
    firsts = {}
    for m in cat.morphisms:
        src = cat.src(m)
        for a in g.sets[src]:
            name = pair(m, a)
            morphisms[name] = Mor(pair(src, a), pair(cat.tgt(m), g.action[m][a]))
            firsts[name] = (m, a)
    identity = {pair(x, a): pair(cat.id_of(x), a)
                for x in cat.objects for a in g.sets[x]}
    compose = {}
    for m1, mor1 in morphisms.items():
        u, a = firsts[m1]
        for m2, mor2 in morphisms.items():
            if mor1.tgt == mor2.src:
                compose[(m1, m2)] = pair(cat.then(u, firsts[m2][0]), a)
    el = FinCat(objects, morphisms, identity, compose)
    return FinFunctor(el, cat,
                      {o: unpair(o)[0] for o in objects},
                      {m: firsts[m][0] for m in morphisms})


# ---------------------------------------------------------------------------
# lenses and indexed data


def gen_dialens(cfg: GenConfig, rng: random.Random) -> DiaLens:
    """A diagrammatic lens: the elements of a set-valued functor,
    freely extended by extra morphisms with arbitrary images."""
    base = gen_free_cat(cfg, rng)
    g = gen_set_functor(base, cfg, rng)
    cat = base.cat
    single = {e: f"p:{e}" for e in base.edges}

    el_objects = [pair(x, a) for x in cat.objects for a in g.sets[x]]
    lifted = {}
    for e, (s, t) in sorted(base.edges.items()):
        for a in g.sets[s]:
            lifted[pair(e, a)] = (pair(s, a), pair(t, g.action[single[e]][a]))

    extra = {}
    n_extra = rng.randint(0, 3) if el_objects else 0
    for _ in range(6 * n_extra):
        if len(extra) >= n_extra:
            break
        o1, o2 = rng.choice(el_objects), rng.choice(el_objects)
        x1, a1 = unpair(o1)
        x2, a2 = unpair(o2)
        if x1 == x2 and a1 < a2:
            extra[f"n{len(extra)}"] = (o1, o2, cat.id_of(x1))
        elif x1 != x2:
            hom = [u for u in cat.hom(x1, x2) if not cat.is_id(u)]
            if hom:
                extra[f"n{len(extra)}"] = (o1, o2, rng.choice(hom))

    edges_all = dict(lifted)
    edges_all.update({name: (o1, o2) for name, (o1, o2, _) in extra.items()})
    try:
        apex = _free_cat_on_edges(el_objects, edges_all)
        if len(apex.cat.morphisms) > cfg.max_carrier:
            raise OverflowError("carrier cap")
    except OverflowError:
        extra = {}
        apex = _free_cat_on_edges(el_objects, dict(lifted))

    x_free = _free_cat_on_edges(el_objects, dict(lifted))
    p = FinFunctor(
        x_free.cat,
        apex.cat,
        {o: o for o in el_objects},
        {m: m for m in x_free.cat.morphisms},
    )

    edge_image = {e: single[unpair(e)[0]] for e in lifted}
    edge_image.update({name: u for name, (_, _, u) in extra.items()})
    mor_map = {}
    for m, path in apex.paths.items():
        acc = cat.id_of(unpair(apex.cat.src(m))[0])
        for e in path:
            acc = cat.then(acc, edge_image[e])
        mor_map[m] = acc
    f = FinFunctor(apex.cat, cat,
                   {o: unpair(o)[0] for o in el_objects}, mor_map)
    return DiaLens(p, f)


def gen_indexed_smf(cfg: GenConfig, rng: random.Random) -> IndexedSmf:
    return fibres(from_diagram(gen_dialens(cfg, rng)))


def gen_lens(cfg: GenConfig, rng: random.Random) -> DeltaLens:
    return elements(gen_indexed_smf(cfg, rng))[0]


def gen_dopf_lens(cfg: GenConfig, rng: random.Random) -> DeltaLens:
    base = gen_free_cat(cfg, rng)
    g = gen_set_functor(base, cfg, rng)
    return lens_of_dopf(dopf_of_set_functor(g))


def product_projection_lens(a: FinCat, b: FinCat) -> DeltaLens:
    """The second projection of a product, with lifts (identity, u)."""
    prod, _, pi2 = product_category(a, b)
    lift = {}
    for o in prod.objects:
        x, y = unpair(o)
        for u in b.morphisms_from(y):
            lift[(o, u)] = pair(a.id_of(x), u)
    return DeltaLens(pi2, lift)


def gen_split_opfibration(cfg: GenConfig, rng: random.Random) -> DeltaLens:
    """A guaranteed-positive instance for the detector suites: either a
    discrete opfibration from set-valued data or a product projection."""
    if rng.random() < 0.5:
        return gen_dopf_lens(cfg, rng)
    small = GenConfig(seed=cfg.seed, max_objects=2, max_hom=2, max_fibre=2,
                      max_morphisms=8)
    upstairs = gen_fincat(small, rng)
    base = gen_fincat(small, rng)
    if not base.objects:
        base = interval_cat()
    return product_projection_lens(upstairs, base)


# ---------------------------------------------------------------------------
# split multivalued functions and cells


def gen_finset(rng: random.Random, prefix: str, lo: int = 0, hi: int = 4):
    return tuple(f"{prefix}{i}" for i in range(rng.randint(lo, hi)))


def gen_smf(rng: random.Random, src=None, tgt=None, tag: str = "m") -> Smf:
    if src is None:
        src = gen_finset(rng, f"{tag}a", 0, 3)
    if tgt is None:
        tgt = gen_finset(rng, f"{tag}b", 1 if src else 0, 3)
    if src and not tgt:
        tgt = (f"{tag}b0",)
    carrier = []
    s = {}
    for i, a in enumerate(src):
        name = f"{tag}x{i}"
        carrier.append(name)
        s[name] = a
    if src:
        for j in range(rng.randint(0, 3)):
            name = f"{tag}y{j}"
            carrier.append(name)
            s[name] = rng.choice(src)
    t = {x: rng.choice(tgt) for x in carrier}
    sigma = {a: rng.choice([x for x in carrier if s[x] == a]) for a in src}
    return Smf(src, carrier, tgt, s, t, sigma)


def gen_composable_smfs(rng: random.Random, k: int, tag: str = "c") -> list[Smf]:
    out = []
    boundary = gen_finset(rng, f"{tag}s", 1, 3)
    for i in range(k):
        nxt = gen_finset(rng, f"{tag}{i}t", 1, 3)
        out.append(gen_smf(rng, src=boundary, tgt=nxt, tag=f"{tag}{i}"))
        boundary = nxt
    return out


def _copies(rng: random.Random, base, tag: str):
    """Tagged copies of base elements together with the projection."""
    elems = []
    proj = {}
    for b in base:
        for i in range(rng.randint(1, 2)):
            name = f"{tag}({b})#{i}"
            elems.append(name)
            proj[name] = b
    return tuple(elems), proj


def _pullback_cell(rng: random.Random, bottom: Smf,
                   left: FinFunction, tag: str) -> SmultCell:
    """A cell onto `bottom` with the prescribed left leg; the top is the
    pullback of the bottom along the left leg and fresh right copies."""
    tgt, g_map = _copies(rng, bottom.tgt, tag + "B")
    first_copy = {}
    for name in tgt:
        b = g_map[name]
        if b not in first_copy:
            first_copy[b] = name
    carrier = []
    p1 = {}
    p2 = {}
    alpha = {}
    for y in bottom.carrier:
        for a in left.dom:
            if left(a) != bottom.s(y):
                continue
            for b in tgt:
                if g_map[b] != bottom.t(y):
                    continue
                name = f"{tag}({y},{a},{b})"
                carrier.append(name)
                p1[name] = a
                p2[name] = b
                alpha[name] = y
    sigma = {}
    for a in left.dom:
        y = bottom.sigma(left(a))
        sigma[a] = f"{tag}({y},{a},{first_copy[bottom.t(y)]})"
    top = Smf(left.dom, carrier, tgt, p1, p2, sigma)
    return SmultCell(top, bottom, left,
                     FinFunction(tgt, bottom.tgt, g_map),
                     FinFunction(carrier, bottom.carrier, alpha))


def gen_cell_over(rng: random.Random, bottom: Smf, tag: str) -> SmultCell:
    src, f_map = _copies(rng, bottom.src, tag + "A")
    return _pullback_cell(rng, bottom, FinFunction(src, bottom.src, f_map), tag)


def gen_cell(rng: random.Random, tag: str = "g") -> SmultCell:
    bottom = gen_smf(rng, src=gen_finset(rng, f"{tag}s", 1, 2),
                     tgt=gen_finset(rng, f"{tag}t", 1, 2), tag=tag)
    return gen_cell_over(rng, bottom, tag + "c")


def gen_cell_grid(rng: random.Random):
    """A 2x2 interchange grid: rows loosely composable, columns tightly
    composable, shared boundaries literal."""
    lower = gen_composable_smfs(rng, 2, "w")
    c = gen_cell_over(rng, lower[0], "L")
    d = _pullback_cell(rng, lower[1], c.right, "R")
    a_cell = gen_cell_over(rng, c.top, "TL")
    b_cell = _pullback_cell(rng, d.top, a_cell.right, "TR")
    return a_cell, b_cell, c, d


# ---------------------------------------------------------------------------
# mutations


def mutate_indexed_smf(x: IndexedSmf, rng: random.Random) -> IndexedSmf | None:
    """A single-point, type-preserving perturbation of one table entry,
    or None when the instance has no entry with an alternative value."""
    points = []
    for u, c in x.carriers.items():
        src_set = x.obj_sets[x.base.src(u)]
        tgt_set = x.obj_sets[x.base.tgt(u)]
        for a, v in c.sigma.items():
            if len(c.elems) > 1:
                points.append(("sigma", u, a, v, c.elems))
        for e, v in c.s.items():
            if len(src_set) > 1:
                points.append(("s", u, e, v, src_set))
        for e, v in c.t.items():
            if len(tgt_set) > 1:
                points.append(("t", u, e, v, tgt_set))
    for (u, v), table in x.mu.items():
        out = x.carriers[x.base.then(u, v)].elems
        if len(out) > 1:
            for key, value in table.items():
                points.append(("mu", (u, v), key, value, out))
    if not points:
        return None
    kind, where, key, old, pool = points[rng.randrange(len(points))]
    new = rng.choice([e for e in pool if e != old])
    carriers = {
        u: Carrier(c.elems, dict(c.s), dict(c.t), dict(c.sigma))
        for u, c in x.carriers.items()
    }
    mu = {k: dict(t) for k, t in x.mu.items()}
    if kind == "sigma":
        carriers[where].sigma[key] = new
    elif kind == "s":
        carriers[where].s[key] = new
    elif kind == "t":
        carriers[where].t[key] = new
    else:
        mu[where][key] = new
    return IndexedSmf(x.base, dict(x.obj_sets), carriers, mu)
