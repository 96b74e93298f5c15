"""Delta lenses, their diagrammatic presentation, and retrofunctors.

A delta lens is a functor together with a functorial choice of lifts:
for every object a of the domain and every morphism u out of its image
there is a chosen morphism over u starting at a.  The same data can be
presented as a commuting triangle (an identity-on-objects functor
followed by the underlying functor whose composite is a discrete
opfibration); both presentations and the translations between them live
here, together with the split-opfibration detectors and the cofree lens
on a retrofunctor.
"""

from __future__ import annotations

from dataclasses import dataclass

from .fincat import (
    BoundaryError,
    FinCat,
    FinFunctor,
    Mor,
    Report,
    _untriple,
    decalage,
    decalage_functor,
    is_discrete_opfibration,
    is_identity_on_objects,
    is_isomorphism,
    pair,
    pullback_category,
    triple,
    unpair,
    validate_functor,
)


@dataclass
class DeltaLens:
    """A functor cat_a -> cat_b with a dense lift table.

    ``lift[(a, u)]`` is the chosen morphism of cat_a over u starting at
    a, for every object a and every u out of f(a); sparse tables are a
    validation error, not defaulted.
    """

    f: FinFunctor
    lift: dict[tuple[str, str], str]

    def __init__(self, f: FinFunctor, lift):
        self.f = f
        self.lift = {k: lift[k] for k in sorted(lift)}

    @property
    def cat_a(self) -> FinCat:
        return self.f.dom

    @property
    def cat_b(self) -> FinCat:
        return self.f.cod

    def phi(self, a: str, u: str) -> str:
        return self.lift[(a, u)]

    @staticmethod
    def identity(cat: FinCat) -> DeltaLens:
        f = FinFunctor.identity(cat)
        lift = {(cat.src(u), u): u for u in cat.morphisms}
        return DeltaLens(f, lift)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DeltaLens):
            return NotImplemented
        return self.f == other.f and self.lift == other.lift


@dataclass
class DiaLens:
    """Diagrammatic presentation: p identity-on-objects, f∘p a discrete
    opfibration."""

    p: FinFunctor
    f: FinFunctor


@dataclass
class Retrofunctor:
    """An object assignment with a lift table satisfying the retrofunctor
    laws; no action on morphisms."""

    cat_a: FinCat
    cat_b: FinCat
    obj_map: dict[str, str]
    lift: dict[tuple[str, str], str]

    def __init__(self, cat_a, cat_b, obj_map, lift):
        self.cat_a = cat_a
        self.cat_b = cat_b
        self.obj_map = {x: obj_map[x] for x in sorted(obj_map)}
        self.lift = {k: lift[k] for k in sorted(lift)}

    def phi(self, a: str, u: str) -> str:
        return self.lift[(a, u)]


@dataclass
class LensMorphism:
    """A commuting square of functors that preserves chosen lifts."""

    dom: DeltaLens
    cod: DeltaLens
    h: FinFunctor
    k: FinFunctor


# ---------------------------------------------------------------------------
# validation


def _lift_keys(f: FinFunctor) -> set[tuple[str, str]]:
    return {
        (a, u)
        for a in f.dom.objects
        for u in f.cod.morphisms_from(f.fo(a))
    }


def check_delta_lens(l: DeltaLens) -> Report:
    report = validate_functor(l.f)
    if not report.ok:
        return report
    a_cat, b_cat = l.cat_a, l.cat_b
    keys = _lift_keys(l.f)
    for key in sorted(keys - set(l.lift)):
        report.add("lift-table", f"missing lift for {key}")
    for key in sorted(set(l.lift) - keys):
        report.add("lift-table", f"lift for illegal key {key}")
    for key, w in l.lift.items():
        if w not in a_cat.morphisms:
            report.add("reference", f"lift for {key} is unknown morphism {w}")
    if not report.ok:
        return report
    for (a, u), w in l.lift.items():
        if a_cat.src(w) != a:
            report.add("lift-source", f"lift of ({a},{u}) starts at {a_cat.src(w)}")
        if l.f.fm(w) != u:
            report.add("DL1", f"f(lift({a},{u})) = {l.f.fm(w)} != {u}")
    for a in a_cat.objects:
        u = b_cat.id_of(l.f.fo(a))
        if l.lift.get((a, u)) != a_cat.id_of(a):
            report.add("DL2", f"lift of ({a},{u}) is not the identity")
    for a in a_cat.objects:
        for u in b_cat.morphisms_from(l.f.fo(a)):
            w = l.lift[(a, u)]
            ap = a_cat.tgt(w)
            for v in b_cat.morphisms_from(b_cat.tgt(u)):
                lhs = l.lift.get((a, b_cat.then(u, v)))
                step = l.lift.get((ap, v))
                if step is None or a_cat.tgt(w) != a_cat.src(step):
                    # only reachable when DL1 already failed upstream
                    continue
                rhs = a_cat.then(w, step)
                if lhs != rhs:
                    report.add("DL3", f"lift of ({a},{v}∘{u}) = {lhs} != {rhs}")
    return report


def check_dialens(d: DiaLens) -> Report:
    report = Report()
    for fun, name in ((d.p, "p"), (d.f, "f")):
        sub = validate_functor(fun)
        for prob in sub.problems:
            report.add(name, str(prob))
    if not report.ok:
        return report
    if d.p.cod != d.f.dom:
        report.add("boundary", "p and f are not composable")
        return report
    if not is_identity_on_objects(d.p):
        report.add("identity-on-objects", "p is not identity-on-objects")
    if not is_discrete_opfibration(d.p.then(d.f)):
        report.add("discrete-opfibration", "f∘p is not a discrete opfibration")
    return report


def check_retrofunctor(r: Retrofunctor) -> Report:
    report = Report()
    objs_b = set(r.cat_b.objects)
    for x in r.cat_a.objects:
        if x not in r.obj_map:
            report.add("reference", f"object {x} is not mapped")
        elif r.obj_map[x] not in objs_b:
            report.add("reference", f"object {x} maps to unknown {r.obj_map[x]}")
    if not report.ok:
        return report
    keys = {
        (a, u)
        for a in r.cat_a.objects
        for u in r.cat_b.morphisms_from(r.obj_map[a])
    }
    for key in sorted(keys - set(r.lift)):
        report.add("lift-table", f"missing lift for {key}")
    for key in sorted(set(r.lift) - keys):
        report.add("lift-table", f"lift for illegal key {key}")
    for key, w in r.lift.items():
        if w not in r.cat_a.morphisms:
            report.add("reference", f"lift for {key} is unknown morphism {w}")
    if not report.ok:
        return report
    for (a, u), w in r.lift.items():
        if r.cat_a.src(w) != a:
            report.add("lift-source", f"lift of ({a},{u}) starts at {r.cat_a.src(w)}")
        if r.obj_map[r.cat_a.tgt(w)] != r.cat_b.tgt(u):
            report.add("R1", f"codomain of lift of ({a},{u}) sits over "
                             f"{r.obj_map[r.cat_a.tgt(w)]}")
    for a in r.cat_a.objects:
        u = r.cat_b.id_of(r.obj_map[a])
        if r.lift.get((a, u)) != r.cat_a.id_of(a):
            report.add("R2", f"lift of ({a},{u}) is not the identity")
    for a in r.cat_a.objects:
        for u in r.cat_b.morphisms_from(r.obj_map[a]):
            w = r.lift[(a, u)]
            ap = r.cat_a.tgt(w)
            for v in r.cat_b.morphisms_from(r.cat_b.tgt(u)):
                lhs = r.lift.get((a, r.cat_b.then(u, v)))
                step = r.lift.get((ap, v))
                if step is None or r.cat_a.tgt(w) != r.cat_a.src(step):
                    # only reachable when R1 already failed upstream
                    continue
                rhs = r.cat_a.then(w, step)
                if lhs != rhs:
                    report.add("R3", f"lift of ({a},{v}∘{u}) = {lhs} != {rhs}")
    return report


def check_lens_morphism(m: LensMorphism) -> Report:
    report = Report()
    for fun, name in ((m.h, "h"), (m.k, "k")):
        sub = validate_functor(fun)
        for prob in sub.problems:
            report.add(name, str(prob))
    if not report.ok:
        return report
    if m.h.dom != m.dom.cat_a or m.k.dom != m.dom.cat_b:
        report.add("boundary", "morphism does not start at its domain lens")
    if m.h.cod != m.cod.cat_a or m.k.cod != m.cod.cat_b:
        report.add("boundary", "morphism does not end at its codomain lens")
    if not report.ok:
        return report
    if m.dom.f.then(m.k) != m.h.then(m.cod.f):
        report.add("square", "k∘f != g∘h")
    for (a, u), w in m.dom.lift.items():
        if m.h.fm(w) != m.cod.lift[(m.h.fo(a), m.k.fm(u))]:
            report.add("lift-preservation", f"lift of ({a},{u}) is not preserved")
    return report


# ---------------------------------------------------------------------------
# the wide subcategory of chosen lifts and the two presentations


def chosen_lift_subcategory(l: DeltaLens) -> tuple[FinCat, FinFunctor]:
    """The wide subcategory on exactly the chosen lifts, with its
    identity-on-objects faithful inclusion.  Composing with the lens's
    functor yields a discrete opfibration."""
    a_cat = l.cat_a
    mors = set(l.lift.values()) | {a_cat.id_of(x) for x in a_cat.objects}
    morphisms = {m: a_cat.morphisms[m] for m in mors}
    compose = {
        (f, g): a_cat.then(f, g)
        for f in mors
        for g in mors
        if a_cat.tgt(f) == a_cat.src(g)
    }
    for key, h in compose.items():
        if h not in mors:
            raise BoundaryError(
                f"chosen lifts are not closed under composition at {key}"
            )
    sub = FinCat(a_cat.objects, morphisms, dict(a_cat.identity), compose)
    incl = FinFunctor(sub, a_cat, {x: x for x in sub.objects},
                      {m: m for m in morphisms})
    return sub, incl


def as_diagram(l: DeltaLens) -> DiaLens:
    _, incl = chosen_lift_subcategory(l)
    return DiaLens(incl, l.f)


def lens_of_dopf(f: FinFunctor) -> DeltaLens:
    """The unique lens structure carried by a discrete opfibration."""
    if not is_discrete_opfibration(f):
        raise BoundaryError("functor is not a discrete opfibration")
    lift = {}
    for a in f.dom.objects:
        outgoing = f.dom.morphisms_from(a)
        for u in f.cod.morphisms_from(f.fo(a)):
            lift[(a, u)] = next(w for w in outgoing if f.fm(w) == u)
    return DeltaLens(f, lift)


def lens_of_diagram(d: DiaLens) -> tuple[DeltaLens, FinFunctor]:
    """The lens presented by a diagram, with the unique comparison
    isomorphism j from the diagram's apex onto the subcategory of
    chosen lifts (inclusion ∘ j = p)."""
    report = check_dialens(d)
    if not report.ok:
        raise BoundaryError(f"invalid diagrammatic lens: {report}")
    fp = lens_of_dopf(d.p.then(d.f))
    lift = {key: d.p.fm(w) for key, w in fp.lift.items()}
    lens = DeltaLens(d.f, lift)
    sub, _ = chosen_lift_subcategory(lens)
    j = FinFunctor(d.p.dom, sub, {x: x for x in d.p.dom.objects},
                   {m: d.p.fm(m) for m in d.p.dom.morphisms})
    return lens, j


def from_diagram(d: DiaLens) -> DeltaLens:
    return lens_of_diagram(d)[0]


def counit_at(l: DeltaLens) -> LensMorphism:
    """The comparison from the lens's discrete-opfibration core back to
    the lens itself: (inclusion, identity)."""
    sub, incl = chosen_lift_subcategory(l)
    core = lens_of_dopf(incl.then(l.f))
    return LensMorphism(core, l, incl, FinFunctor.identity(l.cat_b))


# ---------------------------------------------------------------------------
# split-opfibration detectors


def _is_opcartesian(l: DeltaLens, a: str, u: str) -> bool:
    a_cat, b_cat = l.cat_a, l.cat_b
    w0 = l.phi(a, u)
    ap = a_cat.tgt(w0)
    for w in a_cat.morphisms_from(a):
        fw = l.f.fm(w)
        for v in b_cat.morphisms_from(b_cat.tgt(u)):
            if b_cat.then(u, v) != fw:
                continue
            fillers = [
                wp
                for wp in a_cat.hom(ap, a_cat.tgt(w))
                if a_cat.then(w0, wp) == w and l.f.fm(wp) == v
            ]
            if len(fillers) != 1:
                return False
    return True


def _is_weakly_opcartesian(l: DeltaLens, a: str) -> bool:
    a_cat = l.cat_a
    for w in a_cat.morphisms_from(a):
        u = l.f.fm(w)
        w0 = l.phi(a, u)
        ap = a_cat.tgt(w0)
        fillers = [
            wp
            for wp in a_cat.hom(ap, a_cat.tgt(w))
            if a_cat.then(w0, wp) == w
            and l.f.fm(wp) == l.cat_b.id_of(l.f.fo(a_cat.tgt(w)))
        ]
        if len(fillers) != 1:
            return False
    return True


def is_split_opfibration(l: DeltaLens, mode: str = "opcartesian") -> bool:
    """Detect whether every chosen lift is opcartesian.

    mode "opcartesian": the full factorization property of each lift;
    mode "weakly_opcartesian": unique vertical fillers over identities;
    mode "decalage": the diagrammatic test, checking that the functor
    induced between décalages out of the pullback with the slice
    projection is a discrete opfibration.
    """
    if mode == "opcartesian":
        return all(
            _is_opcartesian(l, a, u) for (a, u) in l.lift
        )
    if mode == "weakly_opcartesian":
        return all(_is_weakly_opcartesian(l, a) for a in l.cat_a.objects)
    if mode == "decalage":
        d = as_diagram(l)
        dec_a, eps_a = decalage(l.cat_a)
        dec_b, _ = decalage(l.cat_b)
        _, _, pi2 = pullback_category(d.p, eps_a)
        dec_f = decalage_functor(l.f, dec_a, dec_b)
        return is_discrete_opfibration(pi2.then(dec_f))
    raise ValueError(f"unknown mode {mode!r}")


# ---------------------------------------------------------------------------
# retrofunctors and the cofree lens


def underlying_retrofunctor(l: DeltaLens) -> Retrofunctor:
    return Retrofunctor(l.cat_a, l.cat_b,
                        {x: l.f.fo(x) for x in l.cat_a.objects}, dict(l.lift))


def cofree_lens(r: Retrofunctor) -> DeltaLens:
    """The lens on the category of compatible (morphism, base morphism)
    pairs over r's domain, with lifts (phi(a,u), u)."""
    a_cat, b_cat = r.cat_a, r.cat_b
    objects = a_cat.objects
    morphisms = {}
    for w, mor in a_cat.morphisms.items():
        for u in b_cat.hom(r.obj_map[mor.src], r.obj_map[mor.tgt]):
            morphisms[pair(w, u)] = Mor(mor.src, mor.tgt)
    identity = {x: pair(a_cat.id_of(x), b_cat.id_of(r.obj_map[x]))
                for x in objects}
    compose = {}
    for m1, mor1 in morphisms.items():
        for m2, mor2 in morphisms.items():
            if mor1.tgt == mor2.src:
                w1, u1 = unpair(m1)
                w2, u2 = unpair(m2)
                compose[(m1, m2)] = pair(a_cat.then(w1, w2), b_cat.then(u1, u2))
    x_cat = FinCat(objects, morphisms, identity, compose)
    f = FinFunctor(x_cat, b_cat, dict(r.obj_map),
                   {m: unpair(m)[1] for m in morphisms})
    lift = {}
    for a in objects:
        for u in b_cat.morphisms_from(r.obj_map[a]):
            lift[(a, u)] = pair(r.phi(a, u), u)
    return DeltaLens(f, lift)


def cofree_comparison(l: DeltaLens) -> FinFunctor:
    """The canonical functor from the lens's domain to the carrier of
    the cofree lens on its underlying retrofunctor: w |-> (w, f w)."""
    cl = cofree_lens(underlying_retrofunctor(l))
    return FinFunctor(
        l.cat_a,
        cl.cat_a,
        {x: x for x in l.cat_a.objects},
        {w: pair(w, l.f.fm(w)) for w in l.cat_a.morphisms},
    )


def is_cofree(l: DeltaLens) -> bool:
    return is_isomorphism(cofree_comparison(l))


# ---------------------------------------------------------------------------
# lens-level factorizations


def reflective_factorization(l: DeltaLens) -> tuple[FinFunctor, DeltaLens]:
    """Factor a lens as an identity-on-objects functor followed by a
    fully faithful lens.

    The fully faithful part lives on the category whose morphisms
    a -> a' are triples (a, u: fa -> fa', a'); its lift at (a, u) ends
    at the codomain of the original chosen lift.
    """
    a_cat, b_cat, f = l.cat_a, l.cat_b, l.f
    morphisms = {}
    for a in a_cat.objects:
        for ap in a_cat.objects:
            for u in b_cat.hom(f.fo(a), f.fo(ap)):
                morphisms[triple(a, u, ap)] = Mor(a, ap)
    identity = {a: triple(a, b_cat.id_of(f.fo(a)), a) for a in a_cat.objects}
    compose = {}
    for m1, mor1 in morphisms.items():
        for m2, mor2 in morphisms.items():
            if mor1.tgt == mor2.src:
                u1 = _untriple(m1)[1]
                u2 = _untriple(m2)[1]
                compose[(m1, m2)] = triple(mor1.src, b_cat.then(u1, u2), mor2.tgt)
    ff_cat = FinCat(a_cat.objects, morphisms, identity, compose)
    ff_fun = FinFunctor(ff_cat, b_cat, {x: f.fo(x) for x in a_cat.objects},
                        {m: _untriple(m)[1] for m in morphisms})
    lift = {}
    for a in a_cat.objects:
        for u in b_cat.morphisms_from(f.fo(a)):
            lift[(a, u)] = triple(a, u, a_cat.tgt(l.phi(a, u)))
    ff_lens = DeltaLens(ff_fun, lift)
    ioo = FinFunctor(
        a_cat,
        ff_cat,
        {x: x for x in a_cat.objects},
        {w: triple(a_cat.src(w), f.fm(w), a_cat.tgt(w)) for w in a_cat.morphisms},
    )
    return ioo, ff_lens


def epi_mono_factorization(l: DeltaLens) -> tuple[DeltaLens, DeltaLens]:
    """Factor a lens as a surjective-on-objects lens followed by a
    fully faithful injective-on-objects lens.

    The middle category is the full subcategory of the codomain on the
    objects with nonempty fibre; it is closed under morphisms out of
    its objects because lifts land in fibres.
    """
    b_cat, f = l.cat_b, l.f
    hit = sorted({f.fo(a) for a in l.cat_a.objects})
    hit_set = set(hit)
    morphisms = {
        m: mor
        for m, mor in b_cat.morphisms.items()
        if mor.src in hit_set and mor.tgt in hit_set
    }
    identity = {x: b_cat.id_of(x) for x in hit}
    compose = {
        (m1, m2): b_cat.then(m1, m2)
        for m1 in morphisms
        for m2 in morphisms
        if b_cat.tgt(m1) == b_cat.src(m2)
    }
    mid = FinCat(hit, morphisms, identity, compose)
    epi_fun = FinFunctor(l.cat_a, mid, dict(f.obj_map), dict(f.mor_map))
    epi = DeltaLens(epi_fun, dict(l.lift))
    incl = FinFunctor(mid, b_cat, {x: x for x in hit}, {m: m for m in morphisms})
    mono_lift = {(x, u): u for x in hit for u in b_cat.morphisms_from(x)}
    mono = DeltaLens(incl, mono_lift)
    return epi, mono
