"""Indexed split multivalued functions and the category-of-elements
construction for delta lenses.

An indexed split multivalued function over a base category assigns a
finite set to every object, a split multivalued function between the
assigned sets to every morphism, and a composition comparison mu to
every composable pair, subject to the laxity axioms L1-L6 spelled out
in :func:`validate_indexed_smf`.  The elements construction turns such
data into a delta lens over the base; fibres inverts it.  Both round
trips are pure renamings thanks to the canonical pair naming scheme.
"""

from __future__ import annotations

from dataclasses import dataclass

from .fincat import (
    BoundaryError,
    FinCat,
    FinFunctor,
    Mor,
    Report,
    comprehensive_factorization,
    coproduct_category,
    inl,
    inr,
    is_isomorphism,
    pair,
    product_category,
    unpair,
    validate_functor,
)
from .lens import (
    DeltaLens,
    DiaLens,
    LensMorphism,
    as_diagram,
    check_lens_morphism,
    lens_of_diagram,
)
from .pushout import (
    PushoutBounds,
    PushoutResult,
    Undecided,
    cocone_factorization,
    pushout_along_ioo,
)
from .smult import Smf


@dataclass
class Carrier:
    """The split multivalued function assigned to one base morphism,
    stored as raw tables over the fibre sets."""

    elems: tuple[str, ...]
    s: dict[str, str]
    t: dict[str, str]
    sigma: dict[str, str]

    def __init__(self, elems, s, t, sigma):
        self.elems = tuple(sorted(elems))
        self.s = {k: s[k] for k in sorted(s)}
        self.t = {k: t[k] for k in sorted(t)}
        self.sigma = {k: sigma[k] for k in sorted(sigma)}


@dataclass
class IndexedSmf:
    base: FinCat
    obj_sets: dict[str, tuple[str, ...]]
    carriers: dict[str, Carrier]
    mu: dict[tuple[str, str], dict[tuple[str, str], str]]

    def __init__(self, base, obj_sets, carriers, mu):
        self.base = base
        self.obj_sets = {x: tuple(sorted(obj_sets[x])) for x in sorted(obj_sets)}
        self.carriers = {u: carriers[u] for u in sorted(carriers)}
        self.mu = {
            k: {p: mu[k][p] for p in sorted(mu[k])} for k in sorted(mu)
        }

    def smf_of(self, u: str) -> Smf:
        c = self.carriers[u]
        return Smf(self.obj_sets[self.base.src(u)], c.elems,
                   self.obj_sets[self.base.tgt(u)], c.s, c.t, c.sigma)

    def __eq__(self, other) -> bool:
        if not isinstance(other, IndexedSmf):
            return NotImplemented
        return (self.base == other.base and self.obj_sets == other.obj_sets
                and self.carriers == other.carriers and self.mu == other.mu)


@dataclass
class IdxMorphism:
    """A base functor k with per-object and per-morphism component maps."""

    dom: IndexedSmf
    cod: IndexedSmf
    k: FinFunctor
    theta_obj: dict[str, dict[str, str]]
    theta_mor: dict[str, dict[str, str]]


@dataclass
class FreeCarriers:
    """Carrier data of the free indexed split multivalued function on a
    base category: sets with s/t/sigma only, no composition comparison.
    Deliberately not an IndexedSmf, so it cannot reach elements()."""

    base: FinCat
    obj_sets: dict[str, tuple[str, ...]]
    carriers: dict[str, Carrier]


# ---------------------------------------------------------------------------
# validation


def validate_indexed_smf(x: IndexedSmf) -> Report:
    """Check the laxity axioms.

    L1  s_u ∘ sigma_u = 1 for every u;
    L2  mu respects boundaries: s(mu(α,β)) = s(α), t(mu(α,β)) = t(β);
    L3  mu(sigma_u a, sigma_v(t_u sigma_u a)) = sigma_{v∘u}(a);
    L4  mu(sigma_{1}(s α), α) = α;   L5  mu(α, sigma_{1}(t α)) = α;
    L6  mu(mu(α,β),γ) = mu(α,mu(β,γ)) on compatible triples.
    """
    report = Report()
    base = x.base
    for o in base.objects:
        if o not in x.obj_sets:
            report.add("typing", f"object {o} has no assigned set")
    for u in base.morphisms:
        if u not in x.carriers:
            report.add("typing", f"morphism {u} has no assigned carrier")
    for o in x.obj_sets:
        if o not in set(base.objects):
            report.add("reference", f"set assigned to unknown object {o}")
    for u in x.carriers:
        if u not in base.morphisms:
            report.add("reference", f"carrier assigned to unknown morphism {u}")
    if not report.ok:
        return report

    for u, c in x.carriers.items():
        fx = set(x.obj_sets[base.src(u)])
        fy = set(x.obj_sets[base.tgt(u)])
        elems = set(c.elems)
        if set(c.s) != elems or not set(c.s.values()) <= fx:
            report.add("typing", f"s of {u} is not a total map into the source set")
        if set(c.t) != elems or not set(c.t.values()) <= fy:
            report.add("typing", f"t of {u} is not a total map into the target set")
        if set(c.sigma) != fx or not set(c.sigma.values()) <= elems:
            report.add("typing", f"sigma of {u} is not a total map into the carrier")
    if not report.ok:
        return report

    pairs = set(base.composable_pairs())
    for key in sorted(pairs - set(x.mu)):
        report.add("typing", f"missing mu for composable pair {key}")
    for key in sorted(set(x.mu) - pairs):
        report.add("reference", f"mu given for non-composable pair {key}")
    if not report.ok:
        return report
    for (u, v), table in x.mu.items():
        cu, cv = x.carriers[u], x.carriers[v]
        expected = {
            (a, b) for a in cu.elems for b in cv.elems if cu.t[a] == cv.s[b]
        }
        if set(table) != expected:
            report.add("typing", f"mu table for ({u},{v}) is not keyed by the "
                                 f"pullback pairs")
            continue
        out = set(x.carriers[base.then(u, v)].elems)
        for key, value in table.items():
            if value not in out:
                report.add("typing", f"mu({u},{v}){key} lands outside the "
                                     f"composite carrier")
    if not report.ok:
        return report

    for u, c in x.carriers.items():
        for a in x.obj_sets[base.src(u)]:
            if c.s[c.sigma[a]] != a:
                report.add("L1", f"s(sigma({a})) != {a} at morphism {u}")
    for o in base.objects:
        # the unit comparison is a globular cell, so its carrier leg must
        # also respect the target boundary
        c = x.carriers[base.id_of(o)]
        for a in x.obj_sets[o]:
            if c.t[c.sigma[a]] != a:
                report.add("unit", f"t(sigma({a})) != {a} at the identity of {o}")
    for (u, v), table in x.mu.items():
        uv = base.then(u, v)
        cu, cv, cuv = x.carriers[u], x.carriers[v], x.carriers[uv]
        for (a, b), value in table.items():
            if cuv.s[value] != cu.s[a]:
                report.add("L2", f"s(mu({a},{b})) mismatch at ({u},{v})")
            if cuv.t[value] != cv.t[b]:
                report.add("L2", f"t(mu({a},{b})) mismatch at ({u},{v})")
        for a0 in x.obj_sets[base.src(u)]:
            alpha = cu.sigma[a0]
            beta = cv.sigma[cu.t[alpha]]
            value = table.get((alpha, beta))
            if value is None:
                report.add("L3", f"splitting pair missing at ({u},{v}) on {a0}")
            elif value != cuv.sigma[a0]:
                report.add("L3", f"splitting not preserved at ({u},{v}) on {a0}")
    for u, c in x.carriers.items():
        src, tgt = x.base.src(u), x.base.tgt(u)
        id_src, id_tgt = base.id_of(src), base.id_of(tgt)
        for alpha in c.elems:
            left = x.mu[(id_src, u)].get(
                (x.carriers[id_src].sigma[c.s[alpha]], alpha)
            )
            if left != alpha:
                report.add("L4", f"left unit fails at {alpha} over {u}")
            right = x.mu[(u, id_tgt)].get(
                (alpha, x.carriers[id_tgt].sigma[c.t[alpha]])
            )
            if right != alpha:
                report.add("L5", f"right unit fails at {alpha} over {u}")
    for u in base.morphisms:
        for v in base.morphisms_from(base.tgt(u)):
            for w in base.morphisms_from(base.tgt(v)):
                uv, vw = base.then(u, v), base.then(v, w)
                cu, cv, cw = x.carriers[u], x.carriers[v], x.carriers[w]
                for alpha in cu.elems:
                    for beta in cv.elems:
                        if cu.t[alpha] != cv.s[beta]:
                            continue
                        first = x.mu[(u, v)].get((alpha, beta))
                        for gamma in cw.elems:
                            if cv.t[beta] != cw.s[gamma]:
                                continue
                            second = x.mu[(v, w)].get((beta, gamma))
                            lhs = (
                                x.mu[(uv, w)].get((first, gamma))
                                if first is not None
                                else None
                            )
                            rhs = (
                                x.mu[(u, vw)].get((alpha, second))
                                if second is not None
                                else None
                            )
                            if lhs is None and rhs is None:
                                # boundary failure already reported by L2
                                continue
                            if lhs != rhs:
                                report.add(
                                    "L6",
                                    f"associativity fails at ({alpha},{beta},{gamma})"
                                    f" over ({u},{v},{w})",
                                )
    return report


# ---------------------------------------------------------------------------
# elements and fibres


@dataclass
class ElementsNaming:
    """Provenance of the canonical element names: object name -> (base
    object, fibre element) and morphism name -> (base morphism, carrier
    element)."""

    obj: dict[str, tuple[str, str]]
    mor: dict[str, tuple[str, str]]


def elements_raw(x: IndexedSmf) -> tuple[FinCat, FinFunctor, dict]:
    """Build the elements category data without assuming validity.

    Objects are pairs (x, a), morphisms are pairs (u, α) from (x, s α)
    to (y, t α); identities and composites come from sigma at
    identities and from mu.  On invalid input the output may break the
    category laws; callers validate.
    """
    base = x.base
    objects = [pair(o, a) for o in base.objects for a in x.obj_sets[o]]
    morphisms = {}
    for u in base.morphisms:
        c = x.carriers[u]
        for alpha in c.elems:
            morphisms[pair(u, alpha)] = Mor(
                pair(base.src(u), c.s[alpha]), pair(base.tgt(u), c.t[alpha])
            )
    identity = {}
    for o in base.objects:
        for a in x.obj_sets[o]:
            identity[pair(o, a)] = pair(
                base.id_of(o), x.carriers[base.id_of(o)].sigma[a]
            )
    compose = {}
    for m1, mor1 in morphisms.items():
        u, alpha = unpair(m1)
        for m2, mor2 in morphisms.items():
            if mor1.tgt != mor2.src:
                continue
            v, beta = unpair(m2)
            value = x.mu.get((u, v), {}).get((alpha, beta))
            if value is not None:
                # a missing entry leaves the table partial, which the
                # category validator reports
                compose[(m1, m2)] = pair(base.then(u, v), value)
    cat = FinCat(objects, morphisms, identity, compose)
    proj = FinFunctor(cat, base, {o: unpair(o)[0] for o in objects},
                      {m: unpair(m)[0] for m in morphisms})
    lift = {}
    for o in base.objects:
        for a in x.obj_sets[o]:
            for u in base.morphisms_from(o):
                lift[(pair(o, a), u)] = pair(u, x.carriers[u].sigma[a])
    return cat, proj, lift


def elements(x: IndexedSmf) -> tuple[DeltaLens, ElementsNaming]:
    """The delta lens over the base whose fibres are the given data."""
    report = validate_indexed_smf(x)
    if not report.ok:
        raise BoundaryError(f"invalid indexed data: {report}")
    cat, proj, lift = elements_raw(x)
    lens = DeltaLens(proj, lift)
    naming = ElementsNaming(
        {o: unpair(o) for o in cat.objects},
        {m: unpair(m) for m in cat.morphisms},
    )
    return lens, naming


def fibres(l: DeltaLens) -> IndexedSmf:
    """The indexed data carried by a lens: fibre sets, source/target,
    chosen lifts as splittings, composition as mu."""
    base = l.cat_b
    a_cat = l.cat_a
    obj_sets = {o: tuple(sorted(a for a in a_cat.objects if l.f.fo(a) == o))
                for o in base.objects}
    fibre_mor = {u: sorted(m for m in a_cat.morphisms if l.f.fm(m) == u)
                 for u in base.morphisms}
    carriers = {}
    for u in base.morphisms:
        elems = fibre_mor[u]
        carriers[u] = Carrier(
            elems,
            {m: a_cat.src(m) for m in elems},
            {m: a_cat.tgt(m) for m in elems},
            {a: l.phi(a, u) for a in obj_sets[base.src(u)]},
        )
    mu = {}
    for u, v in base.composable_pairs():
        table = {}
        for alpha in fibre_mor[u]:
            for beta in fibre_mor[v]:
                if a_cat.tgt(alpha) == a_cat.src(beta):
                    table[(alpha, beta)] = a_cat.then(alpha, beta)
        mu[(u, v)] = table
    return IndexedSmf(base, obj_sets, carriers, mu)


def roundtrip_lens(l: DeltaLens) -> LensMorphism:
    """The canonical invertible comparison elements(fibres(l)) -> l over
    the identity of the base; raises if it fails to verify."""
    el, _ = elements(fibres(l))
    h = FinFunctor(
        el.cat_a,
        l.cat_a,
        {o: unpair(o)[1] for o in el.cat_a.objects},
        {m: unpair(m)[1] for m in el.cat_a.morphisms},
    )
    witness = LensMorphism(el, l, h, FinFunctor.identity(l.cat_b))
    report = check_lens_morphism(witness)
    if not report.ok or not is_isomorphism(h):
        raise RuntimeError(f"round-trip witness failed to verify: {report}")
    return witness


def roundtrip_idx(x: IndexedSmf) -> IdxMorphism:
    """The canonical invertible comparison x -> fibres(elements(x))."""
    lens, _ = elements(x)
    back = fibres(lens)
    theta_obj = {
        o: {a: pair(o, a) for a in x.obj_sets[o]} for o in x.base.objects
    }
    theta_mor = {
        u: {alpha: pair(u, alpha) for alpha in x.carriers[u].elems}
        for u in x.base.morphisms
    }
    witness = IdxMorphism(x, back, FinFunctor.identity(x.base), theta_obj, theta_mor)
    report = check_idx_morphism(witness)
    bijective = all(
        len(set(theta_obj[o].values())) == len(x.obj_sets[o])
        and len(back.obj_sets[o]) == len(x.obj_sets[o])
        for o in x.base.objects
    ) and all(
        len(set(theta_mor[u].values())) == len(x.carriers[u].elems)
        and len(back.carriers[u].elems) == len(x.carriers[u].elems)
        for u in x.base.morphisms
    )
    if not report.ok or not bijective:
        raise RuntimeError(f"round-trip witness failed to verify: {report}")
    return witness


def check_idx_morphism(m: IdxMorphism) -> Report:
    report = validate_functor(m.k)
    if not report.ok:
        return report
    x, g = m.dom, m.cod
    if m.k.dom != x.base or m.k.cod != g.base:
        report.add("boundary", "base functor does not match the bases")
        return report
    for o in x.base.objects:
        comp = m.theta_obj.get(o)
        target = set(g.obj_sets[m.k.fo(o)])
        if comp is None or set(comp) != set(x.obj_sets[o]) or not set(
            comp.values()
        ) <= target:
            report.add("typing", f"object component at {o} is not total")
    for u in x.base.morphisms:
        comp = m.theta_mor.get(u)
        target = set(g.carriers[m.k.fm(u)].elems)
        if comp is None or set(comp) != set(x.carriers[u].elems) or not set(
            comp.values()
        ) <= target:
            report.add("typing", f"morphism component at {u} is not total")
    if not report.ok:
        return report
    for u in x.base.morphisms:
        src, tgt = x.base.src(u), x.base.tgt(u)
        cu, gu = x.carriers[u], g.carriers[m.k.fm(u)]
        for alpha in cu.elems:
            if gu.s[m.theta_mor[u][alpha]] != m.theta_obj[src][cu.s[alpha]]:
                report.add("naturality-s", f"s mismatch at {alpha} over {u}")
            if gu.t[m.theta_mor[u][alpha]] != m.theta_obj[tgt][cu.t[alpha]]:
                report.add("naturality-t", f"t mismatch at {alpha} over {u}")
        for a in x.obj_sets[src]:
            if m.theta_mor[u][cu.sigma[a]] != gu.sigma[m.theta_obj[src][a]]:
                report.add("naturality-sigma", f"sigma mismatch at {a} over {u}")
    for (u, v), table in x.mu.items():
        ku, kv = m.k.fm(u), m.k.fm(v)
        guv = g.mu[(ku, kv)]
        for (alpha, beta), value in table.items():
            lhs = m.theta_mor[x.base.then(u, v)][value]
            rhs = guv.get((m.theta_mor[u][alpha], m.theta_mor[v][beta]))
            if rhs is None:
                # the image pair is not composable: s/t naturality has
                # already been reported above
                continue
            if lhs != rhs:
                report.add("naturality-mu", f"mu mismatch at ({alpha},{beta}) "
                                            f"over ({u},{v})")
    return report


def compose_idx_morphisms(m1: IdxMorphism, m2: IdxMorphism) -> IdxMorphism:
    if m1.cod != m2.dom:
        raise BoundaryError("indexed morphisms are not composable")
    theta_obj = {
        o: {a: m2.theta_obj[m1.k.fo(o)][b] for a, b in comp.items()}
        for o, comp in m1.theta_obj.items()
    }
    theta_mor = {
        u: {alpha: m2.theta_mor[m1.k.fm(u)][beta] for alpha, beta in comp.items()}
        for u, comp in m1.theta_mor.items()
    }
    return IdxMorphism(m1.dom, m2.cod, m1.k.then(m2.k), theta_obj, theta_mor)


def identity_idx_morphism(x: IndexedSmf) -> IdxMorphism:
    return IdxMorphism(
        x,
        x,
        FinFunctor.identity(x.base),
        {o: {a: a for a in x.obj_sets[o]} for o in x.base.objects},
        {u: {a: a for a in x.carriers[u].elems} for u in x.base.morphisms},
    )


def elements_morphism(m: IdxMorphism) -> LensMorphism:
    """Action of the elements construction on an indexed morphism."""
    dom_lens, _ = elements(m.dom)
    cod_lens, _ = elements(m.cod)
    obj_map = {}
    for o in dom_lens.cat_a.objects:
        x, a = unpair(o)
        obj_map[o] = pair(m.k.fo(x), m.theta_obj[x][a])
    mor_map = {}
    for mo in dom_lens.cat_a.morphisms:
        u, alpha = unpair(mo)
        mor_map[mo] = pair(m.k.fm(u), m.theta_mor[u][alpha])
    h = FinFunctor(dom_lens.cat_a, cod_lens.cat_a, obj_map, mor_map)
    return LensMorphism(dom_lens, cod_lens, h, m.k)


def fibres_morphism(m: LensMorphism) -> IdxMorphism:
    """Action of the fibres construction on a lens morphism: the
    component maps are restrictions of the top functor."""
    dom_idx = fibres(m.dom)
    cod_idx = fibres(m.cod)
    theta_obj = {
        o: {a: m.h.fo(a) for a in dom_idx.obj_sets[o]}
        for o in dom_idx.base.objects
    }
    theta_mor = {
        u: {alpha: m.h.fm(alpha) for alpha in dom_idx.carriers[u].elems}
        for u in dom_idx.base.morphisms
    }
    return IdxMorphism(dom_idx, cod_idx, m.k, theta_obj, theta_mor)


# ---------------------------------------------------------------------------
# the split-opfibration detector on indexed data


def is_split_opfibration_idx(x: IndexedSmf) -> bool:
    """For every u: x -> y and α over u there must be exactly one χ over
    the identity of y with matching boundary and mu(sigma(s α), χ) = α."""
    base = x.base
    for u in base.morphisms:
        c = x.carriers[u]
        id_tgt = base.id_of(base.tgt(u))
        cid = x.carriers[id_tgt]
        table = x.mu[(u, id_tgt)]
        for alpha in c.elems:
            lifted = c.sigma[c.s[alpha]]
            matches = [
                chi
                for chi in cid.elems
                if cid.s[chi] == c.t[lifted] and table[(lifted, chi)] == alpha
            ]
            if len(matches) != 1:
                return False
    return True


# ---------------------------------------------------------------------------
# transport: pullback and pushforward along base functors


def pullback_idx(x: IndexedSmf, k: FinFunctor) -> IndexedSmf:
    """Reindex along k by pre-composition."""
    if k.cod != x.base:
        raise BoundaryError("functor does not land in the base")
    base = k.dom
    obj_sets = {o: x.obj_sets[k.fo(o)] for o in base.objects}
    carriers = {u: x.carriers[k.fm(u)] for u in base.morphisms}
    mu = {
        (u, v): x.mu[(k.fm(u), k.fm(v))] for u, v in base.composable_pairs()
    }
    return IndexedSmf(base, obj_sets, carriers, mu)


def cartesian_lift(x: IndexedSmf, k: FinFunctor) -> IdxMorphism:
    """The comparison pullback_idx(x, k) -> x with identity components."""
    pb = pullback_idx(x, k)
    return IdxMorphism(
        pb,
        x,
        k,
        {o: {a: a for a in pb.obj_sets[o]} for o in pb.base.objects},
        {u: {a: a for a in pb.carriers[u].elems} for u in pb.base.morphisms},
    )


@dataclass
class PushforwardResult:
    idx: IndexedSmf
    witness: IdxMorphism
    pushout: PushoutResult


def pushforward_idx(x: IndexedSmf, g: FinFunctor, bounds: PushoutBounds | None = None):
    """Transport indexed data forward along g out of its base.

    Route: present the elements lens diagrammatically, comprehensively
    factorize the composite to the new base, push the identity-on-objects
    leg out along the initial part (bounded), reassemble the diagram,
    and take fibres.  Returns PushforwardResult or Undecided; the output
    is revalidated, so Undecided is the only failure mode.
    """
    if g.dom != x.base:
        raise BoundaryError("functor does not start at the base")
    lens, _ = elements(x)
    dia = as_diagram(lens)
    composite = dia.p.then(dia.f).then(g)
    fact = comprehensive_factorization(composite)
    po = pushout_along_ioo(dia.p, fact.first, bounds)
    if isinstance(po, Undecided):
        return po
    new_p = po.inj_right
    new_f = cocone_factorization(po, lens.f.then(g), fact.second)
    new_lens, _ = lens_of_diagram(DiaLens(new_p, new_f))
    out = fibres(new_lens)
    report = validate_indexed_smf(out)
    if not report.ok:
        return Undecided(f"pushforward output failed validation: {report}")

    lens_morphism = LensMorphism(lens, new_lens, po.inj_left, g)
    if not check_lens_morphism(lens_morphism).ok:
        return Undecided("pushforward witness failed to verify")
    idx_map = fibres_morphism(lens_morphism)
    back = roundtrip_idx(x)
    witness = compose_idx_morphisms(back, idx_map)
    return PushforwardResult(out, witness, po)


def invert_roundtrip(m: IdxMorphism) -> IdxMorphism:
    """Inverse of a verified invertible indexed morphism over an
    identity base functor."""
    theta_obj = {
        o: {b: a for a, b in comp.items()} for o, comp in m.theta_obj.items()
    }
    theta_mor = {
        u: {b: a for a, b in comp.items()} for u, comp in m.theta_mor.items()
    }
    return IdxMorphism(m.cod, m.dom, m.k, theta_obj, theta_mor)


# ---------------------------------------------------------------------------
# products and coproducts, global and fibrewise


def product_idx(x: IndexedSmf, y: IndexedSmf):
    """Product over the product base, with projection morphisms."""
    base, pi1, pi2 = product_category(x.base, y.base)
    obj_sets = {}
    for o in base.objects:
        ox, oy = unpair(o)
        obj_sets[o] = tuple(
            pair(a, b) for a in x.obj_sets[ox] for b in y.obj_sets[oy]
        )
    carriers = {}
    for u in base.morphisms:
        ux, uy = unpair(u)
        cx, cy = x.carriers[ux], y.carriers[uy]
        elems = [pair(a, b) for a in cx.elems for b in cy.elems]
        carriers[u] = Carrier(
            elems,
            {pair(a, b): pair(cx.s[a], cy.s[b]) for a in cx.elems for b in cy.elems},
            {pair(a, b): pair(cx.t[a], cy.t[b]) for a in cx.elems for b in cy.elems},
            {pair(a, b): pair(cx.sigma[a], cy.sigma[b])
             for a in x.obj_sets[x.base.src(ux)] for b in y.obj_sets[y.base.src(uy)]},
        )
    mu = {}
    for u, v in base.composable_pairs():
        ux, uy = unpair(u)
        vx, vy = unpair(v)
        tx, ty = x.mu[(ux, vx)], y.mu[(uy, vy)]
        table = {}
        for (a1, b1) in tx:
            for (a2, b2) in ty:
                table[(pair(a1, a2), pair(b1, b2))] = pair(tx[(a1, b1)], ty[(a2, b2)])
        mu[(u, v)] = table
    prod = IndexedSmf(base, obj_sets, carriers, mu)
    proj1 = IdxMorphism(
        prod, x, pi1,
        {o: {e: unpair(e)[0] for e in prod.obj_sets[o]} for o in base.objects},
        {u: {e: unpair(e)[0] for e in prod.carriers[u].elems}
         for u in base.morphisms},
    )
    proj2 = IdxMorphism(
        prod, y, pi2,
        {o: {e: unpair(e)[1] for e in prod.obj_sets[o]} for o in base.objects},
        {u: {e: unpair(e)[1] for e in prod.carriers[u].elems}
         for u in base.morphisms},
    )
    return prod, proj1, proj2


def coproduct_idx(x: IndexedSmf, y: IndexedSmf):
    """Coproduct over the coproduct base, with injections."""
    base, ja, jb = coproduct_category(x.base, y.base)
    obj_sets = {}
    carriers = {}
    mu = {}
    for o in x.base.objects:
        obj_sets[inl(o)] = x.obj_sets[o]
    for o in y.base.objects:
        obj_sets[inr(o)] = y.obj_sets[o]
    for u in x.base.morphisms:
        carriers[inl(u)] = x.carriers[u]
    for u in y.base.morphisms:
        carriers[inr(u)] = y.carriers[u]
    for (u, v), table in x.mu.items():
        mu[(inl(u), inl(v))] = table
    for (u, v), table in y.mu.items():
        mu[(inr(u), inr(v))] = table
    cop = IndexedSmf(base, obj_sets, carriers, mu)
    inj1 = IdxMorphism(
        x, cop, ja,
        {o: {a: a for a in x.obj_sets[o]} for o in x.base.objects},
        {u: {a: a for a in x.carriers[u].elems} for u in x.base.morphisms},
    )
    inj2 = IdxMorphism(
        y, cop, jb,
        {o: {a: a for a in y.obj_sets[o]} for o in y.base.objects},
        {u: {a: a for a in y.carriers[u].elems} for u in y.base.morphisms},
    )
    return cop, inj1, inj2


def fib_product_idx(x: IndexedSmf, y: IndexedSmf):
    """Fibrewise product over a shared base, with projections over the
    identity."""
    if x.base != y.base:
        raise BoundaryError("fibrewise product needs a common base")
    base = x.base
    obj_sets = {
        o: tuple(pair(a, b) for a in x.obj_sets[o] for b in y.obj_sets[o])
        for o in base.objects
    }
    carriers = {}
    for u in base.morphisms:
        cx, cy = x.carriers[u], y.carriers[u]
        elems = [pair(a, b) for a in cx.elems for b in cy.elems]
        carriers[u] = Carrier(
            elems,
            {pair(a, b): pair(cx.s[a], cy.s[b]) for a in cx.elems for b in cy.elems},
            {pair(a, b): pair(cx.t[a], cy.t[b]) for a in cx.elems for b in cy.elems},
            {pair(a, b): pair(cx.sigma[a], cy.sigma[b])
             for a in x.obj_sets[base.src(u)] for b in y.obj_sets[base.src(u)]},
        )
    mu = {}
    for u, v in base.composable_pairs():
        tx, ty = x.mu[(u, v)], y.mu[(u, v)]
        table = {}
        for (a1, b1) in tx:
            for (a2, b2) in ty:
                table[(pair(a1, a2), pair(b1, b2))] = pair(tx[(a1, b1)], ty[(a2, b2)])
        mu[(u, v)] = table
    prod = IndexedSmf(base, obj_sets, carriers, mu)
    one = FinFunctor.identity(base)
    proj1 = IdxMorphism(
        prod, x, one,
        {o: {e: unpair(e)[0] for e in prod.obj_sets[o]} for o in base.objects},
        {u: {e: unpair(e)[0] for e in prod.carriers[u].elems}
         for u in base.morphisms},
    )
    proj2 = IdxMorphism(
        prod, y, one,
        {o: {e: unpair(e)[1] for e in prod.obj_sets[o]} for o in base.objects},
        {u: {e: unpair(e)[1] for e in prod.carriers[u].elems}
         for u in base.morphisms},
    )
    return prod, proj1, proj2


def fib_coproduct_idx(x: IndexedSmf, y: IndexedSmf):
    """Fibrewise disjoint union over a shared base, with injections."""
    if x.base != y.base:
        raise BoundaryError("fibrewise coproduct needs a common base")
    base = x.base
    obj_sets = {
        o: tuple([inl(a) for a in x.obj_sets[o]] + [inr(b) for b in y.obj_sets[o]])
        for o in base.objects
    }
    carriers = {}
    for u in base.morphisms:
        cx, cy = x.carriers[u], y.carriers[u]
        elems = [inl(a) for a in cx.elems] + [inr(b) for b in cy.elems]
        s = {inl(a): inl(cx.s[a]) for a in cx.elems}
        s.update({inr(b): inr(cy.s[b]) for b in cy.elems})
        t = {inl(a): inl(cx.t[a]) for a in cx.elems}
        t.update({inr(b): inr(cy.t[b]) for b in cy.elems})
        sigma = {inl(a): inl(cx.sigma[a]) for a in x.obj_sets[base.src(u)]}
        sigma.update({inr(b): inr(cy.sigma[b]) for b in y.obj_sets[base.src(u)]})
        carriers[u] = Carrier(elems, s, t, sigma)
    mu = {}
    for u, v in base.composable_pairs():
        table = {}
        for (a1, b1), value in x.mu[(u, v)].items():
            table[(inl(a1), inl(b1))] = inl(value)
        for (a2, b2), value in y.mu[(u, v)].items():
            table[(inr(a2), inr(b2))] = inr(value)
        mu[(u, v)] = table
    cop = IndexedSmf(base, obj_sets, carriers, mu)
    one = FinFunctor.identity(base)
    inj1 = IdxMorphism(
        x, cop, one,
        {o: {a: inl(a) for a in x.obj_sets[o]} for o in base.objects},
        {u: {a: inl(a) for a in x.carriers[u].elems} for u in base.morphisms},
    )
    inj2 = IdxMorphism(
        y, cop, one,
        {o: {b: inr(b) for b in y.obj_sets[o]} for o in base.objects},
        {u: {b: inr(b) for b in y.carriers[u].elems} for u in base.morphisms},
    )
    return cop, inj1, inj2


# ---------------------------------------------------------------------------
# free carriers


def free_carriers(base: FinCat) -> FreeCarriers:
    """Carrier data of the free construction on a base category.

    The set at x collects all morphisms into x; the carrier at
    u: x -> y is a copy of the set at x together with the quadruples
    (α, β, γ, δ) with β∘α an identity, δ∘γ∘β = u and γ not an identity.
    Only s, t and sigma are provided; there is no composition
    comparison, so this data cannot be passed to elements().
    """
    obj_sets = {
        x: tuple(sorted(m for m in base.morphisms if base.tgt(m) == x))
        for x in base.objects
    }
    carriers = {}
    for u in base.morphisms:
        src, tgt = base.src(u), base.tgt(u)
        elems = {}
        s = {}
        t = {}
        sigma = {}
        for alpha in obj_sets[src]:
            name = f"cp({alpha})"
            elems[name] = None
            s[name] = alpha
            t[name] = base.then(alpha, u)
            sigma[alpha] = name
        for alpha in obj_sets[src]:
            for beta in base.morphisms_from(src):
                if base.then(alpha, beta) != base.id_of(base.src(alpha)):
                    continue
                for gamma in base.morphisms_from(base.tgt(beta)):
                    if base.is_id(gamma):
                        continue
                    for delta in base.hom(base.tgt(gamma), tgt):
                        if base.then(base.then(beta, gamma), delta) == u:
                            name = f"({alpha},{beta},{gamma},{delta})"
                            elems[name] = None
                            s[name] = alpha
                            t[name] = delta
        carriers[u] = Carrier(list(elems), s, t, sigma)
    return FreeCarriers(base, obj_sets, carriers)
