"""Finite categories and functors as explicit composition tables.

Everything in this package is built on two data structures: a finite
category (objects, morphisms, identity table, closed composition table)
and a functor between two of them (object map, morphism map).  All
identifiers are opaque strings; constructed entities get deterministic
canonical names so that round-trip isomorphisms are literal renamings,
never isomorphism searches.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field


def pair(a: str, b: str) -> str:
    """Canonical name for an ordered pair of identifiers."""
    return f"({a},{b})"


def triple(a: str, b: str, c: str) -> str:
    return f"({a},{b},{c})"


class BoundaryError(ValueError):
    """Raised when operands do not share the required boundary."""


@dataclass
class Problem:
    law: str
    detail: str

    def __str__(self) -> str:
        return f"{self.law}: {self.detail}"


@dataclass
class Report:
    """Outcome of a validation pass.  Violations are data, not errors."""

    problems: list[Problem] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.problems

    def add(self, law: str, detail: str) -> None:
        self.problems.append(Problem(law, detail))

    def __str__(self) -> str:
        if self.ok:
            return "ok"
        return "; ".join(str(p) for p in self.problems)


@dataclass(frozen=True)
class Mor:
    src: str
    tgt: str


class FinCat:
    """A finite category given by explicit tables.

    ``compose[(f, g)]`` is the composite "f then g", i.e. g after f for
    f: x -> y and g: y -> z.  The table must be closed: exactly the
    composable pairs appear.  Construction does not validate the laws;
    use :func:`validate_category`.
    """

    def __init__(self, objects, morphisms, identity, compose):
        self.objects: tuple[str, ...] = tuple(sorted(objects))
        self.morphisms: dict[str, Mor] = {
            m: morphisms[m] for m in sorted(morphisms)
        }
        self.identity: dict[str, str] = {x: identity[x] for x in sorted(identity)}
        self.compose: dict[tuple[str, str], str] = {
            k: compose[k] for k in sorted(compose)
        }
        self._hom: dict[tuple[str, str], list[str]] | None = None

    def src(self, m: str) -> str:
        return self.morphisms[m].src

    def tgt(self, m: str) -> str:
        return self.morphisms[m].tgt

    def id_of(self, x: str) -> str:
        return self.identity[x]

    def then(self, f: str, g: str) -> str:
        """The composite g∘f for f: x->y, g: y->z."""
        try:
            return self.compose[(f, g)]
        except KeyError:
            raise BoundaryError(f"morphisms {f} and {g} are not composable")

    def is_id(self, m: str) -> bool:
        mor = self.morphisms[m]
        return mor.src == mor.tgt and self.identity.get(mor.src) == m

    def hom(self, x: str, y: str) -> list[str]:
        if self._hom is None:
            table: dict[tuple[str, str], list[str]] = {}
            for m, mor in self.morphisms.items():
                table.setdefault((mor.src, mor.tgt), []).append(m)
            self._hom = table
        return self._hom.get((x, y), [])

    def morphisms_from(self, x: str) -> list[str]:
        return [m for m, mor in self.morphisms.items() if mor.src == x]

    def morphisms_to(self, y: str) -> list[str]:
        return [m for m, mor in self.morphisms.items() if mor.tgt == y]

    def composable_pairs(self):
        for f, mf in self.morphisms.items():
            for g, mg in self.morphisms.items():
                if mf.tgt == mg.src:
                    yield f, g

    def non_identities(self) -> list[str]:
        return [m for m in self.morphisms if not self.is_id(m)]

    def __eq__(self, other) -> bool:
        if not isinstance(other, FinCat):
            return NotImplemented
        return (
            self.objects == other.objects
            and self.morphisms == other.morphisms
            and self.identity == other.identity
            and self.compose == other.compose
        )

    def __repr__(self) -> str:
        return f"FinCat({len(self.objects)} objects, {len(self.morphisms)} morphisms)"


class FinFunctor:
    def __init__(self, dom: FinCat, cod: FinCat, obj_map, mor_map):
        self.dom = dom
        self.cod = cod
        self.obj_map: dict[str, str] = {x: obj_map[x] for x in sorted(obj_map)}
        self.mor_map: dict[str, str] = {m: mor_map[m] for m in sorted(mor_map)}

    def fo(self, x: str) -> str:
        return self.obj_map[x]

    def fm(self, m: str) -> str:
        return self.mor_map[m]

    def then(self, other: FinFunctor) -> FinFunctor:
        """Composite functor: self first, then other."""
        if other.dom is not self.cod and other.dom != self.cod:
            raise BoundaryError("functors are not composable")
        return FinFunctor(
            self.dom,
            other.cod,
            {x: other.fo(y) for x, y in self.obj_map.items()},
            {m: other.fm(n) for m, n in self.mor_map.items()},
        )

    @staticmethod
    def identity(cat: FinCat) -> FinFunctor:
        return FinFunctor(
            cat, cat, {x: x for x in cat.objects}, {m: m for m in cat.morphisms}
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, FinFunctor):
            return NotImplemented
        return (
            self.dom == other.dom
            and self.cod == other.cod
            and self.obj_map == other.obj_map
            and self.mor_map == other.mor_map
        )

    def __repr__(self) -> str:
        return f"FinFunctor({self.dom!r} -> {self.cod!r})"


@dataclass
class FactorizationResult:
    mid: FinCat
    first: FinFunctor
    second: FinFunctor


# ---------------------------------------------------------------------------
# validation


def validate_category(cat) -> Report:
    """Check the category laws on raw data or a FinCat.

    Reference problems (unknown identifiers) are reported with law
    "reference"; a partial or overfull composition table is reported
    with law "composition-table".
    """
    report = Report()
    if isinstance(cat, dict):
        cat = _fincat_from_raw(cat, report)
        if cat is None:
            return report
    objs = set(cat.objects)
    for m, mor in cat.morphisms.items():
        if mor.src not in objs:
            report.add("reference", f"morphism {m} has unknown src {mor.src}")
        if mor.tgt not in objs:
            report.add("reference", f"morphism {m} has unknown tgt {mor.tgt}")
    for x in cat.objects:
        if x not in cat.identity:
            report.add("identity", f"object {x} has no identity")
    for x, i in cat.identity.items():
        if x not in objs:
            report.add("reference", f"identity table names unknown object {x}")
        elif i not in cat.morphisms:
            report.add("reference", f"identity of {x} is unknown morphism {i}")
        elif cat.src(i) != x or cat.tgt(i) != x:
            report.add("identity", f"identity of {x} has endpoints "
                                    f"{cat.src(i)} -> {cat.tgt(i)}")
    if not report.ok:
        return report

    composable = {(f, g) for f, g in cat.composable_pairs()}
    present = set(cat.compose)
    for key in sorted(composable - present):
        report.add("composition-table", f"missing composite for pair {key}")
    for key in sorted(present - composable):
        report.add("composition-table", f"table entry for non-composable pair {key}")
    for (f, g), h in cat.compose.items():
        if h not in cat.morphisms:
            report.add("reference", f"composite of ({f},{g}) is unknown morphism {h}")
        elif (f, g) in composable:
            if cat.src(h) != cat.src(f) or cat.tgt(h) != cat.tgt(g):
                report.add("composition-endpoints",
                           f"composite {h} of ({f},{g}) has wrong endpoints")
    if not report.ok:
        return report

    for m in cat.morphisms:
        left = cat.compose[(cat.id_of(cat.src(m)), m)]
        if left != m:
            report.add("left-unit", f"id;{m} = {left} != {m}")
        right = cat.compose[(m, cat.id_of(cat.tgt(m)))]
        if right != m:
            report.add("right-unit", f"{m};id = {right} != {m}")
    for f, g in composable:
        for h in cat.morphisms_from(cat.tgt(g)):
            lhs = cat.compose[(cat.compose[(f, g)], h)]
            rhs = cat.compose[(f, cat.compose[(g, h)])]
            if lhs != rhs:
                report.add("associativity", f"({f};{g});{h} = {lhs} != {rhs}")
    return report


def _fincat_from_raw(data: dict, report: Report) -> FinCat | None:
    try:
        morphisms = {m["id"]: Mor(m["src"], m["tgt"]) for m in data["morphisms"]}
        compose = {
            (e["first"], e["then"]): e["result"] for e in data.get("compose", [])
        }
        return FinCat(data["objects"], morphisms, data.get("identities", {}), compose)
    except (KeyError, TypeError) as exc:
        report.add("structure", f"malformed category data: {exc!r}")
        return None


def validate_functor(fun) -> Report:
    """Check functor laws; assumes dom and cod validate."""
    report = Report()
    if isinstance(fun, dict):
        try:
            fun = FinFunctor(fun["dom"], fun["cod"], fun["obj_map"], fun["mor_map"])
        except (KeyError, TypeError) as exc:
            report.add("structure", f"malformed functor data: {exc!r}")
            return report
    dom, cod = fun.dom, fun.cod
    for x in dom.objects:
        if x not in fun.obj_map:
            report.add("reference", f"object {x} is not mapped")
        elif fun.obj_map[x] not in set(cod.objects):
            report.add("reference", f"object {x} maps to unknown {fun.obj_map[x]}")
    for m in dom.morphisms:
        if m not in fun.mor_map:
            report.add("reference", f"morphism {m} is not mapped")
        elif fun.mor_map[m] not in cod.morphisms:
            report.add("reference", f"morphism {m} maps to unknown {fun.mor_map[m]}")
    for x in fun.obj_map:
        if x not in set(dom.objects):
            report.add("reference", f"object map names unknown object {x}")
    for m in fun.mor_map:
        if m not in dom.morphisms:
            report.add("reference", f"morphism map names unknown morphism {m}")
    if not report.ok:
        return report

    for m, mor in dom.morphisms.items():
        image = fun.fm(m)
        if cod.src(image) != fun.fo(mor.src) or cod.tgt(image) != fun.fo(mor.tgt):
            report.add("src-tgt", f"image of {m} has endpoints "
                                   f"{cod.src(image)} -> {cod.tgt(image)}")
    if not report.ok:
        return report
    for x in dom.objects:
        if fun.fm(dom.id_of(x)) != cod.id_of(fun.fo(x)):
            report.add("identities", f"identity of {x} is not preserved")
    for f, g in dom.composable_pairs():
        if fun.fm(dom.then(f, g)) != cod.then(fun.fm(f), fun.fm(g)):
            report.add("composites", f"composite of ({f},{g}) is not preserved")
    return report


# ---------------------------------------------------------------------------
# predicates


def is_identity_on_objects(fun: FinFunctor) -> bool:
    return fun.dom.objects == fun.cod.objects and all(
        fun.fo(x) == x for x in fun.dom.objects
    )


def is_discrete_opfibration(fun: FinFunctor) -> bool:
    """Every (object a, morphism out of F a) has exactly one lift at a."""
    for a in fun.dom.objects:
        outgoing = [m for m in fun.dom.morphisms_from(a)]
        for u in fun.cod.morphisms_from(fun.fo(a)):
            lifts = [w for w in outgoing if fun.fm(w) == u]
            if len(lifts) != 1:
                return False
    return True


def is_discrete_fibration(fun: FinFunctor) -> bool:
    for a in fun.dom.objects:
        incoming = [m for m in fun.dom.morphisms_to(a)]
        for u in fun.cod.morphisms_to(fun.fo(a)):
            lifts = [w for w in incoming if fun.fm(w) == u]
            if len(lifts) != 1:
                return False
    return True


def is_faithful(fun: FinFunctor) -> bool:
    for x in fun.dom.objects:
        for y in fun.dom.objects:
            seen = [fun.fm(m) for m in fun.dom.hom(x, y)]
            if len(seen) != len(set(seen)):
                return False
    return True


def is_fully_faithful(fun: FinFunctor) -> bool:
    for x in fun.dom.objects:
        for y in fun.dom.objects:
            seen = [fun.fm(m) for m in fun.dom.hom(x, y)]
            target = fun.cod.hom(fun.fo(x), fun.fo(y))
            if len(seen) != len(set(seen)) or set(seen) != set(target):
                return False
    return True


def is_injective_on_objects(fun: FinFunctor) -> bool:
    images = [fun.fo(x) for x in fun.dom.objects]
    return len(images) == len(set(images))


def is_surjective_on_objects(fun: FinFunctor) -> bool:
    return set(fun.fo(x) for x in fun.dom.objects) == set(fun.cod.objects)


def is_bijective_on_objects(fun: FinFunctor) -> bool:
    return is_injective_on_objects(fun) and is_surjective_on_objects(fun)


def is_isomorphism(fun: FinFunctor) -> bool:
    if not is_bijective_on_objects(fun):
        return False
    images = [fun.fm(m) for m in fun.dom.morphisms]
    return len(images) == len(set(images)) and set(images) == set(fun.cod.morphisms)


# ---------------------------------------------------------------------------
# comma categories, components, initial functors


def comma_over(fun: FinFunctor, c: str) -> FinCat:
    """The comma category F/c: objects (x, u: F x -> c).

    A morphism (x, u) -> (x', u') is a w: x -> x' in the domain with
    u' ∘ F w = u; it is named by the triple (w, u, u').
    """
    dom, cod = fun.dom, fun.cod
    objects = []
    for x in dom.objects:
        for u in cod.hom(fun.fo(x), c):
            objects.append(pair(x, u))
    morphisms = {}
    identity = {}
    for x in dom.objects:
        for u in cod.hom(fun.fo(x), c):
            for w in dom.morphisms_from(x):
                xp = dom.tgt(w)
                for up in cod.hom(fun.fo(xp), c):
                    if cod.then(fun.fm(w), up) == u:
                        morphisms[triple(w, u, up)] = Mor(pair(x, u), pair(xp, up))
            identity[pair(x, u)] = triple(dom.id_of(x), u, u)
    compose = {}
    for m1, mor1 in morphisms.items():
        for m2, mor2 in morphisms.items():
            if mor1.tgt == mor2.src:
                w1, u1, _ = _untriple(m1)
                w2, _, u2p = _untriple(m2)
                compose[(m1, m2)] = triple(dom.then(w1, w2), u1, u2p)
    return FinCat(objects, morphisms, identity, compose)


def _untriple(name: str) -> tuple[str, str, str]:
    # names built by triple() from comma ids; split on the two
    # separator commas inserted by triple itself
    body = name[1:-1]
    first, rest = _split_once(body)
    second, third = _split_once(rest)
    return first, second, third


def _split_once(body: str) -> tuple[str, str]:
    depth = 0
    for i, ch in enumerate(body):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            return body[:i], body[i + 1:]
    raise ValueError(f"not a tuple encoding: {body}")


def unpair(name: str) -> tuple[str, str]:
    return _split_once(name[1:-1])


def pi0(cat: FinCat) -> list[tuple[str, ...]]:
    """Connected components of the underlying undirected graph."""
    parent = {x: x for x in cat.objects}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for m in cat.non_identities():
        a, b = find(cat.src(m)), find(cat.tgt(m))
        if a != b:
            parent[max(a, b)] = min(a, b)
    groups: dict[str, list[str]] = {}
    for x in cat.objects:
        groups.setdefault(find(x), []).append(x)
    return [tuple(sorted(groups[r])) for r in sorted(groups)]


def is_initial_functor(fun: FinFunctor) -> bool:
    """True iff every comma category F/c is nonempty and connected.

    These are exactly the functors orthogonal to discrete opfibrations,
    the left class of the comprehensive factorization.
    """
    for c in fun.cod.objects:
        comma = comma_over(fun, c)
        if len(pi0(comma)) != 1:
            return False
    return True


def comprehensive_factorization(fun: FinFunctor) -> FactorizationResult:
    """Factor F: X -> C as an initial functor followed by a discrete
    opfibration.

    The discrete opfibration is the elements projection of the
    set-valued functor c |-> components of F/c; the initial part sends
    x to (F x, component of (x, id)).  Component labels are the least
    object name in the component, so the output is deterministic.
    """
    dom, cod = fun.dom, fun.cod
    component_of: dict[tuple[str, str], str] = {}
    g_obj: dict[str, list[str]] = {}
    for c in cod.objects:
        comma = comma_over(fun, c)
        labels = []
        for comp in pi0(comma):
            label = comp[0]
            labels.append(label)
            for o in comp:
                component_of[(c, o)] = label
        g_obj[c] = sorted(labels)

    def g_mor(v: str, k: str) -> str:
        # action of G on v: c -> c' applied to component label k of F/c
        x, u = unpair(k)
        return component_of[(cod.tgt(v), pair(x, cod.then(u, v)))]

    objects = [pair(c, k) for c in cod.objects for k in g_obj[c]]
    morphisms = {}
    identity = {}
    for c in cod.objects:
        for k in g_obj[c]:
            for v in cod.morphisms_from(c):
                morphisms[pair(v, k)] = Mor(pair(c, k), pair(cod.tgt(v), g_mor(v, k)))
            identity[pair(c, k)] = pair(cod.id_of(c), k)
    compose = {}
    for m1, mor1 in morphisms.items():
        for m2, mor2 in morphisms.items():
            if mor1.tgt == mor2.src:
                v1, k1 = unpair(m1)
                v2, _ = unpair(m2)
                compose[(m1, m2)] = pair(cod.then(v1, v2), k1)
    mid = FinCat(objects, morphisms, identity, compose)

    first_obj = {}
    first_mor = {}
    for x in dom.objects:
        c = fun.fo(x)
        first_obj[x] = pair(c, component_of[(c, pair(x, cod.id_of(c)))])
    for w, mor in dom.morphisms.items():
        c = fun.fo(mor.src)
        k = component_of[(c, pair(mor.src, cod.id_of(c)))]
        first_mor[w] = pair(fun.fm(w), k)
    first = FinFunctor(dom, mid, first_obj, first_mor)
    second = FinFunctor(
        mid,
        cod,
        {o: unpair(o)[0] for o in objects},
        {m: unpair(m)[0] for m in morphisms},
    )
    return FactorizationResult(mid, first, second)


# ---------------------------------------------------------------------------
# décalage, pullbacks, (co)products, codiscrete


def decalage(cat: FinCat) -> tuple[FinCat, FinFunctor]:
    """The coproduct of all slice categories, with the domain projection.

    Objects are the morphisms u: x -> a of the input (u sits in the
    slice over a); a morphism (u, u') in a common slice is a w with
    u' ∘ w = u, named (w, u, u').
    """
    objects = list(cat.morphisms)
    morphisms = {}
    identity = {}
    for u, mu in cat.morphisms.items():
        for w in cat.morphisms_from(mu.src):
            for up in cat.hom(cat.tgt(w), mu.tgt):
                if cat.then(w, up) == u:
                    morphisms[triple(w, u, up)] = Mor(u, up)
        identity[u] = triple(cat.id_of(mu.src), u, u)
    compose = {}
    for m1, mor1 in morphisms.items():
        for m2, mor2 in morphisms.items():
            if mor1.tgt == mor2.src:
                w1, u1, _ = _untriple(m1)
                w2, _, u2p = _untriple(m2)
                compose[(m1, m2)] = triple(cat.then(w1, w2), u1, u2p)
    dec = FinCat(objects, morphisms, identity, compose)
    eps = FinFunctor(
        dec,
        cat,
        {u: cat.src(u) for u in objects},
        {m: _untriple(m)[0] for m in morphisms},
    )
    return dec, eps


def decalage_functor(fun: FinFunctor, dec_dom: FinCat, dec_cod: FinCat) -> FinFunctor:
    """The action of décalage on a functor, between prebuilt décalages."""
    return FinFunctor(
        dec_dom,
        dec_cod,
        {u: fun.fm(u) for u in dec_dom.objects},
        {
            m: triple(*(fun.fm(part) for part in _untriple(m)))
            for m in dec_dom.morphisms
        },
    )


def pullback_category(
    f: FinFunctor, g: FinFunctor
) -> tuple[FinCat, FinFunctor, FinFunctor]:
    """Strict pullback of f: X -> A and g: Y -> A in Cat."""
    if f.cod != g.cod:
        raise BoundaryError("pullback needs a common codomain")
    X, Y = f.dom, g.dom
    objects = [
        pair(x, y) for x in X.objects for y in Y.objects if f.fo(x) == g.fo(y)
    ]
    morphisms = {}
    identity = {}
    for w in X.morphisms:
        for v in Y.morphisms:
            if f.fm(w) == g.fm(v):
                morphisms[pair(w, v)] = Mor(
                    pair(X.src(w), Y.src(v)), pair(X.tgt(w), Y.tgt(v))
                )
    for o in objects:
        x, y = unpair(o)
        identity[o] = pair(X.id_of(x), Y.id_of(y))
    compose = {}
    for m1, mor1 in morphisms.items():
        for m2, mor2 in morphisms.items():
            if mor1.tgt == mor2.src:
                w1, v1 = unpair(m1)
                w2, v2 = unpair(m2)
                compose[(m1, m2)] = pair(X.then(w1, w2), Y.then(v1, v2))
    p = FinCat(objects, morphisms, identity, compose)
    pi1 = FinFunctor(p, X, {o: unpair(o)[0] for o in objects},
                     {m: unpair(m)[0] for m in morphisms})
    pi2 = FinFunctor(p, Y, {o: unpair(o)[1] for o in objects},
                     {m: unpair(m)[1] for m in morphisms})
    return p, pi1, pi2


def product_category(a: FinCat, b: FinCat) -> tuple[FinCat, FinFunctor, FinFunctor]:
    objects = [pair(x, y) for x in a.objects for y in b.objects]
    morphisms = {
        pair(f, g): Mor(pair(a.src(f), b.src(g)), pair(a.tgt(f), b.tgt(g)))
        for f in a.morphisms
        for g in b.morphisms
    }
    identity = {pair(x, y): pair(a.id_of(x), b.id_of(y))
                for x in a.objects for y in b.objects}
    compose = {}
    for m1, mor1 in morphisms.items():
        for m2, mor2 in morphisms.items():
            if mor1.tgt == mor2.src:
                f1, g1 = unpair(m1)
                f2, g2 = unpair(m2)
                compose[(m1, m2)] = pair(a.then(f1, f2), b.then(g1, g2))
    p = FinCat(objects, morphisms, identity, compose)
    pi1 = FinFunctor(p, a, {o: unpair(o)[0] for o in objects},
                     {m: unpair(m)[0] for m in morphisms})
    pi2 = FinFunctor(p, b, {o: unpair(o)[1] for o in objects},
                     {m: unpair(m)[1] for m in morphisms})
    return p, pi1, pi2


def inl(name: str) -> str:
    return f"inl({name})"


def inr(name: str) -> str:
    return f"inr({name})"


def coproduct_category(a: FinCat, b: FinCat) -> tuple[FinCat, FinFunctor, FinFunctor]:
    objects = [inl(x) for x in a.objects] + [inr(y) for y in b.objects]
    morphisms = {}
    for m, mor in a.morphisms.items():
        morphisms[inl(m)] = Mor(inl(mor.src), inl(mor.tgt))
    for m, mor in b.morphisms.items():
        morphisms[inr(m)] = Mor(inr(mor.src), inr(mor.tgt))
    identity = {inl(x): inl(a.id_of(x)) for x in a.objects}
    identity.update({inr(y): inr(b.id_of(y)) for y in b.objects})
    compose = {}
    for (f, g), h in a.compose.items():
        compose[(inl(f), inl(g))] = inl(h)
    for (f, g), h in b.compose.items():
        compose[(inr(f), inr(g))] = inr(h)
    c = FinCat(objects, morphisms, identity, compose)
    ja = FinFunctor(a, c, {x: inl(x) for x in a.objects},
                    {m: inl(m) for m in a.morphisms})
    jb = FinFunctor(b, c, {y: inr(y) for y in b.objects},
                    {m: inr(m) for m in b.morphisms})
    return c, ja, jb


def codiscrete(objects) -> FinCat:
    """Exactly one morphism between every ordered pair of objects."""
    objs = sorted(objects)
    morphisms = {pair(x, y): Mor(x, y) for x in objs for y in objs}
    identity = {x: pair(x, x) for x in objs}
    compose = {}
    for x in objs:
        for y in objs:
            for z in objs:
                compose[(pair(x, y), pair(y, z))] = pair(x, z)
    return FinCat(objs, morphisms, identity, compose)


def j_of(cat: FinCat) -> FinFunctor:
    """The canonical identity-on-objects functor into the codiscrete
    category on the same objects."""
    cod = codiscrete(cat.objects)
    return FinFunctor(
        cat,
        cod,
        {x: x for x in cat.objects},
        {m: pair(cat.src(m), cat.tgt(m)) for m in cat.morphisms},
    )


# ---------------------------------------------------------------------------
# exhaustive functor enumeration (used by the law suites)


def all_functors(dom: FinCat, cod: FinCat) -> list[FinFunctor]:
    """Every functor dom -> cod, by exhaustive search.

    Intended for categories with a handful of objects and morphisms;
    the search assigns images to non-identity morphisms and filters by
    the functor laws.
    """
    non_ids = dom.non_identities()
    out: list[FinFunctor] = []
    if not dom.objects:
        return [FinFunctor(dom, cod, {}, {})]
    for obj_images in itertools.product(cod.objects, repeat=len(dom.objects)):
        obj_map = dict(zip(dom.objects, obj_images))
        choices = []
        feasible = True
        for m in non_ids:
            hom = cod.hom(obj_map[dom.src(m)], obj_map[dom.tgt(m)])
            if not hom:
                feasible = False
                break
            choices.append(hom)
        if not feasible:
            continue
        for images in itertools.product(*choices):
            mor_map = dict(zip(non_ids, images))
            for x in dom.objects:
                mor_map[dom.id_of(x)] = cod.id_of(obj_map[x])
            fun = FinFunctor(dom, cod, obj_map, mor_map)
            if all(
                fun.fm(dom.then(f, g)) == cod.then(fun.fm(f), fun.fm(g))
                for f, g in dom.composable_pairs()
            ):
                out.append(fun)
    return out
