"""Bounded pushouts of categories along identity-on-objects functors.

Pushouts in Cat can be infinite, so the computation is honest about
partiality: words over the generating morphisms are saturated up to a
length bound, a congruence closure is run over them, and the quotient
is returned only when it can be certified complete.  Otherwise the
result is :class:`Undecided`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .fincat import (
    BoundaryError,
    FinCat,
    FinFunctor,
    Mor,
    is_identity_on_objects,
    validate_category,
    validate_functor,
)


@dataclass
class PushoutBounds:
    word_length: int = 8
    max_words: int = 10000


@dataclass
class Undecided:
    reason: str


@dataclass
class PushoutResult:
    cat: FinCat
    inj_left: FinFunctor   # from the codomain of the ioo leg
    inj_right: FinFunctor  # from the codomain of the other leg
    words: dict = None     # morphism name -> representative (start, letters)


class _UnionFind:
    def __init__(self):
        self.parent: dict = {}

    def add(self, x) -> None:
        if x not in self.parent:
            self.parent[x] = x

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True


# A word is (start_object, letters) where letters is a tuple of tagged
# generator names; the empty tuple is the identity word at the object.


def pushout_along_ioo(p: FinFunctor, i: FinFunctor, bounds: PushoutBounds | None = None):
    """Pushout of the span  A <-p- X -i-> Y  for identity-on-objects p.

    Returns a PushoutResult or Undecided.  The quotient is built from
    words over the non-identity morphisms of A and Y, glued by the
    composition tables of both and the relations p(w) ~ i(w); after
    congruence closure the candidate category is verified outright
    (category laws, functoriality of the injections, gluing), so a
    returned result is always a genuine pushout.
    """
    if bounds is None:
        bounds = PushoutBounds()
    if not is_identity_on_objects(p):
        raise BoundaryError("first leg must be identity-on-objects")
    if p.dom != i.dom:
        raise BoundaryError("pushout legs must share their domain")
    a_cat, y_cat = p.cod, i.cod
    max_len = bounds.word_length + 1

    # object set of the pushout = objects of Y; objects of A land via i
    def a_obj(x: str) -> str:
        return i.fo(x)

    letters: dict[str, tuple[str, str]] = {}  # tagged name -> (src, tgt) in Y-objects
    for m in a_cat.non_identities():
        letters["A:" + m] = (a_obj(a_cat.src(m)), a_obj(a_cat.tgt(m)))
    for m in y_cat.non_identities():
        letters["Y:" + m] = (y_cat.src(m), y_cat.tgt(m))
    by_src: dict[str, list[str]] = {}
    for name, (s, _) in sorted(letters.items()):
        by_src.setdefault(s, []).append(name)

    # enumerate composable words up to max_len
    words: list[tuple[str, tuple[str, ...]]] = []
    frontier = [(y, ()) for y in y_cat.objects]
    words.extend(frontier)
    for _ in range(max_len):
        nxt = []
        for start, ls in frontier:
            end = letters[ls[-1]][1] if ls else start
            for e in by_src.get(end, []):
                nxt.append((start, ls + (e,)))
        words.extend(nxt)
        frontier = nxt
        if len(words) > bounds.max_words:
            return Undecided(
                f"word enumeration exceeded {bounds.max_words} words"
            )
    word_set = set(words)

    def word_of(cat: FinCat, tag: str, m: str) -> tuple[str, tuple[str, ...]]:
        if cat.is_id(m):
            return (a_obj(cat.src(m)) if tag == "A" else cat.src(m), ())
        start = a_obj(cat.src(m)) if tag == "A" else cat.src(m)
        return (start, (tag + ":" + m,))

    relations: list[tuple] = []
    for cat, tag in ((a_cat, "A"), (y_cat, "Y")):
        for f in cat.non_identities():
            for g in cat.non_identities():
                if cat.tgt(f) == cat.src(g):
                    start = a_obj(cat.src(f)) if tag == "A" else cat.src(f)
                    w2 = (start, (tag + ":" + f, tag + ":" + g))
                    relations.append((w2, word_of(cat, tag, cat.then(f, g))))
    for m in i.dom.morphisms:
        relations.append((word_of(a_cat, "A", p.fm(m)), word_of(y_cat, "Y", i.fm(m))))

    uf = _UnionFind()
    for w in words:
        uf.add(w)

    def end_of(word) -> str:
        start, ls = word
        return letters[ls[-1]][1] if ls else start

    queue = [r for r in relations if r[0] != r[1]]
    while queue:
        u, v = queue.pop()
        if uf.find(u) == uf.find(v):
            continue
        uf.union(u, v)
        if len(u[1]) < max_len and len(v[1]) < max_len:
            end = end_of(u)
            for e in by_src.get(end, []):
                queue.append(((u[0], u[1] + (e,)), (v[0], v[1] + (e,))))
            for e, (_, t) in letters.items():
                if t == u[0]:
                    pre_u = (letters[e][0], (e,) + u[1])
                    pre_v = (letters[e][0], (e,) + v[1])
                    if pre_u in word_set and pre_v in word_set:
                        queue.append((pre_u, pre_v))

    shortest: dict = {}
    for w in sorted(words, key=lambda w: (len(w[1]), w)):
        root = uf.find(w)
        if root not in shortest:
            shortest[root] = w

    for w in words:
        if len(w[1]) == max_len and len(shortest[uf.find(w)][1]) == max_len:
            return Undecided(
                f"saturation did not close at word length {bounds.word_length}"
            )

    # classes with a representative within the bound form the candidate
    roots = sorted(
        {uf.find(w) for w in words if len(w[1]) <= bounds.word_length},
        key=lambda r: shortest[r],
    )

    def name_of(root) -> str:
        start, ls = shortest[root]
        if not ls:
            return f"[{start}]"
        return "[" + ";".join(ls) + "]"

    names = {root: name_of(root) for root in roots}
    if len(set(names.values())) != len(names):
        return Undecided("representative naming collision")

    def cls(word):
        return uf.find(word)

    def act(letter: str, root):
        start, ls = shortest[root]
        return cls((start, ls + (letter,)))

    def compose_roots(r1, r2):
        out = r1
        for e in shortest[r2][1]:
            out = act(e, out)
        return out

    # verify the generator action is representative-independent
    for e in letters:
        for root in roots:
            if end_of(shortest[root]) != letters[e][0]:
                continue
            single = cls((letters[e][0], (e,)))
            if act(e, root) != compose_roots(root, single):
                return Undecided("generator action depends on representatives")
    # verify every class is reached by folding its own representative,
    # so the quotient is generated by the injections
    for root in roots:
        start, ls = shortest[root]
        acc = cls((start, ()))
        for e in ls:
            acc = act(e, acc)
        if acc != root:
            return Undecided("representative word does not rebuild its class")

    morphisms = {}
    identity = {}
    for root in roots:
        start, _ = shortest[root]
        morphisms[names[root]] = Mor(start, end_of(shortest[root]))
    for y in y_cat.objects:
        identity[y] = names[cls((y, ()))]
    compose = {}
    for r1 in roots:
        for r2 in roots:
            if end_of(shortest[r1]) == shortest[r2][0]:
                compose[(names[r1], names[r2])] = names[compose_roots(r1, r2)]
    cat = FinCat(list(y_cat.objects), morphisms, identity, compose)

    inj_left = FinFunctor(
        a_cat,
        cat,
        {x: a_obj(x) for x in a_cat.objects},
        {m: names[cls(word_of(a_cat, "A", m))] for m in a_cat.morphisms},
    )
    inj_right = FinFunctor(
        y_cat,
        cat,
        {y: y for y in y_cat.objects},
        {m: names[cls(word_of(y_cat, "Y", m))] for m in y_cat.morphisms},
    )

    # certify: a verified cocone generated by the injections is the pushout
    if not validate_category(cat).ok:
        return Undecided("candidate quotient violates the category laws")
    if not validate_functor(inj_left).ok or not validate_functor(inj_right).ok:
        return Undecided("candidate injections are not functors")
    for m in i.dom.morphisms:
        if inj_left.fm(p.fm(m)) != inj_right.fm(i.fm(m)):
            return Undecided("candidate quotient misses a gluing relation")
    rep_words = {names[root]: shortest[root] for root in roots}
    return PushoutResult(cat, inj_left, inj_right, rep_words)


def cocone_factorization(
    result: PushoutResult, u: FinFunctor, v: FinFunctor
) -> FinFunctor:
    """The unique functor out of a computed pushout determined by a
    cocone (u out of the ioo-leg codomain, v out of the other)."""
    cat = result.cat
    obj_map = {y: v.fo(y) for y in cat.objects}
    mor_map = {}
    target = u.cod
    left_image = {result.inj_left.fm(m): u.fm(m) for m in result.inj_left.dom.morphisms}
    right_image = {
        result.inj_right.fm(m): v.fm(m) for m in result.inj_right.dom.morphisms
    }
    for m in cat.morphisms:
        if m in right_image and m in left_image and right_image[m] != left_image[m]:
            raise BoundaryError("not a cocone: injections disagree")
        if m in right_image:
            mor_map[m] = right_image[m]
        elif m in left_image:
            mor_map[m] = left_image[m]
        else:
            # fold the representative word through the cocone
            start, ls = result.words[m]
            acc = target.id_of(obj_map[start])
            for letter in ls:
                tag, name = letter.split(":", 1)
                img = u.fm(name) if tag == "A" else v.fm(name)
                acc = target.then(acc, img)
            mor_map[m] = acc
    return FinFunctor(cat, target, obj_map, mor_map)


def pushout_satisfies_universal_property(
    p: FinFunctor,
    i: FinFunctor,
    result: PushoutResult,
    test_cats: list[FinCat],
    all_functors_fn,
) -> bool:
    """Exhaustively check the pushout universal property against cocones
    into the given test categories."""
    for t in test_cats:
        us = all_functors_fn(p.cod, t)
        vs = all_functors_fn(i.cod, t)
        candidates = all_functors_fn(result.cat, t)
        for u, v in itertools.product(us, vs):
            if p.then(u) != i.then(v):
                continue
            mediating = [
                h
                for h in candidates
                if result.inj_left.then(h) == u and result.inj_right.then(h) == v
            ]
            if len(mediating) != 1:
                return False
            if mediating[0] != cocone_factorization(result, u, v):
                return False
    return True
