from deltalens.fincat import (
    FinCat,
    FinFunctor,
    Mor,
    all_functors,
    is_identity_on_objects,
    is_isomorphism,
    validate_category,
    validate_functor,
)
from deltalens.gen import (
    discrete_cat,
    interval_cat,
    parallel_pair_cat,
    terminal_cat,
    z2_cat,
)
from deltalens.pushout import (
    PushoutBounds,
    PushoutResult,
    Undecided,
    cocone_factorization,
    pushout_along_ioo,
    pushout_satisfies_universal_property,
)


def discrete_inclusion(cat):
    d = discrete_cat(0)
    objects = cat.objects
    morphisms = {cat.id_of(x): Mor(x, x) for x in objects}
    identity = {x: cat.id_of(x) for x in objects}
    compose = {(m, m): m for m in morphisms}
    disc = FinCat(objects, morphisms, identity, compose)
    return disc, FinFunctor(disc, cat, {x: x for x in objects},
                            {m: m for m in morphisms})


def test_pushout_along_identity_leg():
    cat = interval_cat()
    p = FinFunctor.identity(cat)
    i = FinFunctor.identity(cat)
    res = pushout_along_ioo(p, i)
    assert isinstance(res, PushoutResult)
    assert is_isomorphism(res.inj_right)
    assert len(res.cat.morphisms) == len(cat.morphisms)


def test_pushout_of_discrete_objects():
    cat = interval_cat()
    disc, incl = discrete_inclusion(cat)
    res = pushout_along_ioo(incl, FinFunctor.identity(disc))
    assert isinstance(res, PushoutResult)
    assert is_isomorphism(res.inj_left)
    assert len(res.cat.morphisms) == len(cat.morphisms)


def test_glue_two_intervals_endpointwise():
    cat = interval_cat()
    disc, incl = discrete_inclusion(cat)
    other = interval_cat()
    i = FinFunctor(disc, other, {"x0": "x0", "x1": "x1"},
                   {"i:x0": "i:x0", "i:x1": "i:x1"})
    res = pushout_along_ioo(incl, i)
    assert isinstance(res, PushoutResult)
    # two arrows between the glued endpoints plus identities
    assert len(res.cat.objects) == 2
    assert len(res.cat.morphisms) == 4
    assert validate_category(res.cat).ok
    assert is_identity_on_objects(res.inj_right)


def test_quotient_parallel_pair_onto_interval():
    par = parallel_pair_cat()
    p = FinFunctor(par, interval_cat(),
                   {"x0": "x0", "x1": "x1"},
                   {"i:x0": "i:x0", "i:x1": "i:x1", "u1": "u", "u2": "u"})
    res = pushout_along_ioo(p, FinFunctor.identity(par))
    assert isinstance(res, PushoutResult)
    assert len(res.cat.morphisms) == 3
    assert res.inj_right.fm("u1") == res.inj_right.fm("u2")


def test_free_loop_is_undecided():
    objects = ["a", "b"]
    morphisms = {"i:a": Mor("a", "a"), "i:b": Mor("b", "b"),
                 "w": Mor("a", "b"), "n": Mor("a", "b")}
    identity = {"a": "i:a", "b": "i:b"}
    compose = {("i:a", "i:a"): "i:a", ("i:b", "i:b"): "i:b",
               ("i:a", "w"): "w", ("w", "i:b"): "w",
               ("i:a", "n"): "n", ("n", "i:b"): "n"}
    big = FinCat(objects, morphisms, identity, compose)
    wide = FinCat(objects,
                  {m: mor for m, mor in morphisms.items() if m != "n"},
                  identity,
                  {k: v for k, v in compose.items() if "n" not in k}),
    sub = wide[0]
    p = FinFunctor(sub, big, {x: x for x in objects},
                   {m: m for m in sub.morphisms})
    t = terminal_cat()
    i = FinFunctor(sub, t, {x: "*" for x in objects},
                   {m: "i:*" for m in sub.morphisms})
    res = pushout_along_ioo(p, i)
    assert isinstance(res, Undecided)


def test_configurable_bounds_trip_early():
    cat = interval_cat()
    res = pushout_along_ioo(
        FinFunctor.identity(cat), FinFunctor.identity(cat),
        PushoutBounds(word_length=8, max_words=2),
    )
    assert isinstance(res, Undecided)


def test_universal_property_exhaustively():
    par = parallel_pair_cat()
    p = FinFunctor(par, interval_cat(),
                   {"x0": "x0", "x1": "x1"},
                   {"i:x0": "i:x0", "i:x1": "i:x1", "u1": "u", "u2": "u"})
    res = pushout_along_ioo(p, FinFunctor.identity(par))
    assert pushout_satisfies_universal_property(
        p, FinFunctor.identity(par), res,
        [terminal_cat(), interval_cat(), z2_cat()],
        all_functors,
    )


def test_cocone_factorization_folds_words():
    cat = interval_cat()
    disc, incl = discrete_inclusion(cat)
    other = interval_cat()
    i = FinFunctor(disc, other, {"x0": "x0", "x1": "x1"},
                   {"i:x0": "i:x0", "i:x1": "i:x1"})
    res = pushout_along_ioo(incl, i)
    u = FinFunctor(cat, cat, {x: x for x in cat.objects},
                   {m: m for m in cat.morphisms})
    v = FinFunctor(other, cat, {x: x for x in cat.objects},
                   {m: m for m in cat.morphisms})
    h = cocone_factorization(res, u, v)
    assert validate_functor(h).ok
    assert res.inj_left.then(h) == u
    assert res.inj_right.then(h) == v
