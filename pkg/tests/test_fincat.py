import pytest

from deltalens.fincat import (
    FinCat,
    FinFunctor,
    Mor,
    codiscrete,
    comma_over,
    comprehensive_factorization,
    decalage,
    is_bijective_on_objects,
    is_discrete_opfibration,
    is_faithful,
    is_fully_faithful,
    is_identity_on_objects,
    is_initial_functor,
    is_isomorphism,
    is_surjective_on_objects,
    j_of,
    pi0,
    pullback_category,
    validate_category,
    validate_functor,
)
from deltalens.gen import (
    discrete_cat,
    empty_cat,
    interval_cat,
    terminal_cat,
    vee_cat,
)


def unique_functor_to_terminal(cat):
    t = terminal_cat()
    return FinFunctor(cat, t, {x: "*" for x in cat.objects},
                      {m: "i:*" for m in cat.morphisms})


def pick_object(cat, target, x):
    return FinFunctor(
        cat, target, {o: x for o in cat.objects},
        {m: target.id_of(x) for m in cat.morphisms},
    )


class TestValidateCategory:
    def test_terminal_ok(self):
        assert validate_category(terminal_cat()).ok

    def test_interval_ok(self):
        assert validate_category(interval_cat()).ok

    def test_broken_right_unit(self):
        cat = interval_cat()
        compose = dict(cat.compose)
        compose[("u", "i:x1")] = "i:x0"
        broken = FinCat(cat.objects, cat.morphisms, cat.identity, compose)
        report = validate_category(broken)
        assert not report.ok
        assert any("unit" in p.law or "endpoints" in p.law for p in report.problems)

    def test_empty_category_ok(self):
        assert validate_category(empty_cat()).ok

    def test_partial_table_rejected(self):
        cat = interval_cat()
        compose = dict(cat.compose)
        del compose[("i:x0", "u")]
        broken = FinCat(cat.objects, cat.morphisms, cat.identity, compose)
        report = validate_category(broken)
        assert any(p.law == "composition-table" for p in report.problems)

    def test_raw_data_with_unknown_reference(self):
        raw = {
            "objects": ["a"],
            "morphisms": [{"id": "i", "src": "a", "tgt": "b"}],
            "identities": {"a": "i"},
            "compose": [],
        }
        report = validate_category(raw)
        assert any(p.law == "reference" for p in report.problems)


class TestValidateFunctor:
    def test_identity_ok(self):
        assert validate_functor(FinFunctor.identity(interval_cat())).ok

    def test_unique_to_terminal_ok(self):
        assert validate_functor(unique_functor_to_terminal(interval_cat())).ok

    def test_src_tgt_violation(self):
        cat = interval_cat()
        bad = FinFunctor(cat, cat, {"x0": "x0", "x1": "x1"},
                         {"i:x0": "i:x0", "i:x1": "i:x1", "u": "i:x0"})
        report = validate_functor(bad)
        assert any(p.law == "src-tgt" for p in report.problems)

    def test_unknown_ids_reported_distinctly(self):
        cat = interval_cat()
        bad = FinFunctor(cat, cat, {"x0": "zzz", "x1": "x1"},
                         {"i:x0": "i:x0", "i:x1": "i:x1", "u": "u"})
        report = validate_functor(bad)
        assert any(p.law == "reference" for p in report.problems)


class TestPredicates:
    def test_identity_on_objects(self):
        assert is_identity_on_objects(FinFunctor.identity(interval_cat()))
        assert not is_identity_on_objects(
            unique_functor_to_terminal(interval_cat())
        )

    def test_identity_is_dopf(self):
        assert is_discrete_opfibration(FinFunctor.identity(vee_cat()))

    def test_vee_over_interval_not_dopf(self):
        # both legs of the vee map onto u: two lifts at the apex
        v = vee_cat()
        b = interval_cat()
        fun = FinFunctor(
            v, b,
            {"a0": "x0", "a1": "x1", "a2": "x1"},
            {"i:a0": "i:x0", "i:a1": "i:x1", "i:a2": "i:x1",
             "w1": "u", "w2": "u"},
        )
        assert validate_functor(fun).ok
        assert not is_discrete_opfibration(fun)

    def test_discrete_pair_over_interval_is_dopf(self):
        # two disjoint copies of the interval projecting down: one lift each
        d = discrete_cat(2)
        from deltalens.fincat import product_category

        prod, _, pi2 = product_category(d, interval_cat())
        assert is_discrete_opfibration(pi2)

    def test_empty_domain_vacuously_dopf(self):
        fun = FinFunctor(empty_cat(), terminal_cat(), {}, {})
        assert is_discrete_opfibration(fun)

    def test_terminal_collapse_not_fully_faithful(self):
        fun = unique_functor_to_terminal(interval_cat())
        assert not is_fully_faithful(fun)
        assert is_surjective_on_objects(fun)

    def test_identity_satisfies_everything(self):
        fun = FinFunctor.identity(interval_cat())
        assert is_fully_faithful(fun) and is_faithful(fun)
        assert is_bijective_on_objects(fun)

    def test_codiscrete_inclusion(self):
        j = j_of(interval_cat())
        assert is_bijective_on_objects(j)
        assert is_faithful(j)


class TestComma:
    def test_identity_on_terminal(self):
        comma = comma_over(FinFunctor.identity(terminal_cat()), "*")
        assert len(comma.objects) == 1

    def test_identity_on_interval_over_top(self):
        comma = comma_over(FinFunctor.identity(interval_cat()), "x1")
        assert len(comma.objects) == 2
        assert len(comma.non_identities()) == 1
        assert validate_category(comma).ok

    def test_empty_domain(self):
        comma = comma_over(FinFunctor(empty_cat(), terminal_cat(), {}, {}), "*")
        assert len(comma.objects) == 0


class TestPi0:
    def test_discrete(self):
        assert len(pi0(discrete_cat(3))) == 3

    def test_interval_connected(self):
        assert len(pi0(interval_cat())) == 1

    def test_vee_connected(self):
        assert len(pi0(vee_cat())) == 1


class TestInitialFunctor:
    def test_identity_initial(self):
        assert is_initial_functor(FinFunctor.identity(interval_cat()))

    def test_empty_not_initial(self):
        assert not is_initial_functor(
            FinFunctor(empty_cat(), terminal_cat(), {}, {})
        )

    def test_point_into_interval_initial(self):
        incl = pick_object(terminal_cat(), interval_cat(), "x0")
        assert is_initial_functor(incl)

    def test_top_point_not_initial(self):
        incl = pick_object(terminal_cat(), interval_cat(), "x1")
        assert not is_initial_functor(incl)


class TestComprehensiveFactorization:
    def test_point_into_interval(self):
        fun = pick_object(terminal_cat(), interval_cat(), "x0")
        fact = comprehensive_factorization(fun)
        # one component over each object, so the opfibration side is a copy
        assert len(fact.mid.objects) == 2
        assert is_initial_functor(fact.first)
        assert is_discrete_opfibration(fact.second)
        assert fact.first.then(fact.second) == fun
        assert is_isomorphism(
            FinFunctor(fact.mid, interval_cat(),
                       fact.second.obj_map, fact.second.mor_map)
        )

    def test_already_dopf_gives_iso_first(self):
        fun = FinFunctor.identity(vee_cat())
        fact = comprehensive_factorization(fun)
        assert is_isomorphism(fact.first)
        assert fact.first.then(fact.second) == fun

    def test_vee_to_terminal(self):
        fun = unique_functor_to_terminal(vee_cat())
        fact = comprehensive_factorization(fun)
        assert len(fact.mid.objects) == 1
        assert validate_category(fact.mid).ok
        assert fact.first.then(fact.second) == fun

    def test_factors_validate(self):
        fun = pick_object(terminal_cat(), interval_cat(), "x1")
        fact = comprehensive_factorization(fun)
        assert validate_category(fact.mid).ok
        assert validate_functor(fact.first).ok
        assert validate_functor(fact.second).ok
        assert is_initial_functor(fact.first)
        assert is_discrete_opfibration(fact.second)


class TestDecalage:
    def test_terminal(self):
        dec, eps = decalage(terminal_cat())
        assert len(dec.objects) == 1
        assert validate_functor(eps).ok

    def test_interval_has_three_objects(self):
        dec, eps = decalage(interval_cat())
        assert len(dec.objects) == 3
        assert validate_category(dec).ok

    def test_object_count_is_morphism_count(self):
        for cat in (interval_cat(), vee_cat(), discrete_cat(3)):
            dec, eps = decalage(cat)
            assert len(dec.objects) == len(cat.morphisms)
            assert is_surjective_on_objects(eps)


class TestPullback:
    def test_along_identity(self):
        cat = vee_cat()
        fun = unique_functor_to_terminal(cat)
        p, pi1, _ = pullback_category(fun, FinFunctor.identity(terminal_cat()))
        assert len(p.objects) == len(cat.objects)
        assert len(p.morphisms) == len(cat.morphisms)
        assert is_isomorphism(pi1)

    def test_disjoint_points_empty(self):
        a = pick_object(terminal_cat(), interval_cat(), "x0")
        b = pick_object(terminal_cat(), interval_cat(), "x1")
        p, _, _ = pullback_category(a, b)
        assert len(p.objects) == 0

    def test_object_count_matches_pairs(self):
        a = unique_functor_to_terminal(interval_cat())
        b = unique_functor_to_terminal(vee_cat())
        p, _, _ = pullback_category(a, b)
        assert len(p.objects) == 2 * 3
        assert validate_category(p).ok


class TestCodiscrete:
    def test_singleton(self):
        cat = codiscrete(["a"])
        assert len(cat.morphisms) == 1
        assert validate_category(cat).ok

    def test_two_objects_four_morphisms(self):
        cat = codiscrete(["a", "b"])
        assert len(cat.morphisms) == 4
        assert validate_category(cat).ok

    def test_j_is_ioo_and_full(self):
        j = j_of(interval_cat())
        assert is_identity_on_objects(j)
        assert validate_functor(j).ok
        cod = j.cod
        for x in j.dom.objects:
            for y in j.dom.objects:
                images = {j.fm(m) for m in j.dom.hom(x, y)}
                assert images <= set(cod.hom(x, y))
