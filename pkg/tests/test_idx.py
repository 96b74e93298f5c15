import pytest

from deltalens.fincat import (
    FinFunctor,
    pair,
    pullback_category,
    unpair,
    validate_category,
    validate_functor,
)
from deltalens.gen import (
    GenConfig,
    gen_indexed_smf,
    gen_lens,
    interval_cat,
    mutate_indexed_smf,
    product_projection_lens,
    rng_for,
    terminal_cat,
    vee_cat,
)
from deltalens.idx import (
    Carrier,
    IndexedSmf,
    cartesian_lift,
    check_idx_morphism,
    compose_idx_morphisms,
    coproduct_idx,
    elements,
    elements_morphism,
    elements_raw,
    fib_coproduct_idx,
    fib_product_idx,
    fibres,
    fibres_morphism,
    free_carriers,
    identity_idx_morphism,
    is_split_opfibration_idx,
    product_idx,
    pullback_idx,
    pushforward_idx,
    PushforwardResult,
    roundtrip_idx,
    roundtrip_lens,
    validate_indexed_smf,
)
from deltalens.lens import DeltaLens, check_delta_lens, counit_at, is_split_opfibration
from deltalens.pushout import Undecided

from test_lens import vee_lens


def constant_terminal(base) -> IndexedSmf:
    obj_sets = {x: ("*",) for x in base.objects}
    carriers = {
        u: Carrier(("*",), {"*": "*"}, {"*": "*"}, {"*": "*"})
        for u in base.morphisms
    }
    mu = {(u, v): {("*", "*"): "*"} for u, v in base.composable_pairs()}
    return IndexedSmf(base, obj_sets, carriers, mu)


class TestValidate:
    def test_constant_terminal_ok(self):
        assert validate_indexed_smf(constant_terminal(interval_cat())).ok

    def test_fibres_of_generated_lenses_ok(self):
        cfg = GenConfig()
        for i in range(30):
            x = gen_indexed_smf(cfg, rng_for("vi", i))
            assert validate_indexed_smf(x).ok

    def test_perturbed_mu_caught(self):
        x = fibres(vee_lens())
        # send the composite of the chosen lift with an identity elsewhere
        mu = {k: dict(t) for k, t in x.mu.items()}
        mu[("u", "i:x1")][("w1", "i:a1")] = "w2"
        bad = IndexedSmf(x.base, x.obj_sets, x.carriers, mu)
        report = validate_indexed_smf(bad)
        assert any(p.law in ("L4", "L5", "L6", "L2") for p in report.problems)


class TestElements:
    def test_constant_terminal_gives_base_copy(self):
        base = vee_cat()
        lens, naming = elements(constant_terminal(base))
        assert check_delta_lens(lens).ok
        assert len(lens.cat_a.objects) == len(base.objects)
        assert len(lens.cat_a.morphisms) == len(base.morphisms)
        assert set(naming.obj.values()) == {(x, "*") for x in base.objects}

    def test_counts(self):
        cfg = GenConfig()
        for i in range(20):
            x = gen_indexed_smf(cfg, rng_for("cnt", i))
            lens, _ = elements(x)
            assert len(lens.cat_a.objects) == sum(
                len(s) for s in x.obj_sets.values()
            )
            assert len(lens.cat_a.morphisms) == sum(
                len(c.elems) for c in x.carriers.values()
            )

    def test_vee_indexed_data_elements_matches_lens(self):
        x = fibres(vee_lens())
        lens, _ = elements(x)
        assert check_delta_lens(lens).ok
        # canonical renaming: objects are (base object, fibre element)
        assert set(lens.cat_a.objects) == {
            pair("x0", "a0"), pair("x1", "a1"), pair("x1", "a2")
        }
        assert pair("u", "w1") in lens.cat_a.morphisms
        assert lens.lift[(pair("x0", "a0"), "u")] == pair("u", "w1")


class TestFibres:
    def test_identity_lens_fibres(self):
        cat = vee_cat()
        x = fibres(DeltaLens.identity(cat))
        for o in cat.objects:
            assert x.obj_sets[o] == (o,)
        for u in cat.morphisms:
            assert x.carriers[u].elems == (u,)

    def test_vee_lens_fibres(self):
        x = fibres(vee_lens())
        assert x.obj_sets == {"x0": ("a0",), "x1": ("a1", "a2")}
        assert x.carriers["u"].elems == ("w1", "w2")
        assert x.carriers["u"].sigma == {"a0": "w1"}
        assert validate_indexed_smf(x).ok

    def test_mu_pullback_size_counts_composable_pairs(self):
        cfg = GenConfig()
        for i in range(15):
            l = gen_lens(cfg, rng_for("mu", i))
            x = fibres(l)
            for (u, v), table in x.mu.items():
                cu, cv = x.carriers[u], x.carriers[v]
                expected = sum(
                    1
                    for a in cu.elems
                    for b in cv.elems
                    if cu.t[a] == cv.s[b]
                )
                assert len(table) == expected


class TestRoundTrips:
    def test_identity_lens(self):
        w = roundtrip_lens(DeltaLens.identity(vee_cat()))
        assert w.h.obj_map == {pair(x, x): x for x in vee_cat().objects}

    def test_random_lenses(self):
        cfg = GenConfig()
        for i in range(30):
            roundtrip_lens(gen_lens(cfg, rng_for("rtl", i)))

    def test_random_indexed(self):
        cfg = GenConfig()
        for i in range(30):
            roundtrip_idx(gen_indexed_smf(cfg, rng_for("rti", i)))


class TestMorphismActions:
    def test_identity_round_trip(self):
        x = gen_indexed_smf(GenConfig(), rng_for("mid", 0))
        m = identity_idx_morphism(x)
        lm = elements_morphism(m)
        assert lm.h == FinFunctor.identity(lm.dom.cat_a)

    def test_counit_through_fibres_and_back(self):
        cfg = GenConfig()
        for i in range(10):
            l = gen_lens(cfg, rng_for("act", i))
            lm = counit_at(l)
            im = fibres_morphism(lm)
            assert check_idx_morphism(im).ok
            back = elements_morphism(im)
            # round trip on morphisms: conjugation by the canonical
            # renamings recovers the original functor
            w_dom = roundtrip_lens(lm.dom)
            w_cod = roundtrip_lens(lm.cod)
            assert w_dom.h.then(lm.h) == back.h.then(w_cod.h)

    def test_composition_preserved(self):
        cfg = GenConfig()
        for i in range(10):
            x = gen_indexed_smf(cfg, rng_for("comp", i))
            prod, p1, p2 = fib_product_idx(x, x)
            assert check_idx_morphism(p1).ok
            m = compose_idx_morphisms(p1, identity_idx_morphism(x))
            assert elements_morphism(m).h == elements_morphism(p1).h


class TestDetector:
    def test_constant_terminal_positive(self):
        assert is_split_opfibration_idx(constant_terminal(vee_cat()))

    def test_product_projection_positive(self):
        l = product_projection_lens(vee_cat(), interval_cat())
        assert is_split_opfibration_idx(fibres(l))

    def test_vee_negative(self):
        # the second chosen-lift-free arrow has no vertical factorization
        assert not is_split_opfibration_idx(fibres(vee_lens()))

    def test_agreement_with_lens_modes(self):
        cfg = GenConfig()
        for i in range(25):
            x = gen_indexed_smf(cfg, rng_for("det", i))
            lens, _ = elements(x)
            expected = is_split_opfibration(lens, "weakly_opcartesian")
            assert is_split_opfibration_idx(x) == expected


class TestLaxityEquivalence:
    def elements_side_ok(self, x) -> bool:
        cat, proj, lift = elements_raw(x)
        if not validate_category(cat).ok:
            return False
        if not validate_functor(proj).ok:
            return False
        return check_delta_lens(DeltaLens(proj, lift)).ok

    def test_valid_instances_agree(self):
        cfg = GenConfig()
        for i in range(25):
            x = gen_indexed_smf(cfg, rng_for("lax", i))
            assert validate_indexed_smf(x).ok
            assert self.elements_side_ok(x)

    def test_mutations_agree(self):
        cfg = GenConfig()
        found_invalid = 0
        for i in range(60):
            x = gen_indexed_smf(cfg, rng_for("laxmut", i))
            mutant = mutate_indexed_smf(x, rng_for("laxmut-pick", i))
            if mutant is None:
                continue
            idx_ok = validate_indexed_smf(mutant).ok
            el_ok = self.elements_side_ok(mutant)
            assert idx_ok == el_ok
            if not idx_ok:
                found_invalid += 1
        assert found_invalid > 5


class TestPullback:
    def test_identity(self):
        x = gen_indexed_smf(GenConfig(), rng_for("pb", 0))
        assert pullback_idx(x, FinFunctor.identity(x.base)) == x

    def test_point_pullback_is_constant(self):
        x = fibres(vee_lens())
        k = FinFunctor(terminal_cat(), x.base, {"*": "x1"},
                       {"i:*": "i:x1"})
        pb = pullback_idx(x, k)
        assert pb.obj_sets["*"] == x.obj_sets["x1"]
        assert pb.carriers["i:*"].elems == x.carriers["i:x1"].elems

    def test_cartesian_lift_verifies(self):
        cfg = GenConfig()
        for i in range(10):
            x = gen_indexed_smf(cfg, rng_for("cart", i))
            k = FinFunctor(terminal_cat(), x.base,
                           {"*": x.base.objects[0]},
                           {"i:*": x.base.id_of(x.base.objects[0])})
            assert check_idx_morphism(cartesian_lift(x, k)).ok

    def test_commutes_with_elements(self):
        cfg = GenConfig(max_objects=3)
        for i in range(10):
            x = gen_indexed_smf(cfg, rng_for("pbc", i))
            k = FinFunctor(terminal_cat(), x.base,
                           {"*": x.base.objects[-1]},
                           {"i:*": x.base.id_of(x.base.objects[-1])})
            pb = pullback_idx(x, k)
            el_pb, _ = elements(pb)
            lens, _ = elements(x)
            cone, _, _ = pullback_category(k, lens.f)
            # canonical comparison: (d, (k d, a)) <-> (d, a)
            iso = FinFunctor(
                el_pb.cat_a, cone,
                {o: pair(unpair(o)[0], pair(k.fo(unpair(o)[0]), unpair(o)[1]))
                 for o in el_pb.cat_a.objects},
                {m: pair(unpair(m)[0], pair(k.fm(unpair(m)[0]), unpair(m)[1]))
                 for m in el_pb.cat_a.morphisms},
            )
            assert validate_functor(iso).ok
            from deltalens.fincat import is_isomorphism

            assert is_isomorphism(iso)


def loop_generating_instance():
    """A lens whose chosen-lift subcategory misses a parallel arrow; the
    pushforward to the terminal base would need a free loop."""
    from deltalens.fincat import FinCat, Mor

    objects = ["a", "b"]
    morphisms = {"i:a": Mor("a", "a"), "i:b": Mor("b", "b"),
                 "w": Mor("a", "b"), "n": Mor("a", "b")}
    identity = {"a": "i:a", "b": "i:b"}
    compose = {("i:a", "i:a"): "i:a", ("i:b", "i:b"): "i:b",
               ("i:a", "w"): "w", ("w", "i:b"): "w",
               ("i:a", "n"): "n", ("n", "i:b"): "n"}
    cat = FinCat(objects, morphisms, identity, compose)
    fun = FinFunctor(cat, interval_cat(),
                     {"a": "x0", "b": "x1"},
                     {"i:a": "i:x0", "i:b": "i:x1", "w": "u", "n": "u"})
    lens = DeltaLens(fun, {("a", "i:x0"): "i:a", ("a", "u"): "w",
                           ("b", "i:x1"): "i:b"})
    assert check_delta_lens(lens).ok
    return fibres(lens)


class TestPushforward:
    def test_identity_functor(self):
        cfg = GenConfig(max_objects=3)
        for i in range(6):
            x = gen_indexed_smf(cfg, rng_for("pf", i))
            res = pushforward_idx(x, FinFunctor.identity(x.base))
            assert isinstance(res, PushforwardResult)
            assert validate_indexed_smf(res.idx).ok
            assert check_idx_morphism(res.witness).ok
            # same base, same totals: the transported data is a renaming
            assert sum(map(len, res.idx.obj_sets.values())) == sum(
                map(len, x.obj_sets.values())
            )

    def test_collapse_to_terminal(self):
        x = fibres(vee_lens())
        g = FinFunctor(x.base, terminal_cat(),
                       {"x0": "*", "x1": "*"},
                       {"i:x0": "i:*", "i:x1": "i:*", "u": "i:*"})
        res = pushforward_idx(x, g)
        assert isinstance(res, PushforwardResult)
        assert validate_indexed_smf(res.idx).ok
        assert res.idx.base == terminal_cat()

    def test_loop_generating_case_undecided(self):
        x = loop_generating_instance()
        g = FinFunctor(x.base, terminal_cat(),
                       {"x0": "*", "x1": "*"},
                       {"i:x0": "i:*", "i:x1": "i:*", "u": "i:*"})
        res = pushforward_idx(x, g)
        assert isinstance(res, Undecided)


class TestProducts:
    def test_product_with_terminal_point(self):
        x = fibres(vee_lens())
        t = constant_terminal(terminal_cat())
        prod, p1, p2 = product_idx(x, t)
        assert validate_indexed_smf(prod).ok
        assert check_idx_morphism(p1).ok and check_idx_morphism(p2).ok
        for o in prod.base.objects:
            left, _ = unpair(o)
            assert len(prod.obj_sets[o]) == len(x.obj_sets[left])

    def test_sizes(self):
        cfg = GenConfig(max_objects=2, max_fibre=2)
        x = gen_indexed_smf(cfg, rng_for("sz", 1))
        y = gen_indexed_smf(cfg, rng_for("sz", 2))
        prod, _, _ = product_idx(x, y)
        cop, _, _ = coproduct_idx(x, y)
        assert validate_indexed_smf(prod).ok
        assert validate_indexed_smf(cop).ok
        assert sum(map(len, prod.obj_sets.values())) == sum(
            len(x.obj_sets[a]) * len(y.obj_sets[b])
            for a in x.base.objects
            for b in y.base.objects
        )
        assert sum(map(len, cop.obj_sets.values())) == sum(
            map(len, x.obj_sets.values())
        ) + sum(map(len, y.obj_sets.values()))

    def test_fibrewise_product_matches_lens_level(self):
        # direct lens-level construction: the pullback of the underlying
        # functor against itself with componentwise lifts
        x = fibres(vee_lens())
        prod, _, _ = fib_product_idx(x, x)
        l = vee_lens()
        cone, pi1, pi2 = pullback_category(l.f, l.f)
        lift = {}
        for o in cone.objects:
            a1, a2 = unpair(o)
            for u in l.cat_b.morphisms_from(l.f.fo(a1)):
                lift[(o, u)] = pair(l.phi(a1, u), l.phi(a2, u))
        direct = DeltaLens(
            FinFunctor(cone, l.cat_b,
                       {o: l.f.fo(unpair(o)[0]) for o in cone.objects},
                       {m: l.f.fm(unpair(m)[0]) for m in cone.morphisms}),
            lift,
        )
        assert check_delta_lens(direct).ok
        assert fibres(direct) == prod

    def test_fibrewise_coproduct(self):
        x = fibres(vee_lens())
        cop, i1, i2 = fib_coproduct_idx(x, x)
        assert validate_indexed_smf(cop).ok
        assert check_idx_morphism(i1).ok and check_idx_morphism(i2).ok
        for o in x.base.objects:
            assert len(cop.obj_sets[o]) == 2 * len(x.obj_sets[o])


class TestFreeCarriers:
    def test_terminal(self):
        fr = free_carriers(terminal_cat())
        assert fr.obj_sets["*"] == ("i:*",)

    def test_interval_counts(self):
        fr = free_carriers(interval_cat())
        assert len(fr.obj_sets["x0"]) == 1
        assert len(fr.obj_sets["x1"]) == 2

    def test_interval_arrow_carrier_by_enumeration(self):
        # independent enumeration of the defining condition over all
        # quadruples of morphisms
        base = interval_cat()
        fr = free_carriers(base)
        quads = []
        for alpha in base.morphisms:
            for beta in base.morphisms:
                for gamma in base.morphisms:
                    for delta in base.morphisms:
                        if base.tgt(alpha) != "x0" or base.src(beta) != "x0":
                            continue
                        if base.tgt(beta) != base.src(gamma):
                            continue
                        if base.tgt(gamma) != base.src(delta):
                            continue
                        if base.tgt(delta) != "x1":
                            continue
                        if base.then(alpha, beta) != base.id_of(base.src(alpha)):
                            continue
                        if base.is_id(gamma):
                            continue
                        if base.then(base.then(beta, gamma), delta) != "u":
                            continue
                        quads.append((alpha, beta, gamma, delta))
        assert len(fr.carriers["u"].elems) == len(fr.obj_sets["x0"]) + len(quads)

    def test_partial_data_is_not_indexed(self):
        fr = free_carriers(interval_cat())
        assert not isinstance(fr, IndexedSmf)
        with pytest.raises(Exception):
            elements(fr)

    def test_l1_and_boundaries(self):
        for base in (terminal_cat(), interval_cat(), vee_cat()):
            fr = free_carriers(base)
            for u, c in fr.carriers.items():
                src, tgt = base.src(u), base.tgt(u)
                for a in fr.obj_sets[src]:
                    assert c.s[c.sigma[a]] == a
                for e in c.elems:
                    assert c.s[e] in fr.obj_sets[src]
                    assert c.t[e] in fr.obj_sets[tgt]
