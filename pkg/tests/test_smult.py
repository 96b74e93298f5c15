from deltalens.smult import (
    FinFunction,
    Smf,
    SmultCell,
    associator,
    companion_span,
    compose_smf,
    coreflection_counit,
    identity_cell_of_loose,
    identity_cell_of_tight,
    identity_smf,
    inverse_cell,
    left_unitor,
    loose_compose_cells,
    product_smf_of_function,
    reflection_unit,
    right_unitor,
    smf_of_function,
    splitting_cone_component,
    tight_compose_cells,
    tight_compose_span_cells,
    underlying_function,
    underlying_function_cell,
    underlying_span_cell,
    validate_cell,
    validate_smf,
    validate_span_cell,
    validate_sq_cell,
)
from deltalens.gen import gen_cell, gen_cell_grid, gen_composable_smfs, gen_smf, rng_for


def smf_of(mapping, src, tgt, tag="f"):
    return smf_of_function(FinFunction(src, tgt, mapping))


def two_step():
    # m1: {a} -|-> {b1,b2} with carrier {x1,x2}, m2: {b1,b2} -|-> {c}
    m1 = Smf(["a"], ["x1", "x2"], ["b1", "b2"],
             {"x1": "a", "x2": "a"}, {"x1": "b1", "x2": "b2"}, {"a": "x1"})
    m2 = Smf(["b1", "b2"], ["y1", "y2"], ["c"],
             {"y1": "b1", "y2": "b2"}, {"y1": "c", "y2": "c"},
             {"b1": "y1", "b2": "y2"})
    return m1, m2


class TestValidate:
    def test_identity_ok(self):
        assert validate_smf(identity_smf(["a", "b"])).ok

    def test_bad_section(self):
        m = Smf(["a", "b"], ["x", "y"], ["c"],
                {"x": "a", "y": "b"}, {"x": "c", "y": "c"},
                {"a": "y", "b": "y"})
        report = validate_smf(m)
        assert any(p.law == "splitting" for p in report.problems)

    def test_empty_source_ok(self):
        assert validate_smf(Smf([], [], ["b"], {}, {}, {})).ok


class TestCompose:
    def test_function_composition(self):
        # single-fibre data encodes plain functions and composes as such
        f = smf_of({"a1": "b1", "a2": "b1"}, ["a1", "a2"], ["b1", "b2"])
        g = smf_of({"b1": "c2", "b2": "c1"}, ["b1", "b2"], ["c1", "c2"])
        comp = compose_smf(f, g)
        assert validate_smf(comp).ok
        fn = underlying_function(comp)
        assert fn.mapping == {"a1": "c2", "a2": "c2"}

    def test_carrier_size_counts_fibre_products(self):
        m1, m2 = two_step()
        comp = compose_smf(m1, m2)
        # carrier counts pairs over the middle boundary: sum over b of
        # |t1^-1(b)| * |s2^-1(b)| = 1*1 + 1*1
        assert len(comp.carrier) == 2
        rng = rng_for("carrier", 0)
        for i in range(40):
            a, b = gen_composable_smfs(rng_for("carrier", i), 2)
            comp = compose_smf(a, b)
            expected = sum(
                sum(1 for x in a.carrier if a.t(x) == mid)
                * sum(1 for y in b.carrier if b.s(y) == mid)
                for mid in a.tgt
            )
            assert len(comp.carrier) == expected
            assert validate_smf(comp).ok

    def test_unitors_are_invertible_cells(self):
        for i in range(25):
            m = gen_smf(rng_for("unitor", i))
            for cell in (left_unitor(m), right_unitor(m)):
                assert validate_cell(cell).ok
                assert cell.alpha.is_bijective()
                inv = inverse_cell(cell)
                both = tight_compose_cells(cell, inv)
                assert both == identity_cell_of_loose(cell.top)


class TestCells:
    def test_identity_cells_compose_to_identity(self):
        m = gen_smf(rng_for("idcell", 1))
        c = identity_cell_of_loose(m)
        assert tight_compose_cells(c, c) == c

    def test_generated_cells_validate(self):
        for i in range(30):
            assert validate_cell(gen_cell(rng_for("cells", i))).ok

    def test_tight_composition_stacks_boundaries(self):
        rng = rng_for("stack", 0)
        c1 = gen_cell(rng)
        c2 = gen_cell_onto(c1.top, rng)
        both = tight_compose_cells(c2, c1)
        assert validate_cell(both).ok
        assert both.left.mapping == {
            a: c1.left(c2.left(a)) for a in c2.left.dom
        }

    def test_interchange(self):
        for i in range(30):
            a, b, c, d = gen_cell_grid(rng_for("grid", i))
            for cell in (a, b, c, d):
                assert validate_cell(cell).ok
            rows_then = tight_compose_cells(
                loose_compose_cells(a, b), loose_compose_cells(c, d)
            )
            cols_then = loose_compose_cells(
                tight_compose_cells(a, c), tight_compose_cells(b, d)
            )
            assert rows_then == cols_then


def gen_cell_onto(bottom, rng):
    from deltalens.gen import gen_cell_over

    return gen_cell_over(rng, bottom, "onto")


class TestAssociator:
    def test_singletons(self):
        one = identity_smf(["*"])
        cell = associator(one, one, one)
        assert validate_cell(cell).ok
        assert cell.alpha.is_bijective()

    def test_random_triples_bijective(self):
        for i in range(30):
            m1, m2, m3 = gen_composable_smfs(rng_for("assoc", i), 3)
            cell = associator(m1, m2, m3)
            assert validate_cell(cell).ok
            assert cell.alpha.is_bijective()
            assert cell.top == compose_smf(m1, compose_smf(m2, m3))
            assert cell.bottom == compose_smf(compose_smf(m1, m2), m3)

    def test_pentagon(self):
        # both re-association routes from m1;(m2;(m3;m4)) to
        # ((m1;m2);m3);m4 agree elementwise
        for i in range(20):
            m1, m2, m3, m4 = gen_composable_smfs(rng_for("pent", i), 4)
            inner = loose_compose_cells(
                identity_cell_of_loose(m1), associator(m2, m3, m4)
            )
            route_a = tight_compose_cells(
                tight_compose_cells(inner, associator(m1, compose_smf(m2, m3), m4)),
                loose_compose_cells(
                    associator(m1, m2, m3), identity_cell_of_loose(m4)
                ),
            )
            route_b = tight_compose_cells(
                associator(m1, m2, compose_smf(m3, m4)),
                associator(compose_smf(m1, m2), m3, m4),
            )
            assert route_a == route_b


class TestComparisons:
    def test_underlying_function_of_identity(self):
        assert underlying_function(identity_smf(["a", "b"])) == \
            FinFunction.identity(["a", "b"])

    def test_companion_span_left_leg_identity(self):
        f = FinFunction(["a"], ["b"], {"a": "b"})
        span = companion_span(f)
        assert span.s == FinFunction.identity(["a"])
        assert span.t == f

    def test_cell_images_commute(self):
        for i in range(20):
            c = gen_cell(rng_for("ucell", i))
            assert validate_sq_cell(underlying_function_cell(c)).ok
            assert validate_span_cell(underlying_span_cell(c)).ok

    def test_splitting_cone_alpha_is_sigma(self):
        m = gen_smf(rng_for("cone", 3))
        cell = splitting_cone_component(m)
        assert cell.alpha == m.sigma
        assert validate_span_cell(cell).ok

    def test_splitting_cone_at_identity(self):
        m = identity_smf(["a", "b"])
        cell = splitting_cone_component(m)
        assert cell.alpha == FinFunction.identity(["a", "b"])

    def test_splitting_cone_naturality(self):
        # pasting with the underlying span cell equals pasting with the
        # companion of the underlying function cell
        for i in range(30):
            c = gen_cell(rng_for("nat", i))
            lhs = tight_compose_span_cells(
                splitting_cone_component(c.top), underlying_span_cell(c)
            )
            rhs = tight_compose_span_cells(
                companion_span_cell_of(c), splitting_cone_component(c.bottom)
            )
            assert lhs == rhs


def companion_span_cell_of(c):
    from deltalens.smult import companion_span_cell

    return companion_span_cell(underlying_function_cell(c))


class TestAdjunctions:
    def test_coreflection_counit_at_embedded_function_is_identity(self):
        f = FinFunction(["a1", "a2"], ["b"], {"a1": "b", "a2": "b"})
        cell = coreflection_counit(smf_of_function(f))
        assert cell == identity_cell_of_loose(smf_of_function(f))

    def test_counit_validates_with_identity_boundaries(self):
        for i in range(25):
            m = gen_smf(rng_for("counit", i))
            cell = coreflection_counit(m)
            assert validate_cell(cell).ok
            assert cell.left == FinFunction.identity(m.src)
            assert cell.right == FinFunction.identity(m.tgt)
            # whiskering down to functions gives the identity square
            sq = underlying_function_cell(cell)
            assert sq.top == sq.bottom

    def test_reflection_unit_at_embedded_function_is_invertible(self):
        f = FinFunction(["a1", "a2"], ["b1", "b2"], {"a1": "b2", "a2": "b1"})
        cell = reflection_unit(product_smf_of_function(f))
        assert cell.alpha.is_bijective()

    def test_reflection_unit_shape(self):
        for i in range(25):
            m = gen_smf(rng_for("unit", i))
            cell = reflection_unit(m)
            assert validate_cell(cell).ok
            assert len(cell.bottom.carrier) == len(m.src) * len(m.tgt)
            for x in m.carrier:
                assert cell.alpha(x) == f"({m.s(x)},{m.t(x)})"
            sq = underlying_function_cell(cell)
            assert sq.top == sq.bottom
