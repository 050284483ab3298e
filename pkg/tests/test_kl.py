import pytest
from hypothesis import given, strategies as st

from affine_cells.group import AffineWeylGroup
from affine_cells.kl import (
    HeckeAlgebra,
    TruncationError,
    c_bound,
    c_to_t,
    canonical_element_oracle,
    cell_preorder,
    check_recursions,
    check_structure_bounds,
    cs_times_cw,
    duality_check,
    kl_table,
    load_table,
    save_table,
    table_key,
    validate_table,
    verify_klasym,
)
from affine_cells.ordered import Laurent, WeightFunction, add, deg
from affine_cells.params import order_from_claim

from conftest import c2_weight

WEIGHTS = [(1, 1, 1), (2, 1, 1), (3, 1, 2), (2, 0, 1), (0, 1, 0), (1, 0, 0)]


def right_product(alg, x, y):
    """T_x T_y by right multiplication with the letters of y (the engine goes left)."""
    h = alg.T(x)
    for s in y.word:
        h = alg.times_gen(h, s)
    return h


@pytest.fixture(scope="module")
def tables(C2):
    return {vals: kl_table(c2_weight(C2, *vals), 7) for vals in WEIGHTS}


class TestHeckeArithmetic:
    @pytest.mark.parametrize("vals", WEIGHTS)
    def test_quadratic_relation(self, C2, vals):
        L = c2_weight(C2, *vals)
        alg = HeckeAlgebra(L)
        for s in C2.generators:
            Ts = alg.T(C2.gen(s))
            lhs = alg.t_multiply(Ts, Ts)
            rhs = alg.scalar(alg.one) + Ts.scale(alg.diff[s])
            assert lhs == rhs

    def test_length_additive_product(self, C2):
        alg = HeckeAlgebra(c2_weight(C2, 3, 1, 2))
        x, y = C2.parse("t.s"), C2.parse("t'.s")
        assert alg.t_multiply(alg.T(x), alg.T(y)) == alg.T(C2.multiply(x, y))

    @pytest.mark.parametrize("vals", [(3, 1, 2), (2, 0, 1)])
    def test_structure_constants_two_routes(self, C2, vals):
        alg = HeckeAlgebra(c2_weight(C2, *vals))
        ball = C2.ball(4)
        for x in ball:
            for y in ball:
                assert alg.t_multiply(alg.T(x), alg.T(y)) == right_product(alg, x, y)

    def test_bar_is_involution(self, C2):
        alg = HeckeAlgebra(c2_weight(C2, 3, 1, 2))
        for w in C2.ball(5):
            assert alg.bar(alg.bar_T(w)) == alg.T(w)

    @pytest.mark.parametrize("vals", WEIGHTS)
    def test_generator_canonical_element(self, C2, vals):
        alg = HeckeAlgebra(c2_weight(C2, *vals))
        for s in C2.generators:
            c = alg.C_gen(s)
            assert alg.bar(c) == c

    def test_p_e_s(self, C2, tables):
        tab = tables[(2, 0, 1)]
        e = C2.identity
        assert tab.p(e, C2.gen("s")) == Laurent()
        assert tab.p(e, C2.gen("t")) == Laurent.monomial((-2,))


class TestTables:
    @pytest.mark.parametrize("vals", WEIGHTS)
    def test_matches_bar_oracle(self, C2, tables, vals):
        tab = tables[vals]
        for w in C2.ball(6):
            assert tab.C(w) == canonical_element_oracle(tab.algebra, w), w

    @pytest.mark.parametrize("vals", WEIGHTS)
    def test_validation_and_recursions(self, tables, vals):
        tab = tables[vals]
        assert validate_table(tab, recheck=tab.elements[:40]) == []
        assert check_recursions(tab)["ok"]

    def test_equal_parameter_positivity(self, tables):
        tab = tables[(1, 1, 1)]
        for col in tab.P.values():
            for p in col.values():
                assert all(c > 0 for c in p.terms.values())

    def test_finite_dihedral(self, C2):
        tab = kl_table(WeightFunction.length(C2), 10, generators=("t", "s"))
        assert len(tab.elements) == 8
        for w in tab.elements:
            for y in tab.elements:
                if tab.bruhat_leq(y, w):
                    assert tab.p(y, w) == Laurent.monomial((y.length - w.length,))
        left = cell_preorder(tab, "left")
        assert sorted(len(c) for c in left.classes) == [1, 1, 3, 3]

    def test_generic_table(self, C2):
        spec = order_from_claim("t-pair-apart", {"t": 205, "s": 1, "t'": 101}, 10)
        tab = kl_table(WeightFunction.generic(C2, spec), 6)
        assert validate_table(tab, recheck=tab.elements) == []
        for w in C2.ball(5):
            assert tab.C(w) == canonical_element_oracle(tab.algebra, w)

    def test_cs_times_cw(self, C2, tables):
        tab = tables[(3, 1, 2)]
        alg = tab.algebra
        for w in C2.ball(6):
            for s in C2.generators:
                lhs = alg.t_multiply(alg.C_gen(s), tab.C(w))
                assert c_to_t(cs_times_cw(s, w, tab), tab) == lhs

    def test_truncation(self, C2, tables):
        tab = tables[(3, 1, 2)]
        w = next(u for u in tab.elements if u.length == 7 and C2.left_mul("t", u).length == 8)
        with pytest.raises(TruncationError):
            cs_times_cw("t", w, tab)

    def test_negative_weights_rejected(self, C2):
        with pytest.raises(ValueError):
            kl_table(c2_weight(C2, 1, -1, 1), 3)


class TestCache:
    def test_round_trip(self, C2, tables, tmp_path):
        tab = tables[(2, 0, 1)]
        path = tmp_path / "t.json"
        save_table(tab, path)
        back = load_table(path, tab.weight)
        assert back.P == tab.P and back.M == tab.M and back.below == tab.below

    def test_mismatch_is_rejected(self, C2, tables, tmp_path):
        tab = tables[(2, 0, 1)]
        save_table(tab, tmp_path / "t.json")
        with pytest.raises(ValueError):
            load_table(tmp_path / "t.json", c2_weight(C2, 2, 1, 1))

    def test_keys_distinguish(self, C2):
        a = table_key(c2_weight(C2, 2, 1, 1), 5, C2.generators)
        assert a != table_key(c2_weight(C2, 2, 1, 1), 6, C2.generators)
        assert a != table_key(c2_weight(C2, 2, 1, 0), 5, C2.generators)

    def test_cache_dir(self, C2, tmp_path):
        L = c2_weight(C2, 2, 1, 1)
        first = kl_table(L, 5, cache_dir=tmp_path)
        assert len(list(tmp_path.glob("*.json"))) == 1
        second = kl_table(L, 5, cache_dir=tmp_path)
        assert second.P == first.P

    def test_corrupted_cache_is_recomputed(self, C2, tmp_path):
        L = c2_weight(C2, 2, 1, 1)
        tab = kl_table(L, 4, cache_dir=tmp_path)
        path = next(tmp_path.glob("*.json"))
        w = tab.elements[-1]
        bad = dict(tab.P)
        bad[w] = {**tab.P[w], w: Laurent.monomial((1,))}
        tab.P = bad
        save_table(tab, path)
        again = kl_table(L, 4, cache_dir=tmp_path)
        assert again.P[w][w] == Laurent.one(1)


class TestCells:
    @pytest.mark.parametrize("vals", WEIGHTS)
    def test_duality(self, tables, vals):
        tab = tables[vals]
        assert duality_check(cell_preorder(tab, "left"), cell_preorder(tab, "right")) == []

    @pytest.mark.parametrize("vals", [(1, 1, 1), (3, 1, 2), (2, 1, 1)])
    def test_identity_is_a_cell(self, C2, tables, vals):
        part = cell_preorder(tables[vals], "two-sided")
        assert part.classes[part.class_of[C2.identity]] == [C2.identity]

    def test_zero_weight_generator_joins_cells(self, C2, tables):
        # with L(s) = 0, e and s are in the same left class
        part = cell_preorder(tables[(2, 0, 1)], "left")
        assert part.same_class(C2.identity, C2.gen("s"))

    def test_two_sided_refines_nothing(self, tables):
        tab = tables[(3, 1, 2)]
        left, two = cell_preorder(tab, "left"), cell_preorder(tab, "two-sided")
        for c in left.classes:
            assert len({two.class_of[w] for w in c}) == 1
        assert two.condensation().number_of_nodes() == len(two.classes)


class TestDegreeBounds:
    def test_c_bound_examples(self, C2):
        L = c2_weight(C2, 3, 1, 2)
        for s in C2.generators:
            g = C2.gen(s)
            assert c_bound(g, g, L) == L.gen(s)
            assert c_bound(C2.identity, g, L) == (0,)
        tt = C2.parse("t.t'")
        assert c_bound(tt, C2.inverse(tt), L) == add(L.gen("t"), L.gen("t'"))

    def test_ball_four(self, C2):
        assert check_structure_bounds(c2_weight(C2, 3, 1, 2), 4)["ok"]

    @given(st.integers(0, 4), st.integers(0, 4), st.integers(0, 4), st.data())
    def test_random_pairs(self, a, b, c, data):
        W = AffineWeylGroup("C", 2)
        if a < c:
            a, c = c, a
        L = c2_weight(W, a, b, c)
        ball = W.ball(4)
        x = data.draw(st.sampled_from(ball))
        y = data.draw(st.sampled_from(ball))
        alg = HeckeAlgebra(L)
        bound = c_bound(x, y, L)
        for f in alg.structure_constants(x, y).values():
            assert L.spec.compare(deg(f, L.spec), bound) <= 0

    @pytest.mark.parametrize("construction,vals", [
        ("t-pair-apart", {"t": 205, "s": 1, "t'": 101}),
        ("t-dominant", {"t": 21, "s": 1, "t'": 1}),
        ("t-pair-close", {"t": 101, "s": 1, "t'": 101}),
    ])
    def test_split_bounds(self, C2, construction, vals):
        tab = kl_table(WeightFunction.generic(C2, order_from_claim(construction, vals, 10)), 7)
        for I in ({"s", "t"}, {"s", "t'"}, {"t", "t'"}):
            rep = verify_klasym(tab, I)
            assert rep["ok"] and rep["eligible"] > 0, (I, rep["failures"][:3])

    def test_split_bounds_need_positive_forms(self, C2):
        # the tie-break form (1,0,-1) is negative on t'; the bound is not claimed there
        spec = order_from_claim("t-pair-close", {"t": 1102, "s": 11, "t'": 1101}, 10)
        assert spec.forms[-1] == (1, 0, -1)
        tab = kl_table(WeightFunction.generic(C2, spec), 6)
        assert not verify_klasym(tab, {"s", "t"})["ok"]
