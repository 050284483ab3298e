import pytest
from hypothesis import given, strategies as st

from affine_cells.group import AffineWeylGroup
from affine_cells.ordered import (
    Laurent,
    MinusInfinity,
    OrderedGroupSpec,
    WeightFunction,
    deg,
    is_strictly_negative,
    negative_by_bound,
    negative_by_first_form,
    specialize,
)

LEX2 = OrderedGroupSpec.lex(("s", "t"), plus={"s"})
C_ORDER = OrderedGroupSpec(3, ((1, 0, 0), (0, 1, 1), (0, -1, 1)), ("t", "s", "t'"), frozenset({"t"}))
QUOTIENT = OrderedGroupSpec(3, ((1, 0, 0), (0, 1, 1)), ("t", "s", "t'"), frozenset({"t"}))
SPECS = [LEX2, OrderedGroupSpec.integers(), C_ORDER, QUOTIENT,
         OrderedGroupSpec(3, ((1, 0, 1), (1, 0, 0), (0, 1, 0)), ("t", "s", "t'"), frozenset({"t", "t'"}))]


def gammas(rank, bound=6):
    return st.tuples(*[st.integers(-bound, bound)] * rank)


def laurents(rank, bound=4, size=4):
    return st.dictionaries(gammas(rank, bound), st.integers(-3, 3), max_size=size).map(Laurent)


spec_and_triples = st.sampled_from(SPECS).flatmap(
    lambda sp: st.tuples(st.just(sp), gammas(sp.rank), gammas(sp.rank), gammas(sp.rank)))


class TestCompare:
    def test_lex_first_coordinate_decides(self):
        assert LEX2.compare((1, -5), (0, 0)) == 1

    def test_reflexive(self):
        assert LEX2.compare((0, 0), (0, 0)) == 0

    def test_tie_on_second_form_broken_by_third(self):
        # (0,-1,1) vanishes on the first two forms
        assert C_ORDER.key((0, -1, 1))[:2] == (0, 0)
        assert C_ORDER.compare((0, -1, 1), (0, 0, 0)) == 1

    def test_quotient_identifies_kernel(self):
        assert QUOTIENT.kernel_basis == ((0, 1, -1),)
        assert QUOTIENT.compare((0, -1, 1), (0, 0, 0)) == 0
        assert QUOTIENT.canonical((3, 2, 5)) == QUOTIENT.canonical((3, 7, 0))

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            LEX2.compare((1, 2, 3), (0, 0))

    def test_degenerate_form_rejected(self):
        with pytest.raises(ValueError):
            OrderedGroupSpec(2, ((1, 0), (2, 0)))

    @given(spec_and_triples)
    def test_total_and_translation_invariant(self, data):
        sp, a, b, c = data
        ab = sp.compare(a, b)
        assert ab == -sp.compare(b, a)
        shift = lambda x: tuple(p + q for p, q in zip(x, c))
        assert sp.compare(shift(a), shift(b)) == ab

    @given(spec_and_triples)
    def test_transitive(self, data):
        sp, a, b, c = data
        if sp.compare(a, b) <= 0 and sp.compare(b, c) <= 0:
            assert sp.compare(a, c) <= 0

    def test_json_round_trip(self):
        for sp in SPECS:
            assert OrderedGroupSpec.from_json(sp.to_json()) == sp


class TestDegree:
    def test_monomial(self):
        assert deg(Laurent.monomial((2, -1)), LEX2) == (2, -1)

    def test_difference_of_inverse_monomials(self):
        a = Laurent.monomial((1, 0)) - Laurent.monomial((-1, 0))
        assert deg(a, LEX2) == (1, 0)

    def test_zero(self):
        assert deg(Laurent(), LEX2) is MinusInfinity

    @given(st.sampled_from(SPECS[:3] + SPECS[4:]).flatmap(lambda sp: st.tuples(st.just(sp), laurents(sp.rank), laurents(sp.rank))))
    def test_degree_of_product_is_sum(self, data):
        sp, a, b = data
        if not a or not b:
            return
        d = deg(a * b, sp)
        assert sp.compare(d, tuple(x + y for x, y in zip(deg(a, sp), deg(b, sp)))) == 0


class TestProjections:
    def test_plus(self):
        assert LEX2.project_plus((2, 3)) == (2, 0)
        assert LEX2.project_plus((0, 0)) == (0, 0)

    def test_type_c(self):
        sp = OrderedGroupSpec(3, ((1, 0, 1), (1, 0, 0), (0, 1, 0)), ("t", "s", "t'"), frozenset({"t", "t'"}))
        assert sp.project_plus((1, 4, -2)) == (1, 0, -2)
        assert sp.project_circ((1, 4, -2)) == (0, 4, 0)


class TestNegativity:
    def test_examples(self):
        sp = OrderedGroupSpec.integers()
        assert is_strictly_negative(Laurent.monomial((-3,)), sp)
        assert not is_strictly_negative(Laurent.monomial((0,)), sp)
        lex3 = OrderedGroupSpec.lex(("t", "s", "t'"), plus={"t"})
        assert is_strictly_negative(Laurent.monomial((-1, 7, 0)), lex3)

    def test_shortcuts_are_sufficient(self):
        sp = OrderedGroupSpec(3, ((1, 0, 1), (1, 0, 0), (0, 1, 0)), ("t", "s", "t'"), frozenset({"t", "t'"}))
        a = Laurent({(-1, 5, 0): 1, (0, -2, -1): 2})
        assert negative_by_first_form(a, sp) and is_strictly_negative(a, sp)
        b = Laurent({(-1, 3, 1): 1})
        assert negative_by_bound(b, sp, (-1, 0, 1)) and is_strictly_negative(b, sp)


class TestWeights:
    def test_weight_of_words(self):
        W = AffineWeylGroup("C", 2)
        L = WeightFunction.integer(W, {"t": 5, "s": 2, "t'": 3})
        assert L(W.identity) == (0,)
        assert L(W.parse("tsts")) == (14,)
        zero = WeightFunction.integer(W, {"t": 0, "s": 0, "t'": 0})
        assert all(zero(w) == (0,) for w in W.ball(5))

    def test_type_c_convention(self):
        W = AffineWeylGroup("C", 2)
        with pytest.raises(ValueError):
            WeightFunction.integer(W, {"t": 1, "s": 1, "t'": 2})

    def test_zero_weight_elements_are_transparent(self):
        W = AffineWeylGroup("C", 2)
        L = WeightFunction.integer(W, {"t": 2, "s": 0, "t'": 1})
        ball = W.ball(5)
        zeros = [x for x in ball if L(x) == (0,)]
        assert len(zeros) == 2
        for x in zeros:
            for y in ball:
                assert L(W.multiply(x, y)) == L(y) == L(W.multiply(y, x))


class TestSpecialize:
    def test_identity(self):
        a = Laurent({(1, -2): 3, (0, 1): -1})
        assert specialize(a, [(1, 0), (0, 1)]) == a

    def test_generic_to_integer(self):
        assert specialize(Laurent.monomial((1, 0)), [(3,), (1,)]) == Laurent.monomial((3,))

    def test_cancellation(self):
        a = Laurent.monomial((1, 0)) - Laurent.monomial((0, 1))
        assert not specialize(a, [(1,), (1,)])

    @given(laurents(2), laurents(2), st.tuples(st.integers(-3, 3), st.integers(-3, 3)))
    def test_ring_homomorphism(self, a, b, img):
        images = [(img[0],), (img[1],)]
        assert specialize(a * b, images) == specialize(a, images) * specialize(b, images)
        assert specialize(a + b, images) == specialize(a, images) + specialize(b, images)

    @given(laurents(2))
    def test_bar_is_involution(self, a):
        assert a.bar().bar() == a
        assert Laurent.from_json(a.to_json()) == a
